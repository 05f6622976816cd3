//! The module `H² = A[1/xy] / (A[1/x] + A[1/y])` for `A = L[x,y,z]/(g_α)`.
//!
//! Elements are kept in canonical form: finite sums of `c · z^k / (x^i y^j)`
//! with `i, j ≥ 1`, `0 ≤ k ≤ 3`. A fraction `w / (x^a y^b)` is canonicalized
//! by normal-forming `w` modulo `(x^a, y^b, g_α)`; everything divisible by
//! `x^a` or `y^b` lies in `A[1/y]` or `A[1/x]` and vanishes.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::check::Check;
use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::field::{alpha_of_lambda, encode_vector, Field, Gf2m};
use crate::poly::{parse_poly, Monomial, Poly};
use crate::rings::{CurveReducer, GradedVector, QuotientRing};

/// `(i, j, k)` for `z^k / (x^i y^j)`.
pub type FractionKey = (u32, u32, u32);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H2Element<E> {
    terms: BTreeMap<FractionKey, E>,
}

impl<E> H2Element<E> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FractionKey, &E)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `k − i − j` when every term agrees; `None` for zero or mixed degrees.
    pub fn degree(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(|&(i, j, k)| k as i64 - i as i64 - j as i64);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// Smallest `(a, b)` with `self = w / (x^a y^b)` for a polynomial `w`.
    fn denominators(&self) -> (u32, u32) {
        self.terms.keys().fold((1, 1), |(a, b), &(i, j, _)| (a.max(i), b.max(j)))
    }
}

/// Arithmetic context: the field and the curve parameter `α`.
#[derive(Debug, Clone)]
pub struct H2<F: Field> {
    field: F,
    alpha: F::Elem,
}

impl<F: Field> H2<F> {
    pub fn new(field: &F, alpha: &F::Elem) -> Self {
        Self { field: field.clone(), alpha: alpha.clone() }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn alpha(&self) -> &F::Elem {
        &self.alpha
    }

    /// `c · z^k / (x^i y^j)`; `i, j ≥ 1`, `k ≤ 3`.
    pub fn basis_term(&self, i: u32, j: u32, k: u32, c: F::Elem) -> Result<H2Element<F::Elem>> {
        if i == 0 || j == 0 || k > 3 {
            return Err(Error::InvalidParameter(format!("z^{k}/(x^{i} y^{j}) is not a canonical basis fraction")));
        }
        let mut e = H2Element::zero();
        if !self.field.is_zero(&c) {
            e.terms.insert((i, j, k), c);
        }
        Ok(e)
    }

    /// Canonical form of `w / (x^a y^b)`.
    pub fn reduce_fraction(&self, w: &Poly<F>, a: u32, b: u32) -> H2Element<F::Elem> {
        let f = &self.field;
        let red = CurveReducer::new(f, &self.alpha, a, b);
        let mut terms: BTreeMap<FractionKey, F::Elem> = BTreeMap::new();
        for (m, c) in w.terms() {
            red.reduce_term(m, c, &mut |t: Monomial, v| {
                let key = (a - t.x, b - t.y, t.z);
                let slot = terms.entry(key).or_insert_with(|| f.zero());
                f.add_assign(slot, &v);
            });
        }
        terms.retain(|_, c| !f.is_zero(c));
        H2Element { terms }
    }

    /// A polynomial `w` and `(a, b)` with `u = w / (x^a y^b)`.
    pub fn numerator(&self, u: &H2Element<F::Elem>) -> (Poly<F>, u32, u32) {
        let (a, b) = u.denominators();
        let w = Poly::from_terms(
            &self.field,
            u.terms.iter().map(|(&(i, j, k), c)| (Monomial::new(a - i, b - j, k), c.clone())),
        );
        (w, a, b)
    }

    pub fn add(&self, u: &H2Element<F::Elem>, v: &H2Element<F::Elem>) -> H2Element<F::Elem> {
        let f = &self.field;
        let mut terms = u.terms.clone();
        for (k, c) in &v.terms {
            let slot = terms.entry(*k).or_insert_with(|| f.zero());
            f.add_assign(slot, c);
        }
        terms.retain(|_, c| !f.is_zero(c));
        H2Element { terms }
    }

    pub fn scale(&self, u: &H2Element<F::Elem>, a: &F::Elem) -> H2Element<F::Elem> {
        let f = &self.field;
        let mut terms: BTreeMap<_, _> = u.terms.iter().map(|(k, c)| (*k, f.mul(c, a))).collect();
        terms.retain(|_, c| !f.is_zero(c));
        H2Element { terms }
    }

    /// `Φⁿ(u) = u^{[2ⁿ]}`: square numerator and denominator, then re-reduce.
    pub fn frobenius(&self, u: &H2Element<F::Elem>, n: u32) -> H2Element<F::Elem> {
        let mut cur = u.clone();
        for _ in 0..n {
            if cur.is_zero() {
                break;
            }
            let (w, a, b) = self.numerator(&cur);
            cur = self.reduce_fraction(&w.square(), 2 * a, 2 * b);
        }
        cur
    }

    pub fn module_action(&self, g: &Poly<F>, u: &H2Element<F::Elem>) -> H2Element<F::Elem> {
        if u.is_zero() {
            return H2Element::zero();
        }
        let (w, a, b) = self.numerator(u);
        self.reduce_fraction(&g.mul(&w), a, b)
    }

    /// Canonical basis of the degree-`d` piece, `d ≤ 1`, ordered by key.
    pub fn graded_basis(&self, d: i64) -> Vec<FractionKey> {
        let mut out = Vec::new();
        for k in 0..4u32 {
            let s = k as i64 - d;
            for i in 1..s {
                out.push((i as u32, (s - i) as u32, k));
            }
        }
        out.sort_unstable();
        out
    }

    /// The six basis elements of `H²_{−1}`; the count is asserted.
    pub fn basis_minus_one(&self) -> Result<Vec<H2Element<F::Elem>>> {
        let keys = self.graded_basis(-1);
        if keys.len() != 6 {
            return Err(Error::violation("H²_{−1} has dimension 6", format!("found {}", keys.len())));
        }
        keys.iter().map(|&(i, j, k)| self.basis_term(i, j, k, self.field.one())).collect()
    }

    pub fn coords(&self, u: &H2Element<F::Elem>, keys: &[FractionKey]) -> Vec<F::Elem> {
        keys.iter().map(|k| u.terms.get(k).cloned().unwrap_or_else(|| self.field.zero())).collect()
    }

    pub fn display(&self, u: &H2Element<F::Elem>) -> String {
        if u.is_zero() {
            return "0".into();
        }
        u.terms
            .iter()
            .map(|(&(i, j, k), c)| {
                let num = match k {
                    0 => "1".to_string(),
                    1 => "z".to_string(),
                    _ => format!("z^{k}"),
                };
                let den = Monomial::new(i, j, 0);
                if self.field.is_one(c) {
                    format!("{num}/({den})")
                } else {
                    format!("({})*{num}/({den})", self.field.fmt_elem(c))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Images `(x³+y³) · b^{[2ⁿ]}` of the `H²_{−1}` basis and their rank.
    pub fn semilinear_nonvanishing(&self, n: u32) -> Result<SemilinearReport> {
        if self.field.is_zero(&self.alpha) {
            return Err(Error::InvalidParameter("α must be nonzero".into()));
        }
        let f = &self.field;
        let cubic = Poly::from_terms(f, [(Monomial::new(3, 0, 0), f.one()), (Monomial::new(0, 3, 0), f.one())]);
        let basis = self.basis_minus_one()?;
        let images: Vec<_> = basis.iter().map(|b| self.module_action(&cubic, &self.frobenius(b, n))).collect();
        let keys = self.graded_basis(3 - (1i64 << n));
        let m = Matrix::from_rows(f, keys.len(), images.iter().map(|v| self.coords(v, &keys)).collect())?;
        Ok(SemilinearReport {
            field: f.spec().to_string(),
            alpha: f.encode_hex(&self.alpha),
            n,
            rank: m.rank(),
            images: basis.iter().zip(&images).map(|(b, v)| (self.display(b), self.display(v))).collect(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemilinearReport {
    pub field: String,
    pub alpha: String,
    pub n: u32,
    /// Rank of the six images; 6 means `(x³+y³) U^{[2ⁿ]} ≠ 0` for every `U ≠ 0` in `H²_{−1}`.
    pub rank: usize,
    /// `(basis element, image)` in display form.
    pub images: Vec<(String, String)>,
}

impl SemilinearReport {
    pub fn injective(&self) -> bool {
        self.rank == 6
    }
}

impl<E: fmt::Debug> fmt::Display for H2Element<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.terms)
    }
}

/// Result of the witness search in `T_{2Q−1}`.
#[derive(Debug, Clone)]
pub struct Witness<F: Field> {
    pub w: GradedVector<F::Elem>,
    pub poly: Poly<F>,
    /// Position of `w` among the kernel vectors of `z^{4Q}`.
    pub kernel_index: usize,
    pub kernel_dim: usize,
    /// Pairing of `w` against `c · f^Q`.
    pub pairing: F::Elem,
}

/// `w ∈ T_{2Q−1}` with `z^{4Q} w = 0` in `T` and `c f^Q w ≠ 0`, when
/// `c f^Q ∉ (x^{4Q}, y^{4Q}, z^{4Q}, g_α)`.
pub fn witness_w<F: Field>(field: &F, alpha: &F::Elem, q: u64, c: &Poly<F>, f6: &Poly<F>) -> Result<Witness<F>> {
    let t = QuotientRing::curve_t(field, alpha, q)?;
    let d = 2 * q as u32 - 1;
    let zq = Poly::mono(field, 0, 0, 4 * q as u32);
    let cf = t.reduce(&c.mul(&f6.frobenius(q.trailing_zeros())));
    let cf_deg = 6 * q as u32 + 2;
    let cf_vec = t.vector(&cf, cf_deg)?;
    if t.mult_matrix(&zq, cf_deg - 4 * q as u32)?.in_image(&cf_vec.coords)?.is_some() {
        return Err(Error::NoWitness(format!("c·f^Q lies in the Frobenius power ideal at Q = {q}")));
    }
    let kernel = t.mult_matrix(&zq, d)?.kernel_basis();
    let kernel_dim = kernel.len();
    for (idx, coords) in kernel.into_iter().enumerate() {
        let w = GradedVector { degree: d, coords };
        let poly = t.to_poly(&w);
        let pairing = t.pairing(&poly, &cf);
        if !field.is_zero(&pairing) {
            return Ok(Witness { w, poly, kernel_index: idx, kernel_dim, pairing });
        }
    }
    Err(Error::violation(
        "the pairing on T is perfect, so some w ∈ ann(z^{4Q}) pairs nonzero with c·f^Q",
        format!("{kernel_dim} kernel vectors all pair to zero"),
    ))
}

/// `U = f^Q · w / (x^{4Q} y^{4Q})`, with its defining properties asserted.
pub fn build_u<F: Field>(h: &H2<F>, q: u64, f6: &Poly<F>, w: &Poly<F>) -> Result<H2Element<F::Elem>> {
    let n = 4 * q as u32;
    let u = h.reduce_fraction(&f6.frobenius(q.trailing_zeros()).mul(w), n, n);
    if u.is_zero() {
        return Err(Error::violation("U = f^Q W is nonzero", "U reduced to 0"));
    }
    if u.degree() != Some(-1) {
        return Err(Error::violation("U has degree −1", format!("degree {:?}", u.degree())));
    }
    for (name, mon) in [("x", Monomial::new(n, 0, 0)), ("y", Monomial::new(0, n, 0)), ("z", Monomial::new(0, 0, n))] {
        if !h.reduce_fraction(&w.mul_monomial(&mon), n, n).is_zero() {
            return Err(Error::violation("the Frobenius power ideal kills W", format!("{name}^{{4Q}} W ≠ 0")));
        }
    }
    Ok(u)
}

/// Witness, `U` and the Frobenius nonvanishing for `α = λ² + λ`, `λ` generating `gf`.
/// Uses `(x³+y³) U^{[16]}` when `α = 1` and `(x³+y³) U^{[8]}` otherwise.
pub fn contradiction_replay(gf: &Gf2m, f: Option<&str>) -> Result<Vec<Check>> {
    let (alpha, q) = alpha_of_lambda(gf);
    let f6 = parse_poly(gf, &alpha, f.unwrap_or("y^3*z^3"))?;
    let c = Poly::mono(gf, 1, 1, 0);
    let m = gf.degree();
    let mut checks = Vec::new();
    let t = QuotientRing::curve_t(gf, &alpha, q)?;
    checks.push(t.pairing_check(2 * q as u32 - 1, None)?.to_check("T"));
    let wit = witness_w(gf, &alpha, q, &c, &f6)?;
    checks.push(
        Check::new(
            format!("h2-witness/m={m}"),
            "some w ∈ T_{2Q−1} has z^{4Q} w ∈ (x^{4Q}, y^{4Q}) and c·f^Q·w ∉ (x^{4Q}, y^{4Q})",
            true,
            format!("kernel vector {} of {}, pairing {}", wit.kernel_index, wit.kernel_dim, gf.encode_hex(&wit.pairing)),
        )
        .with_witness(encode_vector(gf, &wit.w.coords)),
    );
    let h = H2::new(gf, &alpha);
    let u = build_u(&h, q, &f6, &wit.poly)?;
    let keys = h.graded_basis(-1);
    checks.push(
        Check::new(
            format!("h2-U/m={m}"),
            "U = f^Q W is a nonzero degree −1 element killed by the Frobenius power ideal",
            true,
            h.display(&u),
        )
        .with_witness(encode_vector(gf, &h.coords(&u, &keys))),
    );
    let n = if gf.is_one(&alpha) { 4 } else { 3 };
    let cubic = parse_poly(gf, &alpha, "x^3 + y^3")?;
    let image = h.module_action(&cubic, &h.frobenius(&u, n));
    checks.push(Check::new(
        format!("h2-nonvanishing/m={m}"),
        format!("(x³+y³) U^{{[{}]}} ≠ 0", 1u32 << n),
        !image.is_zero(),
        h.display(&image),
    ));
    Ok(checks)
}
