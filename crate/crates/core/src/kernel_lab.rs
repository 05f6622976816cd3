//! The spaces `X ⊂ O_{6Q−5}` and `(Y, Δ) ⊂ O_{6Q−1}`, the induced `Q × Q`
//! matrix with its extra row `b`, and the kernel `N_{6Q−5}` of `g_α`.
//!
//! `X` is spanned by the `[i,j]P^k` with `i + j + 4k = 6Q − 5`, `k < Q`, `i` odd;
//! `Y` likewise in degree `6Q − 1`. Mapping `X` onto `D^sym_{2Q−1}` (keep the
//! `k = Q − 1` part) and `(Y, Δ)` onto `D^sym_{6Q−1} ⊕ L` (send `[i,j]P^k` to
//! `α^k [i+2k, j+2k]` and `Δ` to `(0, 1)`) turns `g_α: X → (Y, Δ)` into the
//! matrix `(M over b)`.

use rand::SeedableRng;
use serde::Serialize;

use crate::check::Check;
use crate::error::{Error, Result};
use crate::exactla::{poly_det, Matrix};
use crate::field::{random_irreducible, F2Poly, Field, Gf2m, Gf2mElem, RatFunc};
use crate::is_power_of_two;
use crate::poly::{bracket, delta, g_alpha, p_poly, Monomial, Poly};
use crate::rings::{GradedVector, QuotientRing};

/// `b_i = 0` iff `2i − 1 ≡ 2Q − 2i (mod 3)`.
pub fn b_bit(q: u64, i: u64) -> bool {
    (2 * i as i64 - 1 - (2 * q as i64 - 2 * i as i64)).rem_euclid(3) != 0
}

/// Exponents of `E_i = [2i − 1, 2Q − 2i]`, `1 ≤ i ≤ Q`.
pub fn e_label(q: u64, i: u64) -> (u32, u32) {
    (2 * i as u32 - 1, 2 * q as u32 - 2 * i as u32)
}

/// The monomial `x^{2Q+2i−1} y^{4Q−2i}`, which occurs in `F_i` and in no other `F_j`.
fn f_marker(q: u64, i: u64) -> Monomial {
    Monomial::new(2 * (q + i) as u32 - 1, 4 * q as u32 - 2 * i as u32, 0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Space {
    X,
    Y,
    YDelta,
    X0,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Label {
    /// `[i, j] P^k`.
    Bracket { i: u32, j: u32, k: u32 },
    Delta,
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Label::Bracket { i, j, k } => write!(f, "[{i},{j}]P^{k}"),
            Label::Delta => write!(f, "Δ"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BasisElement<F: Field> {
    pub label: Label,
    pub poly: Poly<F>,
    pub vector: GradedVector<F::Elem>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Route {
    Formula,
    Composite,
}

/// `(M over b)`: `M` maps `E_j` (column `j`) to `Σ m_{i,j} F_i`, `b_j` is the `Δ` coordinate.
#[derive(Debug, Clone)]
pub struct InducedMatrix<F: Field> {
    pub m: Matrix<F>,
    pub b: Vec<F::Elem>,
    pub route: Route,
}

impl<F: Field> InducedMatrix<F> {
    pub fn stacked(&self) -> Matrix<F> {
        let mut s = self.m.clone();
        s.push_row(self.b.clone()).expect("b has Q entries");
        s
    }

    pub fn same_as(&self, other: &Self) -> bool {
        self.m == other.m && self.b == other.b
    }
}

/// `N_{6Q−5} ∩ X` through the induced matrix, with explicit lifts to `O`.
#[derive(Debug, Clone)]
pub struct CapX<F: Field> {
    /// Kernel of `(M over b)` in `E`-coordinates.
    pub kernel: Vec<Vec<F::Elem>>,
    /// One lift per kernel vector, in `O_{6Q−5}`, each with `g_α · u = 0`.
    pub lifts: Vec<GradedVector<F::Elem>>,
    /// `dim ker(g_α|_X)` computed directly on the basis of `X`.
    pub direct_dim: usize,
}

#[derive(Debug, Clone)]
pub struct ColonResult<F: Field> {
    /// `xy f^Q ∈ g_α · O_{6Q−2}`.
    pub member: bool,
    pub witness: Option<Vec<F::Elem>>,
    pub rank_onto_side: usize,
    pub dim_target: usize,
    pub rank_injective_side: usize,
    pub dim_source: usize,
}

impl<F: Field> ColonResult<F> {
    /// Onto in degree `6Q−2` exactly when injective in degree `6Q−5`.
    pub fn duality_consistent(&self) -> bool {
        (self.rank_onto_side == self.dim_target) == (self.rank_injective_side == self.dim_source)
            && self.rank_onto_side == self.rank_injective_side
    }
}

/// Everything attached to one `(L, Q, α)`.
#[derive(Debug)]
pub struct Lab<F: Field> {
    field: F,
    q: u64,
    alpha: F::Elem,
    o: QuotientRing<F>,
    g: Poly<F>,
    /// `P^k` truncated at `4Q`, `k = 0..Q`.
    p_pows: Vec<Poly<F>>,
}

impl<F: Field> Lab<F> {
    pub fn new(field: &F, q: u64, alpha: &F::Elem) -> Result<Self> {
        if q < 2 || !is_power_of_two(q) {
            return Err(Error::InvalidParameter(format!("Q = {q} must be a power of 2, at least 2")));
        }
        if field.is_zero(alpha) {
            return Err(Error::InvalidParameter("α must be nonzero".into()));
        }
        let o = QuotientRing::trunc_o(field, q)?;
        let bound = o.bound();
        let p = p_poly(field);
        let mut p_pows = vec![Poly::one(field)];
        for k in 1..q as usize {
            let next = p_pows[k - 1].mul_filtered(&p, |m| m.x < bound && m.y < bound && m.z < bound);
            p_pows.push(next);
        }
        Ok(Self { field: field.clone(), q, alpha: alpha.clone(), o, g: g_alpha(field, alpha), p_pows })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn alpha(&self) -> &F::Elem {
        &self.alpha
    }

    pub fn ring(&self) -> &QuotientRing<F> {
        &self.o
    }

    pub fn g(&self) -> &Poly<F> {
        &self.g
    }

    pub fn source_degree(&self) -> u32 {
        6 * self.q as u32 - 5
    }

    pub fn target_degree(&self) -> u32 {
        6 * self.q as u32 - 1
    }

    pub fn p_power(&self, k: usize) -> &Poly<F> {
        &self.p_pows[k]
    }

    fn truncated_mul(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        let n = self.o.bound();
        a.mul_filtered(b, |m| m.x < n && m.y < n && m.z < n)
    }

    pub fn e_element(&self, i: u64) -> Poly<F> {
        let (a, b) = e_label(self.q, i);
        bracket(&self.field, a, b)
    }

    /// The basis described in the module docs, ordered by `k`, then by decreasing `i`.
    /// Linear independence is asserted by a rank computation.
    pub fn basis_of(&self, space: Space) -> Result<Vec<BasisElement<F>>> {
        let (deg, kmax) = match space {
            Space::X => (self.source_degree(), self.q - 1),
            Space::X0 => (self.source_degree(), self.q - 2),
            Space::Y | Space::YDelta => (self.target_degree(), self.q - 1),
        };
        let n = self.o.bound();
        let mut out = Vec::new();
        for k in 0..=kmax as u32 {
            let rest = deg - 4 * k;
            let mut i = rest.min(n - 1);
            if i % 2 == 0 {
                i -= 1;
            }
            loop {
                let j = rest - i;
                if j >= n {
                    break;
                }
                let poly = self.truncated_mul(&bracket(&self.field, i, j), &self.p_pows[k as usize]);
                let vector = self.o.vector(&poly, deg)?;
                out.push(BasisElement { label: Label::Bracket { i, j, k }, poly, vector });
                if i < 2 {
                    break;
                }
                i -= 2;
            }
        }
        if space == Space::YDelta {
            let poly = delta(&self.field, self.q)?;
            let vector = self.o.vector(&poly, deg)?;
            out.push(BasisElement { label: Label::Delta, poly, vector });
        }
        let cols: Vec<Vec<F::Elem>> = out.iter().map(|e| e.vector.coords.clone()).collect();
        let rank = Matrix::from_columns(&self.field, self.o.dim(deg), &cols)?.rank();
        if rank != out.len() {
            return Err(Error::violation(
                "the listed spanning set is a basis",
                format!("{space:?}: rank {rank} of {} elements", out.len()),
            ));
        }
        Ok(out)
    }

    /// `Σ v_j E_j P^{Q−1}` in `O_{6Q−5}`: the canonical pull-back of `v ∈ D^sym_{2Q−1}` to `X`.
    pub fn pullback(&self, v: &[F::Elem]) -> Result<Poly<F>> {
        if v.len() != self.q as usize {
            return Err(Error::DimensionMismatch { expected: self.q as usize, got: v.len() });
        }
        let mut e = Poly::zero(&self.field);
        for (j, c) in v.iter().enumerate() {
            e.add_assign(&self.e_element(j as u64 + 1).scale(c));
        }
        Ok(self.truncated_mul(&e, &self.p_pows[self.q as usize - 1]))
    }

    pub fn induced_matrix(&self, route: Route) -> Result<InducedMatrix<F>> {
        match route {
            Route::Formula => Ok(self.induced_formula()),
            Route::Composite => self.induced_composite(),
        }
    }

    /// `m_{i,j} = Σ α^s` over the powers of two `s | Q` with `i ≡ j (mod 3s)`.
    fn induced_formula(&self) -> InducedMatrix<F> {
        let f = &self.field;
        let q = self.q;
        let m = Matrix::from_fn(f, q as usize, q as usize, |r, c| {
            let (i, j) = (r as i64 + 1, c as i64 + 1);
            let mut acc = f.zero();
            let mut s = 1u64;
            while s <= q {
                if (i - j).rem_euclid(3 * s as i64) == 0 {
                    f.add_assign(&mut acc, &f.pow(&self.alpha, s));
                }
                s *= 2;
            }
            acc
        });
        let b = (1..=q).map(|i| f.from_bit(b_bit(q, i))).collect();
        InducedMatrix { m, b, route: Route::Formula }
    }

    /// Pull `E_j` back to `X`, multiply by `g_α`, solve in the `(Y, Δ)` basis and project.
    fn induced_composite(&self) -> Result<InducedMatrix<F>> {
        let f = &self.field;
        let q = self.q;
        let deg = self.target_degree();
        let yd = self.basis_of(Space::YDelta)?;
        let cols: Vec<Vec<F::Elem>> = yd.iter().map(|e| e.vector.coords.clone()).collect();
        let basis = Matrix::from_columns(f, self.o.dim(deg), &cols)?;
        let mut rhs = Vec::with_capacity(q as usize);
        for j in 1..=q {
            let mut unit = vec![f.zero(); q as usize];
            unit[j as usize - 1] = f.one();
            let lifted = self.pullback(&unit)?;
            rhs.push(self.o.vector(&self.g.mul(&lifted), deg)?.coords);
        }
        let sols = basis.solve_many(&rhs)?;
        let n = self.o.bound();
        let mut m = Matrix::zeros(f, q as usize, q as usize);
        let mut b = Vec::with_capacity(q as usize);
        for (j, sol) in sols.into_iter().enumerate() {
            let sol = sol.ok_or_else(|| {
                Error::violation("g_α · X lies in the span of Y and Δ", format!("image of E_{} escapes", j + 1))
            })?;
            let mut image = Poly::zero(f);
            let mut b_j = f.zero();
            for (c, el) in sol.iter().zip(&yd) {
                if f.is_zero(c) {
                    continue;
                }
                match el.label {
                    Label::Delta => f.add_assign(&mut b_j, c),
                    Label::Bracket { i, j, k } => {
                        let coeff = f.mul(c, &f.pow(&self.alpha, k as u64));
                        let br = bracket(f, i + 2 * k, j + 2 * k).filter(|m| m.x < n && m.y < n);
                        image.add_assign(&br.scale(&coeff));
                    }
                }
            }
            let mut rebuilt = Poly::zero(f);
            for i in 1..=q {
                let c = image.coeff(&f_marker(q, i));
                m.set(i as usize - 1, j, c.clone());
                let (a, bb) = e_label(q, i);
                rebuilt.add_assign(&bracket(f, a + 2 * q as u32, bb + 2 * q as u32).scale(&c));
            }
            if rebuilt != image {
                return Err(Error::violation(
                    "the projection of g_α · X lands in D^sym_{6Q−1}",
                    format!("column {} is not a combination of the F_i", j + 1),
                ));
            }
            b.push(b_j);
        }
        Ok(InducedMatrix { m, b, route: Route::Composite })
    }

    /// Kernel of `g_α: O_{6Q−5} → O_{6Q−1}`; each vector is re-multiplied inside `kernel_basis`.
    pub fn kernel_n(&self) -> Result<Vec<GradedVector<F::Elem>>> {
        let mm = self.o.mult_matrix(&self.g, self.source_degree())?;
        let d = self.source_degree();
        Ok(mm.kernel_basis().into_iter().map(|coords| GradedVector { degree: d, coords }).collect())
    }

    /// `g_α` applied to `u ∈ O_{6Q−5}`, as a vector of `O_{6Q−1}`.
    pub fn apply_g(&self, u: &Poly<F>) -> Result<GradedVector<F::Elem>> {
        self.o.vector(&self.truncated_mul(&self.g, u), self.target_degree())
    }

    pub fn kernel_n_cap_x(&self) -> Result<CapX<F>> {
        let f = &self.field;
        let induced = self.induced_formula();
        let kernel = induced.stacked().kernel_basis();
        let src = self.source_degree();
        let tgt = self.target_degree();

        let x0 = self.basis_of(Space::X0)?;
        let x0_images: Vec<Vec<F::Elem>> =
            x0.iter().map(|e| self.apply_g(&e.poly).map(|v| v.coords)).collect::<Result<_>>()?;
        let g0 = Matrix::from_columns(f, self.o.dim(tgt), &x0_images)?;

        let mut rhs = Vec::with_capacity(kernel.len());
        let mut tops = Vec::with_capacity(kernel.len());
        for v in &kernel {
            let top = self.pullback(v)?;
            rhs.push(self.apply_g(&top)?.coords);
            tops.push(top);
        }
        let sols = g0.solve_many(&rhs)?;
        let mut lifts = Vec::with_capacity(kernel.len());
        for (top, sol) in tops.into_iter().zip(sols) {
            let sol = sol.ok_or_else(|| {
                Error::violation("g_α maps X₀ onto Y₀", "g_α · (pull-back) has no preimage in X₀")
            })?;
            let mut u = top;
            for (c, e) in sol.iter().zip(&x0) {
                if !f.is_zero(c) {
                    u.add_assign(&e.poly.scale(c));
                }
            }
            if !self.apply_g(&u)?.coords.iter().all(|c| f.is_zero(c)) {
                return Err(Error::violation("the lifted element is killed by g_α", "g_α · u ≠ 0"));
            }
            lifts.push(self.o.vector(&u, src)?);
        }

        let xb = self.basis_of(Space::X)?;
        let x_images: Vec<Vec<F::Elem>> =
            xb.iter().map(|e| self.apply_g(&e.poly).map(|v| v.coords)).collect::<Result<_>>()?;
        let gx = Matrix::from_columns(f, self.o.dim(tgt), &x_images)?;
        let direct_dim = xb.len() - gx.rank();
        if direct_dim != kernel.len() {
            return Err(Error::violation(
                "N_{6Q−5} ∩ X identifies with the kernel of (M over b)",
                format!("direct dimension {direct_dim}, induced {}", kernel.len()),
            ));
        }
        Ok(CapX { kernel, lifts, direct_dim })
    }

    /// Whether `xy f^Q ∈ (x^{4Q}, y^{4Q}, z^{4Q}, g_α)`, for `f` homogeneous of degree 6.
    pub fn colon_membership(&self, f6: &Poly<F>) -> Result<ColonResult<F>> {
        match f6.homogeneous_degree()? {
            Some(6) => {}
            other => {
                return Err(Error::InvalidParameter(format!("f must have degree 6, got {other:?}")));
            }
        }
        let q = self.q;
        let lo = 6 * q as u32 - 2;
        let target = Poly::mono(&self.field, 1, 1, 0).mul(&self.truncated_power(f6, q));
        let v = self.o.vector(&target, lo + 4)?;
        let onto = self.o.mult_matrix(&self.g, lo)?;
        let inj = self.o.mult_matrix(&self.g, self.source_degree())?;
        let witness = onto.in_image(&v.coords)?;
        Ok(ColonResult {
            member: witness.is_some(),
            witness,
            rank_onto_side: onto.rank(),
            dim_target: onto.nrows(),
            rank_injective_side: inj.rank(),
            dim_source: inj.ncols(),
        })
    }

    /// `f^Q` truncated at `4Q`; `Q` is a power of two so this is repeated squaring.
    pub fn truncated_power(&self, f: &Poly<F>, q: u64) -> Poly<F> {
        f.frobenius(q.trailing_zeros()).truncate(self.o.bound())
    }

    /// `g_α` restricted to `X₀` is injective, with image inside `Y₀`.
    pub fn x0_bijectivity(&self) -> Result<Check> {
        let f = &self.field;
        let tgt = self.target_degree();
        let x0 = self.basis_of(Space::X0)?;
        let images: Vec<Vec<F::Elem>> =
            x0.iter().map(|e| self.apply_g(&e.poly).map(|v| v.coords)).collect::<Result<_>>()?;
        let rank = Matrix::from_columns(f, self.o.dim(tgt), &images)?.rank();
        let yd = self.basis_of(Space::YDelta)?;
        let cols: Vec<Vec<F::Elem>> = yd.iter().map(|e| e.vector.coords.clone()).collect();
        let basis = Matrix::from_columns(f, self.o.dim(tgt), &cols)?;
        let mut in_y0 = true;
        for sol in basis.solve_many(&images)? {
            let Some(sol) = sol else {
                in_y0 = false;
                continue;
            };
            // Y₀ is the kernel of the projection onto D^sym_{6Q−1} ⊕ L.
            let mut proj = Poly::zero(f);
            let mut delta_c = f.zero();
            let n = self.o.bound();
            for (c, el) in sol.iter().zip(&yd) {
                match el.label {
                    Label::Delta => f.add_assign(&mut delta_c, c),
                    Label::Bracket { i, j, k } => {
                        let coeff = f.mul(c, &f.pow(&self.alpha, k as u64));
                        proj.add_assign(&bracket(f, i + 2 * k, j + 2 * k).filter(|m| m.x < n && m.y < n).scale(&coeff));
                    }
                }
            }
            in_y0 &= proj.is_zero() && f.is_zero(&delta_c);
        }
        let want = x0.len();
        Ok(Check::new(
            format!("x0-bijective/Q={}", self.q),
            "g_α maps X₀ injectively into Y₀ (dim X₀ = 3Q²/2 − Q)",
            rank == want && in_y0 && want as u64 == 3 * self.q * self.q / 2 - self.q,
            format!("rank {rank} of {want}, image in Y₀: {in_y0}"),
        ))
    }

    /// No monomial of an `X₀` basis element has `z`-exponent `Q − 1`.
    pub fn z_support_check(&self) -> Result<Check> {
        let zq = self.q as u32 - 1;
        let mut bad = Vec::new();
        for e in self.basis_of(Space::X0)? {
            if e.poly.terms().any(|(m, _)| m.z == zq) {
                bad.push(e.label.to_string());
            }
        }
        Ok(Check::new(
            format!("x0-z-support/Q={}", self.q),
            "no monomial of an element of X₀ has z-exponent Q − 1",
            bad.is_empty(),
            bad.join(", "),
        ))
    }
}

/// `det M` over `F2[α]` for transcendental `α`, with the degree pattern of its entries.
#[derive(Debug, Clone, Serialize)]
pub struct DetReport {
    pub q: u64,
    /// Hex of the determinant polynomial.
    pub det_hex: String,
    pub det_degree: Option<usize>,
    pub diagonal_degrees: Vec<Option<usize>>,
    pub max_off_diagonal_degree: Option<usize>,
}

impl DetReport {
    pub fn passed(&self) -> bool {
        let q = self.q as usize;
        self.det_degree == Some(q * q)
            && self.diagonal_degrees.iter().all(|d| *d == Some(q))
            && self.max_off_diagonal_degree.is_none_or(|d| d < q)
    }
}

pub fn det_induced(q: u64) -> Result<DetReport> {
    let f = RatFunc::new("α");
    let lab = Lab::new(&f, q, &f.indeterminate())?;
    let m = lab.induced_matrix(Route::Formula)?.m;
    let n = q as usize;
    let rows: Vec<Vec<F2Poly>> = (0..n)
        .map(|r| {
            m.row(r)
                .iter()
                .map(|e| {
                    debug_assert!(e.is_polynomial());
                    e.num().clone()
                })
                .collect()
        })
        .collect();
    let det = poly_det(&rows)?;
    let diagonal_degrees = (0..n).map(|i| rows[i][i].degree()).collect();
    let max_off_diagonal_degree =
        (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).filter_map(|(i, j)| rows[i][j].degree()).max();
    Ok(DetReport { q, det_hex: det.to_hex(), det_degree: det.degree(), diagonal_degrees, max_off_diagonal_degree })
}

/// Full-kernel check at a random specialization `α ← α₀ ∈ GF(2^k)`.
///
/// Rank can only drop under specialization, so an injective map at `α₀`
/// certifies injectivity over `F2(α)`.
#[derive(Debug, Clone, Serialize)]
pub struct EvaluationReport {
    pub q: u64,
    pub minpoly: Vec<u8>,
    /// Hex of the sampled point.
    pub point: String,
    pub rank: usize,
    pub columns: usize,
}

impl EvaluationReport {
    pub fn injective(&self) -> bool {
        self.rank == self.columns
    }
}

pub fn kernel_n_evaluated(q: u64, k: u32, seed: u64) -> Result<EvaluationReport> {
    if k < 11 {
        return Err(Error::InvalidParameter(format!("evaluation field degree {k} below 11")));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let minpoly = random_irreducible(k, &mut rng);
    let gf = Gf2m::new(&minpoly)?;
    let point = loop {
        let a = gf.random_elem(&mut rng);
        if a.0 > 1 {
            break a;
        }
    };
    let lab = Lab::new(&gf, q, &point)?;
    let mm = lab.ring().mult_matrix(lab.g(), lab.source_degree())?;
    Ok(EvaluationReport { q, minpoly, point: gf.encode_hex(&point), rank: mm.rank(), columns: mm.ncols() })
}

/// Evaluation at a caller-chosen point (used by tests to hit bad specializations).
pub fn kernel_n_rank_at(gf: &Gf2m, point: Gf2mElem, q: u64) -> Result<(usize, usize)> {
    let lab = Lab::new(gf, q, &point)?;
    let mm = lab.ring().mult_matrix(lab.g(), lab.source_degree())?;
    Ok((mm.rank(), mm.ncols()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{alpha_of_lambda, F2};

    fn labels(lab: &Lab<F2>, s: Space) -> Vec<(u32, u32, u32)> {
        lab.basis_of(s)
            .unwrap()
            .iter()
            .filter_map(|e| match e.label {
                Label::Bracket { i, j, k } => Some((i, j, k)),
                Label::Delta => None,
            })
            .collect()
    }

    #[test]
    fn x_basis_at_q2() {
        let lab = Lab::new(&F2, 2, &true).unwrap();
        assert_eq!(
            labels(&lab, Space::X),
            vec![(7, 0, 0), (5, 2, 0), (3, 4, 0), (1, 6, 0), (3, 0, 1), (1, 2, 1)]
        );
        assert_eq!(lab.basis_of(Space::YDelta).unwrap().len(), 7);
    }

    #[test]
    fn b_bits() {
        assert!(b_bit(2, 1));
        assert!(!b_bit(2, 2));
    }

    #[test]
    fn formula_at_q2() {
        let f = RatFunc::new("α");
        let a = f.indeterminate();
        let lab = Lab::new(&f, 2, &a).unwrap();
        let im = lab.induced_matrix(Route::Formula).unwrap();
        let d = f.add(&a, &f.square(&a));
        assert_eq!(im.m, Matrix::from_rows(&f, 2, vec![vec![d.clone(), f.zero()], vec![f.zero(), d]]).unwrap());
        assert_eq!(im.b, vec![f.one(), f.zero()]);
        let lab1 = Lab::new(&F2, 2, &true).unwrap();
        assert!(lab1.induced_matrix(Route::Formula).unwrap().m.is_zero());
    }

    #[test]
    fn routes_agree_small() {
        let f = RatFunc::new("α");
        let a = f.indeterminate();
        for q in [2, 4] {
            let lab = Lab::new(&f, q, &a).unwrap();
            let x = lab.induced_matrix(Route::Formula).unwrap();
            let y = lab.induced_matrix(Route::Composite).unwrap();
            assert!(x.same_as(&y), "Q={q}");
        }
        let gf = Gf2m::new(&[1, 1, 0, 1]).unwrap();
        let (alpha, q) = alpha_of_lambda(&gf);
        let lab = Lab::new(&gf, q, &alpha).unwrap();
        assert!(lab.induced_matrix(Route::Formula).unwrap().same_as(&lab.induced_matrix(Route::Composite).unwrap()));
    }

    #[test]
    fn alpha_one_kernel() {
        let lab = Lab::new(&F2, 2, &true).unwrap();
        assert!(!lab.kernel_n().unwrap().is_empty());
        let cap = lab.kernel_n_cap_x().unwrap();
        assert_eq!(cap.kernel, vec![vec![false, true]]);
        assert_eq!(cap.lifts.len(), 1);
        let member = lab.colon_membership(&Poly::mono(&F2, 0, 3, 3)).unwrap();
        assert!(!member.member);
        assert!(member.duality_consistent());
    }

    #[test]
    fn transcendental_kernels_vanish() {
        let f = RatFunc::new("α");
        let a = f.indeterminate();
        let lab = Lab::new(&f, 2, &a).unwrap();
        assert!(lab.kernel_n().unwrap().is_empty());
        assert!(lab.kernel_n_cap_x().unwrap().kernel.is_empty());
        for text in ["y^3*z^3", "x^6"] {
            let f6 = crate::poly::parse_poly(&f, &a, text).unwrap();
            assert!(lab.colon_membership(&f6).unwrap().member, "{text}");
        }
        assert!(lab.x0_bijectivity().unwrap().passed);
        assert!(lab.z_support_check().unwrap().passed);
    }

    #[test]
    fn determinant_degrees() {
        for q in [2, 4] {
            let r = det_induced(q).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }
}
