//! Graded quotient rings as finite-dimensional graded vector spaces.
//!
//! - `O = L[x,y,z]/(x^{4Q}, y^{4Q}, z^{4Q})`
//! - `D = L[x,y]/(x^{4Q}, y^{4Q})`, realized as `O` modulo `z`
//! - `T = L[x,y,z]/(x^{4Q}, y^{4Q}, g_α)`, free over `D` on `1, z, z², z³`
//!
//! Graded pieces are built on demand and memoized. Basis monomials are listed
//! in ascending lex order (`x > y > z`).

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use crate::check::Check;
use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::field::Field;
use crate::poly::{g_alpha, Monomial, Poly};

/// Rewrites `z^k`, `k ≥ 4`, as `Σ_{t<4} c_{k,t}(x,y) z^t` modulo `(x^a, y^b, g_α)`.
///
/// `c_{k,t}` is homogeneous of degree `k − t`, so it is stored densely by its
/// x-exponent. Past `a + b + 1` every coefficient is truncated away.
#[derive(Debug, Clone)]
pub struct CurveReducer<F: Field> {
    field: F,
    xb: u32,
    yb: u32,
    /// `table[k][t][s]`: coefficient of `x^s y^{k−t−s} z^t` in `z^k`.
    table: Vec<[Vec<F::Elem>; 4]>,
}

impl<F: Field> CurveReducer<F> {
    pub fn new(field: &F, alpha: &F::Elem, xb: u32, yb: u32) -> Self {
        let f = field;
        let kmax = (xb + yb + 1) as usize;
        let w = xb as usize;
        let empty = || std::array::from_fn::<Vec<F::Elem>, 4, _>(|_| vec![f.zero(); w]);
        let mut table = Vec::with_capacity(kmax + 1);
        for k in 0..4.min(kmax + 1) {
            let mut e = empty();
            if w > 0 && yb > 0 {
                e[k][0] = f.one();
            }
            table.push(e);
        }
        let fits = |s: usize, y: i64| s < w && y >= 0 && (y as u32) < yb;
        for k in 3..kmax {
            let cur = &table[k];
            let mut next = empty();
            for t in 0..3 {
                next[t + 1].clone_from(&cur[t]);
            }
            for s in 0..w {
                let c = &cur[3][s];
                if f.is_zero(c) {
                    continue;
                }
                let y = k as i64 - 3 - s as i64;
                // z⁴ = xy z² + (x³ + y³) z + α x²y²
                if fits(s + 1, y + 1) {
                    f.add_assign(&mut next[2][s + 1], c);
                }
                if fits(s + 3, y) {
                    f.add_assign(&mut next[1][s + 3], c);
                }
                if fits(s, y + 3) {
                    f.add_assign(&mut next[1][s], c);
                }
                if fits(s + 2, y + 2) {
                    f.add_assign(&mut next[0][s + 2], &f.mul(alpha, c));
                }
            }
            table.push(next);
        }
        Self { field: field.clone(), xb, yb, table }
    }

    pub fn bounds(&self) -> (u32, u32) {
        (self.xb, self.yb)
    }

    /// Feeds the normal form of `c · mon` to `out`, term by term (terms may repeat).
    pub fn reduce_term(&self, mon: &Monomial, c: &F::Elem, out: &mut impl FnMut(Monomial, F::Elem)) {
        if mon.x >= self.xb || mon.y >= self.yb || self.field.is_zero(c) {
            return;
        }
        if mon.z < 4 {
            out(*mon, c.clone());
            return;
        }
        let Some(row) = self.table.get(mon.z as usize) else { return };
        for (t, coeffs) in row.iter().enumerate() {
            for (s, e) in coeffs.iter().enumerate() {
                if self.field.is_zero(e) {
                    continue;
                }
                let y = mon.z - t as u32 - s as u32;
                let m = Monomial::new(mon.x + s as u32, mon.y + y, t as u32);
                if m.x < self.xb && m.y < self.yb {
                    out(m, self.field.mul(c, e));
                }
            }
        }
    }

    pub fn reduce(&self, p: &Poly<F>) -> Poly<F> {
        let mut acc = Poly::zero(&self.field);
        for (m, c) in p.terms() {
            self.reduce_term(m, c, &mut |m, c| acc.add_term(m, &c));
        }
        acc
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum RingKind {
    TruncO,
    TruncD,
    CurveT,
}

/// Monomial basis of one graded piece.
#[derive(Debug)]
pub struct Basis {
    pub degree: u32,
    pub monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl Basis {
    fn new(degree: u32, monomials: Vec<Monomial>) -> Self {
        let index = monomials.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        Self { degree, monomials, index }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

/// An element of one graded piece, in coordinates of that piece's basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedVector<E> {
    pub degree: u32,
    pub coords: Vec<E>,
}

/// Result of the multiplication-pairing check in degrees `i + j = top`.
#[derive(Debug, Clone)]
pub struct PairingReport {
    pub i: u32,
    pub j: u32,
    pub dim_i: usize,
    pub dim_j: usize,
    pub gram_rank: usize,
    /// `None` when the shifted degrees fall outside the ring.
    pub duality: Option<bool>,
}

impl PairingReport {
    pub fn nondegenerate(&self) -> bool {
        self.dim_i == self.dim_j && self.gram_rank == self.dim_i
    }

    pub fn passed(&self) -> bool {
        self.nondegenerate() && self.duality != Some(false)
    }

    pub fn to_check(&self, ring: &str) -> Check {
        Check::new(
            format!("pairing/{ring}/i={}", self.i),
            "multiplication into the top degree is a perfect pairing, and multiplication maps are adjoint under it",
            self.passed(),
            format!(
                "dims {}x{}, Gram rank {}, duality {}",
                self.dim_i,
                self.dim_j,
                self.gram_rank,
                match self.duality {
                    Some(true) => "holds",
                    Some(false) => "FAILS",
                    None => "vacuous",
                }
            ),
        )
    }
}

pub struct QuotientRing<F: Field> {
    field: F,
    kind: RingKind,
    q: u64,
    bound: u32,
    alpha: F::Elem,
    reducer: Option<CurveReducer<F>>,
    bases: Mutex<HashMap<u32, Arc<Basis>>>,
}

impl<F: Field> std::fmt::Debug for QuotientRing<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "QuotientRing({:?}, Q={})", self.kind, self.q)
    }
}

impl<F: Field> QuotientRing<F> {
    fn build(field: &F, kind: RingKind, q: u64, alpha: F::Elem) -> Result<Self> {
        if q == 0 || q > 1 << 12 {
            return Err(Error::InvalidParameter(format!("Q = {q} out of range")));
        }
        let bound = 4 * q as u32;
        let reducer = (kind == RingKind::CurveT).then(|| CurveReducer::new(field, &alpha, bound, bound));
        Ok(Self { field: field.clone(), kind, q, bound, alpha, reducer, bases: Mutex::new(HashMap::new()) })
    }

    pub fn trunc_o(field: &F, q: u64) -> Result<Self> {
        Self::build(field, RingKind::TruncO, q, field.zero())
    }

    pub fn trunc_d(field: &F, q: u64) -> Result<Self> {
        Self::build(field, RingKind::TruncD, q, field.zero())
    }

    pub fn curve_t(field: &F, alpha: &F::Elem, q: u64) -> Result<Self> {
        if field.is_zero(alpha) {
            return Err(Error::InvalidParameter("α must be nonzero".into()));
        }
        Self::build(field, RingKind::CurveT, q, alpha.clone())
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// The exponent bound `4Q` on `x` and `y` (and on `z` in `O`).
    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn alpha(&self) -> &F::Elem {
        &self.alpha
    }

    /// Largest nonzero degree; that piece is one-dimensional.
    pub fn top_degree(&self) -> u32 {
        let b = self.bound - 1;
        match self.kind {
            RingKind::TruncO => 3 * b,
            RingKind::TruncD => 2 * b,
            RingKind::CurveT => 2 * b + 3,
        }
    }

    pub fn top_monomial(&self) -> Monomial {
        let b = self.bound - 1;
        match self.kind {
            RingKind::TruncO => Monomial::new(b, b, b),
            RingKind::TruncD => Monomial::new(b, b, 0),
            RingKind::CurveT => Monomial::new(b, b, 3),
        }
    }

    fn z_limit(&self) -> u32 {
        match self.kind {
            RingKind::TruncO => self.bound,
            RingKind::TruncD => 1,
            RingKind::CurveT => 4,
        }
    }

    pub fn graded_basis(&self, d: u32) -> Arc<Basis> {
        if let Some(b) = self.bases.lock().expect("basis memo").get(&d) {
            return b.clone();
        }
        let zl = self.z_limit();
        let mut mons = Vec::new();
        for x in 0..self.bound.min(d + 1) {
            for y in 0..self.bound.min(d - x + 1) {
                let z = d - x - y;
                if z < zl {
                    mons.push(Monomial::new(x, y, z));
                }
            }
        }
        let basis = Arc::new(Basis::new(d, mons));
        self.bases.lock().expect("basis memo").entry(d).or_insert(basis).clone()
    }

    pub fn dim(&self, d: u32) -> usize {
        self.graded_basis(d).len()
    }

    fn reduce_term(&self, m: &Monomial, c: &F::Elem, out: &mut impl FnMut(Monomial, F::Elem)) {
        match &self.reducer {
            Some(r) => r.reduce_term(m, c, out),
            None => {
                if m.x < self.bound && m.y < self.bound && m.z < self.z_limit() && !self.field.is_zero(c) {
                    out(*m, c.clone())
                }
            }
        }
    }

    /// Normal form.
    pub fn reduce(&self, p: &Poly<F>) -> Poly<F> {
        let mut acc = Poly::zero(&self.field);
        for (m, c) in p.terms() {
            self.reduce_term(m, c, &mut |m, c| acc.add_term(m, &c));
        }
        acc
    }

    /// Normal form split into homogeneous components.
    pub fn components(&self, p: &Poly<F>) -> BTreeMap<u32, GradedVector<F::Elem>> {
        let nf = self.reduce(p);
        let mut out = BTreeMap::new();
        for (m, c) in nf.terms() {
            let d = m.degree();
            let v = out.entry(d).or_insert_with(|| GradedVector { degree: d, coords: vec![self.field.zero(); self.dim(d)] });
            let i = self.graded_basis(d).index_of(m).expect("normal form lies in the basis");
            v.coords[i] = c.clone();
        }
        out
    }

    /// Coordinates of a polynomial whose normal form lives in degree `d`.
    pub fn vector(&self, p: &Poly<F>, d: u32) -> Result<GradedVector<F::Elem>> {
        let basis = self.graded_basis(d);
        let mut coords = vec![self.field.zero(); basis.len()];
        let mut stray = false;
        for (m, c) in p.terms() {
            self.reduce_term(m, c, &mut |m, c| match basis.index_of(&m) {
                Some(i) => self.field.add_assign(&mut coords[i], &c),
                None => stray = true,
            });
        }
        if stray && !self.reduce(&p.filter(|m| m.degree() != d)).is_zero() {
            return Err(Error::NotHomogeneous);
        }
        Ok(GradedVector { degree: d, coords })
    }

    pub fn to_poly(&self, v: &GradedVector<F::Elem>) -> Poly<F> {
        let basis = self.graded_basis(v.degree);
        Poly::from_terms(&self.field, basis.monomials.iter().copied().zip(v.coords.iter().cloned()))
    }

    /// Matrix of multiplication by homogeneous `g` from degree `d` to `d + deg g`.
    pub fn mult_matrix(&self, g: &Poly<F>, d: u32) -> Result<Matrix<F>> {
        let e = g
            .homogeneous_degree()?
            .ok_or_else(|| Error::InvalidParameter("multiplier is zero".into()))?;
        let src = self.graded_basis(d);
        let dst = self.graded_basis(d + e);
        let f = &self.field;
        let mut m = Matrix::zeros(f, dst.len(), src.len());
        for (col, mon) in src.monomials.iter().enumerate() {
            for (gm, gc) in g.terms() {
                self.reduce_term(&mon.mul(gm), gc, &mut |t, c| {
                    let row = dst.index_of(&t).expect("product stays in the target degree");
                    let cur = f.add(m.get(row, col), &c);
                    m.set(row, col, cur);
                });
            }
        }
        Ok(m)
    }

    /// Coefficient of the top monomial in `u · v`.
    pub fn pairing(&self, u: &Poly<F>, v: &Poly<F>) -> F::Elem {
        let top = self.top_monomial();
        let mut acc = self.field.zero();
        for (mu, cu) in u.terms() {
            for (mv, cv) in v.terms() {
                let m = mu.mul(mv);
                if m.degree() != top.degree() {
                    continue;
                }
                self.reduce_term(&m, &self.field.mul(cu, cv), &mut |t, c| {
                    if t == top {
                        self.field.add_assign(&mut acc, &c);
                    }
                });
            }
        }
        acc
    }

    /// Gram matrix of the pairing `R_i × R_{top−i}` in monomial bases.
    pub fn gram(&self, i: u32) -> Result<Matrix<F>> {
        let top = self.top_degree();
        if i > top {
            return Err(Error::InvalidParameter(format!("degree {i} exceeds top degree {top}")));
        }
        let bi = self.graded_basis(i);
        let bj = self.graded_basis(top - i);
        let f = &self.field;
        let tm = self.top_monomial();
        Ok(Matrix::from_fn(f, bi.len(), bj.len(), |r, c| {
            let m = bi.monomials[r].mul(&bj.monomials[c]);
            let mut acc = f.zero();
            self.reduce_term(&m, &f.one(), &mut |t, v| {
                if t == tm {
                    f.add_assign(&mut acc, &v);
                }
            });
            acc
        }))
    }

    /// Nondegeneracy of the pairing in degrees `(i, top − i)` and adjointness
    /// of multiplication by `g` (default: `g_α` on `O`, `z^{4Q}` on `T`, `x²y²` on `D`):
    /// `Aᵀ · G_{i+e} = G_i · B` for `A: R_i → R_{i+e}`, `B: R_{j−e} → R_j`.
    pub fn pairing_check(&self, i: u32, g: Option<&Poly<F>>) -> Result<PairingReport> {
        let top = self.top_degree();
        let gi = self.gram(i)?;
        let j = top - i;
        let default;
        let g = match g {
            Some(g) => g,
            None => {
                default = match self.kind {
                    RingKind::TruncO => g_alpha(&self.field, &self.field.one()),
                    RingKind::CurveT => Poly::mono(&self.field, 0, 0, self.bound),
                    RingKind::TruncD => Poly::mono(&self.field, 2, 2, 0),
                };
                &default
            }
        };
        let e = g.homogeneous_degree()?.ok_or_else(|| Error::InvalidParameter("multiplier is zero".into()))?;
        let duality = if i + e <= top && j >= e {
            let a = self.mult_matrix(g, i)?;
            let b = self.mult_matrix(g, j - e)?;
            let g_shift = self.gram(i + e)?;
            Some(a.transpose().mul(&g_shift)? == gi.mul(&b)?)
        } else {
            None
        };
        Ok(PairingReport { i, j, dim_i: gi.nrows(), dim_j: gi.ncols(), gram_rank: gi.rank(), duality })
    }

    /// Dimension of the subspace of `R_d` killed by `x`, `y` and `z`.
    pub fn socle_dim(&self, d: u32) -> Result<usize> {
        let f = &self.field;
        let mx = self.mult_matrix(&Poly::mono(f, 1, 0, 0), d)?;
        let my = self.mult_matrix(&Poly::mono(f, 0, 1, 0), d)?;
        let mz = self.mult_matrix(&Poly::mono(f, 0, 0, 1), d)?;
        let stacked = mx.vstack(&my)?.vstack(&mz)?;
        Ok(stacked.kernel_basis().len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{RatFunc, F2};
    use crate::poly::parse_poly;

    #[test]
    fn dimensions() {
        let o = QuotientRing::trunc_o(&F2, 2).unwrap();
        assert_eq!(o.dim(7), 36);
        assert_eq!(o.dim(11), 48);
        let t = QuotientRing::curve_t(&F2, &true, 2).unwrap();
        assert_eq!(t.graded_basis(17).monomials, vec![Monomial::new(7, 7, 3)]);
        assert_eq!(t.dim(18), 0);
        let d = QuotientRing::trunc_d(&F2, 2).unwrap();
        assert_eq!(d.graded_basis(0).monomials, vec![Monomial::ONE]);
    }

    #[test]
    fn curve_rewriting() {
        let f = RatFunc::new("α");
        let a = f.indeterminate();
        let t = QuotientRing::curve_t(&f, &a, 4).unwrap();
        let z4 = t.reduce(&Poly::mono(&f, 0, 0, 4));
        assert_eq!(z4, parse_poly(&f, &a, "x*y*z^2 + x^3*z + y^3*z + a*x^2*y^2").unwrap());
        let z8 = t.reduce(&Poly::mono(&f, 0, 0, 8));
        let want = parse_poly(
            &f,
            &a,
            "x^3*y^3*z^2 + x^6*z^2 + y^6*z^2 + x^5*y^2*z + x^2*y^5*z + a*x^4*y^4 + a^2*x^4*y^4",
        )
        .unwrap();
        assert_eq!(z8, want);
        // Idempotent.
        assert_eq!(t.reduce(&z8), z8);
    }

    #[test]
    fn truncation() {
        let o = QuotientRing::trunc_o(&F2, 2).unwrap();
        assert!(o.reduce(&Poly::mono(&F2, 8, 0, 0)).is_zero());
        let one = o.mult_matrix(&Poly::one(&F2), 5).unwrap();
        assert_eq!(one, Matrix::identity(&F2, o.dim(5)));
    }

    #[test]
    fn pairings_at_q2() {
        let t = QuotientRing::curve_t(&F2, &true, 2).unwrap();
        let r = t.pairing_check(0, None).unwrap();
        assert!(r.nondegenerate() && r.dim_i == 1);
        assert!(t.pairing_check(3, None).unwrap().passed());
        let o = QuotientRing::trunc_o(&F2, 2).unwrap();
        let r = o.pairing_check(7, None).unwrap();
        assert_eq!((r.dim_i, r.gram_rank, r.duality), (36, 36, Some(true)));
    }

    #[test]
    fn socle_is_top_degree() {
        let t = QuotientRing::curve_t(&F2, &true, 2).unwrap();
        for d in 0..=t.top_degree() {
            let want = usize::from(d == t.top_degree());
            assert_eq!(t.socle_dim(d).unwrap(), want, "degree {d}");
        }
    }
}
