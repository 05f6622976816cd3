//! Subring membership `(x³+y³)^{q−1} z^j ∈ L[x, y, z^q]` inside `A = L[x,y,z]/(g_α)`.
//!
//! Membership is decided in one graded piece of `T` whose truncation `4Q`
//! exceeds the degree, so `T_d = A_d` and no truncation artifact can occur.

use crate::check::Check;
use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::field::Field;
use crate::is_power_of_two;
use crate::poly::{parse_poly, Poly};
use crate::rings::QuotientRing;

/// Outcome of a membership test in `L[x, y, z^step]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Membership<E> {
    pub degree: u32,
    /// Truncation parameter of the ambient `T`.
    pub ring_q: u64,
    /// Coefficients on the spanning set `x^a y^b z^{step·c}`, ordered by `(c, a)`, when a member.
    pub combination: Option<Vec<E>>,
}

impl<E> Membership<E> {
    pub fn member(&self) -> bool {
        self.combination.is_some()
    }
}

/// Smallest power of two `Q` with `4Q > d`.
pub fn ring_q_for(d: u32) -> u64 {
    let mut q = 1u64;
    while 4 * q <= d as u64 {
        q *= 2;
    }
    q
}

/// Whether the homogeneous `p` lies in the span of `x^a y^b z^{step·c}` in `A`.
pub fn subring_membership<F: Field>(field: &F, alpha: &F::Elem, p: &Poly<F>, step: u32) -> Result<Membership<F::Elem>> {
    if step == 0 {
        return Err(Error::InvalidParameter("step must be positive".into()));
    }
    let d = p.homogeneous_degree()?.unwrap_or(0);
    let ring_q = ring_q_for(d);
    let t = QuotientRing::curve_t(field, alpha, ring_q)?;
    if t.bound() <= d {
        return Err(Error::InvalidParameter(format!("truncation {} does not exceed degree {d}", t.bound())));
    }
    let mut columns = Vec::new();
    for c in 0..=d / step {
        let rest = d - step * c;
        for a in 0..=rest {
            let gen = t.reduce(&Poly::mono(field, a, rest - a, step * c));
            columns.push(t.vector(&gen, d)?.coords);
        }
    }
    let target = t.vector(&t.reduce(p), d)?;
    let m = Matrix::from_columns(field, t.dim(d), &columns)?;
    Ok(Membership { degree: d, ring_q, combination: m.in_image(&target.coords)? })
}

fn cubic_power<F: Field>(field: &F, alpha: &F::Elem, e: u64) -> Result<Poly<F>> {
    Ok(parse_poly(field, alpha, "x^3 + y^3")?.pow(e))
}

/// `(x³+y³)^{q−1} z^j ∈ L[x, y, z^q]`.
pub fn verify_subring_membership<F: Field>(field: &F, alpha: &F::Elem, q: u64, j: u32) -> Result<Membership<F::Elem>> {
    if !is_power_of_two(q) {
        return Err(Error::InvalidParameter(format!("q = {q} is not a power of two")));
    }
    let p = cubic_power(field, alpha, q - 1)?.mul_monomial(&crate::poly::Monomial::new(0, 0, j));
    subring_membership(field, alpha, &p, q as u32)
}

/// The `q`-th power form: `(x³+y³)^q (z^q)^j ∈ L[x, y, z^{2q}]`.
pub fn verify_shadow_membership<F: Field>(field: &F, alpha: &F::Elem, q: u64, j: u32) -> Result<Membership<F::Elem>> {
    if !is_power_of_two(q) {
        return Err(Error::InvalidParameter(format!("q = {q} is not a power of two")));
    }
    let p = cubic_power(field, alpha, q)?.mul_monomial(&crate::poly::Monomial::new(0, 0, q as u32 * j));
    subring_membership(field, alpha, &p, 2 * q as u32)
}

/// Membership for every `q` in `qs` and `j` in `js`, plus the shadow at `q = 2`.
pub fn membership_checks<F: Field>(field: &F, alpha: &F::Elem, qs: &[u64], js: &[u32]) -> Result<Vec<Check>> {
    let spec = field.spec();
    let mut checks = Vec::new();
    for &q in qs {
        for &j in js {
            let m = verify_subring_membership(field, alpha, q, j)?;
            checks.push(Check::new(
                format!("test-element/{spec}/q={q}/j={j}"),
                "(x³+y³)^{q−1} z^j lies in L[x, y, z^q] modulo g_α",
                m.member(),
                format!("degree {}, ambient Q = {}", m.degree, m.ring_q),
            ));
        }
    }
    for &j in js {
        let m = verify_shadow_membership(field, alpha, 2, j)?;
        checks.push(Check::new(
            format!("test-element-shadow/{spec}/q=2/j={j}"),
            "(x³+y³)^q (z^q)^j lies in L[x, y, z^{2q}] modulo g_α",
            m.member(),
            format!("degree {}, ambient Q = {}", m.degree, m.ring_q),
        ));
    }
    Ok(checks)
}
