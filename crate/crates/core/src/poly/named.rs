//! The distinguished polynomials of the quartic family and the identities relating them.

use serde::Serialize;

use super::{Monomial, Poly};
use crate::check::Check;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::is_power_of_two;

/// Selector for [`named_element`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NamedElement<E> {
    /// `z⁴ + xyz² + (x³+y³)z`
    P,
    /// `P + αx²y²`
    G(E),
    /// Sum of `x^i y^j` over `i ≡ j (mod 3)`, `i + j = 4r − 2`.
    A(u64),
    /// Sum of `x^i y^j` over `i ≡ j (mod 3)`, `i + j = 4r − 1`.
    B(u64),
    /// `C_1 = 1`, `C_{2r} = A_r²`.
    C(u64),
    /// `A_Q z² + B_Q z`
    R(u64),
    /// The element of degree `6Q − 1` of the truncated ring supported on `z`, `z²`.
    Delta(u64),
    /// `x^i y^j + x^j y^i`
    Bracket(u32, u32),
}

pub fn named_element<F: Field>(field: &F, which: &NamedElement<F::Elem>) -> Result<Poly<F>> {
    Ok(match which {
        NamedElement::P => p_poly(field),
        NamedElement::G(alpha) => g_alpha(field, alpha),
        NamedElement::A(r) => a_r(field, *r)?,
        NamedElement::B(r) => b_r(field, *r)?,
        NamedElement::C(r) => c_r(field, *r)?,
        NamedElement::R(q) => r_q(field, *q)?,
        NamedElement::Delta(q) => delta(field, *q)?,
        NamedElement::Bracket(i, j) => bracket(field, *i, *j),
    })
}

fn require_power_of_two(what: &str, n: u64) -> Result<()> {
    if is_power_of_two(n) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{what} = {n} is not a power of 2")))
    }
}

pub fn p_poly<F: Field>(field: &F) -> Poly<F> {
    Poly::from_terms(
        field,
        [
            (Monomial::new(0, 0, 4), field.one()),
            (Monomial::new(1, 1, 2), field.one()),
            (Monomial::new(3, 0, 1), field.one()),
            (Monomial::new(0, 3, 1), field.one()),
        ],
    )
}

pub fn g_alpha<F: Field>(field: &F, alpha: &F::Elem) -> Poly<F> {
    let mut g = p_poly(field);
    g.add_term(Monomial::new(2, 2, 0), alpha);
    g
}

fn congruent_pairs<F: Field>(field: &F, total: u64) -> Poly<F> {
    let total = total as u32;
    Poly::from_terms(
        field,
        (0..=total)
            .filter(|i| (*i as i64 - (total - i) as i64).rem_euclid(3) == 0)
            .map(|i| (Monomial::new(i, total - i, 0), field.one())),
    )
}

pub fn a_r<F: Field>(field: &F, r: u64) -> Result<Poly<F>> {
    require_power_of_two("r", r)?;
    Ok(congruent_pairs(field, 4 * r - 2))
}

pub fn b_r<F: Field>(field: &F, r: u64) -> Result<Poly<F>> {
    require_power_of_two("r", r)?;
    Ok(congruent_pairs(field, 4 * r - 1))
}

pub fn c_r<F: Field>(field: &F, r: u64) -> Result<Poly<F>> {
    require_power_of_two("r", r)?;
    if r == 1 {
        Ok(Poly::one(field))
    } else {
        Ok(a_r(field, r / 2)?.square())
    }
}

pub fn r_q<F: Field>(field: &F, q: u64) -> Result<Poly<F>> {
    let z2 = Poly::mono(field, 0, 0, 2);
    let z1 = Poly::mono(field, 0, 0, 1);
    Ok(a_r(field, q)?.mul(&z2).add(&b_r(field, q)?.mul(&z1)))
}

pub fn delta<F: Field>(field: &F, q: u64) -> Result<Poly<F>> {
    require_power_of_two("Q", q)?;
    let bound = 4 * q as u32;
    let top = 6 * q as u32 - 1;
    let mut terms = Vec::new();
    for k in 1..=2u32 {
        let s = top - k;
        for i in 0..=s {
            let j = s - i;
            if i < bound && j < bound && (i as i64 - j as i64).rem_euclid(3) != 0 {
                terms.push((Monomial::new(i, j, k), field.one()));
            }
        }
    }
    Ok(Poly::from_terms(field, terms))
}

pub fn bracket<F: Field>(field: &F, i: u32, j: u32) -> Poly<F> {
    Poly::mono(field, i, j, 0).add(&Poly::mono(field, j, i, 0))
}

/// `Σ (C_r P)^s` over `rs = Q`; with `skip_top`, the `s = Q` term is left out.
pub fn frobenius_sum<F: Field>(field: &F, q: u64, skip_top: bool) -> Result<Poly<F>> {
    require_power_of_two("Q", q)?;
    let p = p_poly(field);
    let mut acc = Poly::zero(field);
    let mut r = 1u64;
    while r <= q {
        let s = q / r;
        if !(skip_top && s == q) {
            let base = c_r(field, r)?.mul(&p);
            acc.add_assign(&base.frobenius(s.trailing_zeros()));
        }
        r *= 2;
    }
    Ok(acc)
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub q: u64,
    pub checks: Vec<Check>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Checks the polynomial identities tying `P` to `A_Q`, `B_Q`, `C_r`, `R_Q` and `Δ`.
///
/// Every check is an exact comparison; statements about the truncated ring
/// compare both sides after truncation at `(x^{4Q}, y^{4Q}, z^{4Q})`.
pub fn verify_p_identities<F: Field>(field: &F, q: u64) -> Result<IdentityReport> {
    require_power_of_two("Q", q)?;
    let bound = 4 * q as u32;
    let mut checks = Vec::new();
    let mut push = |name: String, claim: &'static str, passed: bool, detail: String| {
        checks.push(Check::new(name, claim, passed, detail));
    };

    let a_q = a_r(field, q)?;
    let b_q = b_r(field, q)?;
    let sum = frobenius_sum(field, q, false)?;
    let z = |k| Poly::mono(field, 0, 0, k);

    // z^{4Q} = A_Q z² + B_Q z + Σ (C_r P)^s, exactly.
    let rhs = a_q.mul(&z(2)).add(&b_q.mul(&z(1))).add(&sum);
    let lhs = z(4 * q as u32);
    push(
        format!("z-power-expansion/Q={q}"),
        "z^{4Q} = A_Q z^2 + B_Q z + sum over rs=Q of (C_r P)^s",
        lhs == rhs,
        format!("{} terms on the right", rhs.len()),
    );

    // Recurrences for every 2r ≤ Q.
    let xy = Poly::mono(field, 1, 1, 0);
    let x3y3 = Poly::mono(field, 3, 0, 0).add(&Poly::mono(field, 0, 3, 0));
    let mut r = 1u64;
    while 2 * r <= q {
        let ar = a_r(field, r)?;
        let br = b_r(field, r)?;
        let a2 = a_r(field, 2 * r)?;
        let b2 = b_r(field, 2 * r)?;
        push(
            format!("a-recurrence/r={r}"),
            "A_{2r} = B_r^2 + xy A_r^2",
            a2 == br.square().add(&xy.mul(&ar.square())),
            String::new(),
        );
        push(
            format!("b-recurrence/r={r}"),
            "B_{2r} = (x^3+y^3) A_r^2",
            b2 == x3y3.mul(&ar.square()),
            String::new(),
        );
        r *= 2;
    }

    // R_Q = Σ (C_r P)^s in the truncated ring.
    let rq = r_q(field, q)?;
    push(
        format!("r-q-truncated/Q={q}"),
        "R_Q equals the Frobenius sum modulo (x^{4Q}, y^{4Q}, z^{4Q})",
        rq.truncate(bound) == sum.truncate(bound),
        String::new(),
    );

    // Bracket products for every i + j = 2Q − 1.
    let dlt = delta(field, q)?;
    let p_q = p_poly(field).frobenius(q.trailing_zeros());
    let partial = frobenius_sum(field, q, true)?;
    let x3y3_pow = x3y3.pow(q - 1);
    let mut r_ok = true;
    let mut p_ok = true;
    let mut c_ok = true;
    let mut failures = Vec::new();
    for i in 0..(2 * q as u32) {
        let j = 2 * q as u32 - 1 - i;
        let congruent = (i as i64 - j as i64).rem_euclid(3) == 0;
        let br = bracket(field, i, j);

        let prod = br.mul(&rq).truncate(bound);
        let expected = if congruent { Poly::zero(field) } else { dlt.clone() };
        if prod != expected {
            r_ok = false;
            failures.push(format!("[{i},{j}]·R_Q"));
        }

        let lhs = br.mul(&p_q).truncate(bound);
        let mut rhs = br.mul(&partial).truncate(bound);
        if !congruent {
            rhs.add_assign(&dlt);
        }
        if lhs != rhs {
            p_ok = false;
            failures.push(format!("[{i},{j}]·P^Q"));
        }

        let coeff = if q >= 2 {
            br.mul(&x3y3_pow).coeff(&Monomial::new(4 * q as u32 - 2, q as u32 - 2, 0))
        } else {
            field.zero()
        };
        let want = if congruent { field.one() } else { field.zero() };
        if coeff != want {
            c_ok = false;
            failures.push(format!("coefficient for [{i},{j}]"));
        }
    }
    let detail = failures.join(", ");
    push(
        format!("bracket-times-r-q/Q={q}"),
        "[i,j] R_Q is 0 when i ≡ j (mod 3) and Δ otherwise, for i + j = 2Q − 1",
        r_ok,
        detail.clone(),
    );
    push(
        format!("bracket-times-p-power/Q={q}"),
        "[i,j] P^Q = εΔ + [i,j] Σ_{s≠Q} (C_r P)^s in the truncated ring, for i + j = 2Q − 1",
        p_ok,
        detail.clone(),
    );
    push(
        format!("bracket-coefficient/Q={q}"),
        "coefficient of x^{4Q−2} y^{Q−2} in [i,j](x^3+y^3)^{Q−1} is 1 iff i ≡ j (mod 3)",
        c_ok,
        detail,
    );

    Ok(IdentityReport { q, checks })
}
