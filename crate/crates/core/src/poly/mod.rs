//! Sparse polynomials in `x, y, z` over a [`Field`].

mod named;
mod text;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;

pub use named::{
    a_r, b_r, bracket, c_r, delta, frobenius_sum, g_alpha, named_element, p_poly, r_q, verify_p_identities,
    IdentityReport, NamedElement,
};
pub use text::parse_poly;

/// `x^x y^y z^z`. Ordered lexicographically with `x > y > z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    pub x: u32,
    pub y: u32,
    pub z: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: 0, y: 0, z: 0 };

    pub const fn new(x: u32, y: u32, z: u32) -> Self {
        Self { x, y, z }
    }

    pub fn degree(&self) -> u32 {
        self.x + self.y + self.z
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.x + other.x, self.y + other.y, self.z + other.z)
    }

    pub fn pow(&self, n: u32) -> Monomial {
        Monomial::new(self.x * n, self.y * n, self.z * n)
    }

    /// Divides `self`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.x <= other.x && self.y <= other.y && self.z <= other.z
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (v, e) in [("x", self.x), ("y", self.y), ("z", self.z)] {
            match e {
                0 => {}
                1 => parts.push(v.to_string()),
                _ => parts.push(format!("{v}^{e}")),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// A polynomial: finite map from monomials to nonzero coefficients.
#[derive(Clone)]
pub struct Poly<F: Field> {
    field: F,
    terms: BTreeMap<Monomial, F::Elem>,
}

impl<F: Field> PartialEq for Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<F: Field> Eq for Poly<F> {}

impl<F: Field> Poly<F> {
    pub fn zero(field: &F) -> Self {
        Self { field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn one(field: &F) -> Self {
        Self::monomial(field, field.one(), Monomial::ONE)
    }

    pub fn monomial(field: &F, coeff: F::Elem, mon: Monomial) -> Self {
        let mut p = Self::zero(field);
        p.add_term(mon, &coeff);
        p
    }

    /// Monomial with coefficient 1.
    pub fn mono(field: &F, x: u32, y: u32, z: u32) -> Self {
        Self::monomial(field, field.one(), Monomial::new(x, y, z))
    }

    pub fn from_terms(field: &F, terms: impl IntoIterator<Item = (Monomial, F::Elem)>) -> Self {
        let mut p = Self::zero(field);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F::Elem)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, F::Elem> {
        self.terms
    }

    pub fn coeff(&self, mon: &Monomial) -> F::Elem {
        self.terms.get(mon).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Adds `c·mon`, dropping the entry if it cancels.
    pub fn add_term(&mut self, mon: Monomial, c: &F::Elem) {
        if self.field.is_zero(c) {
            return;
        }
        match self.terms.entry(mon) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = self.field.add(e.get(), c);
                if self.field.is_zero(&s) {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        r.add_assign(other);
        r
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(*m, c);
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        if self.field.is_zero(c) {
            return Self::zero(&self.field);
        }
        let terms = self.terms.iter().map(|(m, v)| (*m, self.field.mul(v, c))).collect();
        Self { field: self.field.clone(), terms }
    }

    pub fn mul_monomial(&self, mon: &Monomial) -> Self {
        let terms = self.terms.iter().map(|(m, v)| (m.mul(mon), v.clone())).collect();
        Self { field: self.field.clone(), terms }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut acc = Self::zero(&self.field);
        for (ma, ca) in &small.terms {
            for (mb, cb) in &big.terms {
                acc.add_term(ma.mul(mb), &self.field.mul(ca, cb));
            }
        }
        acc
    }

    /// Product keeping only monomials accepted by `keep`.
    pub fn mul_filtered(&self, other: &Self, keep: impl Fn(&Monomial) -> bool) -> Self {
        let mut acc = Self::zero(&self.field);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                if keep(&m) {
                    acc.add_term(m, &self.field.mul(ca, cb));
                }
            }
        }
        acc
    }

    pub fn square(&self) -> Self {
        self.frobenius(1)
    }

    /// `self^(2^n)`: squaring is additive in characteristic 2, so each term is raised separately.
    pub fn frobenius(&self, n: u32) -> Self {
        let e = 1u32 << n;
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.pow(e), self.field.frobenius_pow(c, n)))
            .collect();
        Self { field: self.field.clone(), terms }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Drops every monomial with some exponent `>= bound`.
    pub fn truncate(&self, bound: u32) -> Self {
        self.filter(|m| m.x < bound && m.y < bound && m.z < bound)
    }

    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (*m, c.clone())).collect();
        Self { field: self.field.clone(), terms }
    }

    /// Largest total degree, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// The common degree of all terms; zero counts as homogeneous of any degree.
    pub fn homogeneous_degree(&self) -> Result<Option<u32>> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let Some(d) = it.next() else { return Ok(None) };
        if it.all(|e| e == d) {
            Ok(Some(d))
        } else {
            Err(Error::NotHomogeneous)
        }
    }

    pub fn homogeneous_part(&self, d: u32) -> Self {
        self.filter(|m| m.degree() == d)
    }

    /// Swaps `x` and `y`.
    pub fn swap_xy(&self) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (Monomial::new(m.y, m.x, m.z), c.clone())).collect();
        Self { field: self.field.clone(), terms }
    }

    /// Largest z-exponent present.
    pub fn z_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.z).max()
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Highest monomial first.
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mon = m.to_string();
            if self.field.is_one(c) {
                write!(f, "{mon}")?;
            } else if *m == Monomial::ONE {
                write!(f, "{}", self.field.fmt_elem(c))?;
            } else {
                write!(f, "{}*{mon}", self.field.fmt_elem(c))?;
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Gf2m, F2};

    #[test]
    fn no_zero_coefficients_stored() {
        let f = F2;
        let mut p = Poly::mono(&f, 1, 0, 0);
        p.add_term(Monomial::new(1, 0, 0), &true);
        assert!(p.is_zero());
        let x = Poly::mono(&f, 1, 0, 0);
        let y = Poly::mono(&f, 0, 1, 0);
        // (x + y)^2 = x^2 + y^2
        let s = x.add(&y);
        assert_eq!(s.mul(&s), Poly::mono(&f, 2, 0, 0).add(&Poly::mono(&f, 0, 2, 0)));
        assert_eq!(s.mul(&s).len(), 2);
    }

    #[test]
    fn frobenius_matches_pow() {
        let f = Gf2m::new(&[1, 1, 0, 1]).unwrap();
        let l = f.generator();
        let p = Poly::from_terms(
            &f,
            [(Monomial::new(1, 2, 0), l), (Monomial::new(0, 0, 3), f.one()), (Monomial::new(2, 0, 1), f.square(&l))],
        );
        assert_eq!(p.frobenius(2), p.pow(4));
        assert_eq!(p.pow(5), p.pow(4).mul(&p));
    }

    #[test]
    fn homogeneity() {
        let f = F2;
        let p = Poly::mono(&f, 1, 1, 0).add(&Poly::mono(&f, 0, 0, 2));
        assert_eq!(p.homogeneous_degree(), Ok(Some(2)));
        let q = p.add(&Poly::mono(&f, 0, 0, 1));
        assert_eq!(q.homogeneous_degree(), Err(Error::NotHomogeneous));
        assert_eq!(Poly::zero(&f).homogeneous_degree(), Ok(None));
    }

    #[test]
    fn display() {
        let f = F2;
        let p = Poly::mono(&f, 3, 1, 0).add(&Poly::mono(&f, 0, 0, 2)).add(&Poly::one(&f));
        assert_eq!(p.to_string(), "x^3*y + z^2 + 1");
    }
}
