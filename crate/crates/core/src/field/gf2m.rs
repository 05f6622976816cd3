use std::sync::Arc;

use rand::Rng;

use super::{F2Poly, Field, FieldSpec};
use crate::error::{Error, Result};

/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 16;

/// Degrees up to this bound get a full multiplication table.
const TABLE_DEGREE: u32 = 8;

/// An element of `GF(2^m)` in the polynomial basis `1, λ, …, λ^(m-1)`:
/// bit `i` is the coefficient of `λ^i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Gf2mElem(pub u16);

/// `GF(2^m) = F2[λ]/(minpoly)`.
#[derive(Debug, Clone)]
pub struct Gf2m {
    m: u32,
    /// Minimal polynomial including the leading bit.
    modulus: u32,
    /// `table[(a << m) | b] = a·b` for small degrees.
    table: Option<Arc<[u16]>>,
}

impl PartialEq for Gf2m {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus
    }
}

impl Eq for Gf2m {}

impl Gf2m {
    /// `minpoly` lists coefficients lowest degree first and must be irreducible of degree ≥ 2.
    pub fn new(minpoly: &[u8]) -> Result<Self> {
        let p = F2Poly::from_coeffs(minpoly);
        let m = p.degree().unwrap_or(0) as u32;
        if m < 2 {
            return Err(Error::Field(format!(
                "minimal polynomial must have degree at least 2, got {m}"
            )));
        }
        if m > MAX_DEGREE {
            return Err(Error::Field(format!(
                "extension degree {m} exceeds the supported maximum {MAX_DEGREE}"
            )));
        }
        if !p.is_irreducible() {
            return Err(Error::Field(format!(
                "minimal polynomial {} is reducible over F2",
                p.fmt_with("λ")
            )));
        }
        let modulus = p.low_word() as u32;
        let mut field = Self { m, modulus, table: None };
        if m <= TABLE_DEGREE {
            let n = 1usize << m;
            let mut table = vec![0u16; n * n];
            for a in 0..n {
                for b in a..n {
                    let c = field.clmul_reduce(a as u16, b as u16);
                    table[(a << m) | b] = c;
                    table[(b << m) | a] = c;
                }
            }
            field.table = Some(table.into());
        }
        Ok(field)
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u64 {
        1 << self.m
    }

    pub fn minpoly(&self) -> Vec<u8> {
        F2Poly::from_u64(self.modulus as u64).coeffs()
    }

    /// The class of `λ`.
    pub fn generator(&self) -> Gf2mElem {
        Gf2mElem(2)
    }

    /// Embeds the F2-polynomial `p(λ)`.
    pub fn from_poly(&self, p: &F2Poly) -> Gf2mElem {
        let r = p.rem(&F2Poly::from_u64(self.modulus as u64));
        Gf2mElem(r.low_word() as u16)
    }

    fn clmul_reduce(&self, a: u16, b: u16) -> u16 {
        let mut acc: u32 = 0;
        let mut a = a as u32;
        let mut b = b as u32;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a & (1 << self.m) != 0 {
                a ^= self.modulus;
            }
        }
        acc as u16
    }

    #[inline]
    fn mul_raw(&self, a: u16, b: u16) -> u16 {
        match &self.table {
            Some(t) => t[((a as usize) << self.m) | b as usize],
            None => self.clmul_reduce(a, b),
        }
    }
}

impl Field for Gf2m {
    type Elem = Gf2mElem;

    fn zero(&self) -> Gf2mElem {
        Gf2mElem(0)
    }

    fn one(&self) -> Gf2mElem {
        Gf2mElem(1)
    }

    fn is_zero(&self, a: &Gf2mElem) -> bool {
        a.0 == 0
    }

    fn add(&self, a: &Gf2mElem, b: &Gf2mElem) -> Gf2mElem {
        Gf2mElem(a.0 ^ b.0)
    }

    fn mul(&self, a: &Gf2mElem, b: &Gf2mElem) -> Gf2mElem {
        Gf2mElem(self.mul_raw(a.0, b.0))
    }

    fn inv(&self, a: &Gf2mElem) -> Option<Gf2mElem> {
        if a.0 == 0 {
            return None;
        }
        // a^(2^m - 2)
        Some(self.pow(a, self.order() - 2))
    }

    fn spec(&self) -> FieldSpec {
        FieldSpec::Gf2m { minpoly: self.minpoly() }
    }

    fn encode_hex(&self, a: &Gf2mElem) -> String {
        let width = self.m.div_ceil(4) as usize;
        format!("{:0width$x}", a.0)
    }

    fn decode_hex(&self, s: &str) -> Option<Gf2mElem> {
        let v = u32::from_str_radix(s.trim(), 16).ok()?;
        (v < (1 << self.m)).then_some(Gf2mElem(v as u16))
    }

    fn fmt_elem(&self, a: &Gf2mElem) -> String {
        F2Poly::from_u64(a.0 as u64).fmt_with("l")
    }

    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> Gf2mElem {
        Gf2mElem(rng.gen_range(0..(1u32 << self.m)) as u16)
    }

    fn frobenius_pow(&self, a: &Gf2mElem, n: u32) -> Gf2mElem {
        let mut r = *a;
        for _ in 0..(n % self.m) {
            r = self.square(&r);
        }
        r
    }

    fn axpy(&self, dst: &mut [Gf2mElem], factor: &Gf2mElem, src: &[Gf2mElem]) {
        match (factor.0, &self.table) {
            (0, _) => {}
            (1, _) => {
                for (d, s) in dst.iter_mut().zip(src) {
                    d.0 ^= s.0;
                }
            }
            (f, Some(t)) => {
                let row = &t[(f as usize) << self.m..((f as usize) + 1) << self.m];
                for (d, s) in dst.iter_mut().zip(src) {
                    d.0 ^= row[s.0 as usize];
                }
            }
            (f, None) => {
                for (d, s) in dst.iter_mut().zip(src) {
                    if s.0 != 0 {
                        d.0 ^= self.clmul_reduce(f, s.0);
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_satisfies_minpoly() {
        for minpoly in [vec![1u8, 1, 1], vec![1, 1, 0, 1], vec![1, 0, 1, 0, 0, 1]] {
            let f = Gf2m::new(&minpoly).unwrap();
            let lambda = f.generator();
            let mut acc = f.zero();
            for (i, &c) in minpoly.iter().enumerate() {
                if c == 1 {
                    acc = f.add(&acc, &f.pow(&lambda, i as u64));
                }
            }
            assert!(f.is_zero(&acc));
            assert_eq!(f.frobenius_pow(&lambda, f.degree()), lambda);
            assert_eq!(f.pow(&lambda, f.order()), lambda);
        }
    }

    #[test]
    fn table_and_clmul_agree() {
        let f = Gf2m::new(&[1, 1, 0, 1, 1, 0, 0, 0, 1]).unwrap();
        for a in 0..256u16 {
            for b in (0..256u16).step_by(7) {
                assert_eq!(f.mul_raw(a, b), f.clmul_reduce(a, b));
            }
        }
    }

    #[test]
    fn inverses() {
        let f = Gf2m::new(&super::super::first_irreducible(11)).unwrap();
        assert!(f.table.is_none());
        for a in 1..300u16 {
            let inv = f.inv(&Gf2mElem(a)).unwrap();
            assert!(f.is_one(&f.mul(&Gf2mElem(a), &inv)));
        }
        assert!(f.inv(&Gf2mElem(0)).is_none());
    }

    #[test]
    fn squaring_is_additive_example() {
        // (λ + λ²)² = λ² + λ⁴
        let f = Gf2m::new(&[1, 1, 0, 1]).unwrap();
        let l = f.generator();
        let a = f.add(&l, &f.square(&l));
        let expected = f.add(&f.square(&l), &f.pow(&l, 4));
        assert_eq!(f.frobenius_pow(&a, 1), expected);
    }

    #[test]
    fn hex_codec() {
        let f = Gf2m::new(&[1, 0, 1, 0, 0, 1]).unwrap();
        for a in 0..32u16 {
            let e = Gf2mElem(a);
            assert_eq!(f.decode_hex(&f.encode_hex(&e)), Some(e));
        }
        assert_eq!(f.decode_hex("20"), None);
    }
}
