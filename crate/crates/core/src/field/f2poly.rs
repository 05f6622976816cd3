//! Univariate polynomials over F2, bit-packed into 64-bit words.

use std::cmp::Ordering;
use std::fmt;

/// A polynomial over F2. Bit `i` of the packed words is the coefficient of `t^i`.
///
/// The word vector never has a trailing zero word, so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct F2Poly {
    words: Vec<u64>,
}

impl F2Poly {
    pub fn zero() -> Self {
        Self { words: Vec::new() }
    }

    pub fn one() -> Self {
        Self { words: vec![1] }
    }

    /// `t^n`
    pub fn monomial(n: usize) -> Self {
        let mut p = Self { words: vec![0; n / 64 + 1] };
        p.words[n / 64] = 1 << (n % 64);
        p
    }

    /// Builds from a coefficient list, lowest degree first. Nonzero entries count as 1.
    pub fn from_coeffs(coeffs: &[u8]) -> Self {
        let mut p = Self { words: vec![0; coeffs.len() / 64 + 1] };
        for (i, &c) in coeffs.iter().enumerate() {
            if c & 1 == 1 {
                p.words[i / 64] |= 1 << (i % 64);
            }
        }
        p.normalize();
        p
    }

    pub fn from_u64(bits: u64) -> Self {
        let mut p = Self { words: vec![bits] };
        p.normalize();
        p
    }

    /// Low 64 coefficients; exact when `degree() < 64`.
    pub fn low_word(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    fn normalize(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words.len() == 1 && self.words[0] == 1
    }

    pub fn degree(&self) -> Option<usize> {
        let last = *self.words.last()?;
        Some((self.words.len() - 1) * 64 + 63 - last.leading_zeros() as usize)
    }

    pub fn bit(&self, i: usize) -> bool {
        self.words.get(i / 64).is_some_and(|w| (w >> (i % 64)) & 1 == 1)
    }

    pub fn coeffs(&self) -> Vec<u8> {
        match self.degree() {
            None => Vec::new(),
            Some(d) => (0..=d).map(|i| self.bit(i) as u8).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (w, s) in words.iter_mut().zip(&short.words) {
            *w ^= s;
        }
        let mut p = Self { words };
        p.normalize();
        p
    }

    /// `self ^= other << shift`, without normalizing.
    fn xor_shifted(&mut self, other: &Self, shift: usize) {
        if other.is_zero() {
            return;
        }
        let word_shift = shift / 64;
        let bit_shift = shift % 64;
        let needed = other.words.len() + word_shift + 1;
        if self.words.len() < needed {
            self.words.resize(needed, 0);
        }
        if bit_shift == 0 {
            for (i, &w) in other.words.iter().enumerate() {
                self.words[i + word_shift] ^= w;
            }
        } else {
            for (i, &w) in other.words.iter().enumerate() {
                self.words[i + word_shift] ^= w << bit_shift;
                self.words[i + word_shift + 1] ^= w >> (64 - bit_shift);
            }
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (a, b) = if self.words.len() <= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Self {
            words: vec![0; a.words.len() + b.words.len() + 1],
        };
        for (wi, &w) in a.words.iter().enumerate() {
            let mut bits = w;
            while bits != 0 {
                let tz = bits.trailing_zeros() as usize;
                acc.xor_shifted(b, wi * 64 + tz);
                bits &= bits - 1;
            }
        }
        acc.normalize();
        acc
    }

    pub fn square(&self) -> Self {
        let mut words = vec![0u64; self.words.len() * 2];
        for (i, &w) in self.words.iter().enumerate() {
            words[2 * i] = spread_bits(w as u32);
            words[2 * i + 1] = spread_bits((w >> 32) as u32);
        }
        let mut p = Self { words };
        p.normalize();
        p
    }

    /// Quotient and remainder. Panics on division by zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let shift = rd - dd;
            rem.xor_shifted(divisor, shift);
            rem.normalize();
            quot.xor_shifted(&Self::one(), shift);
        }
        quot.normalize();
        (quot, rem)
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }

    /// Horner evaluation into any structure with 0, 1, add and mul.
    pub fn eval_with<T: Clone>(
        &self,
        point: &T,
        zero: T,
        one: T,
        add: impl Fn(&T, &T) -> T,
        mul: impl Fn(&T, &T) -> T,
    ) -> T {
        let Some(d) = self.degree() else { return zero };
        let mut acc = zero;
        for i in (0..=d).rev() {
            acc = mul(&acc, point);
            if self.bit(i) {
                acc = add(&acc, &one);
            }
        }
        acc
    }

    /// Irreducibility over F2 by trial division with every polynomial of degree `1..=deg/2`.
    pub fn is_irreducible(&self) -> bool {
        let Some(d) = self.degree() else { return false };
        if d == 0 {
            return false;
        }
        let max = d / 2;
        for dd in 1..=max {
            for low in 0u64..(1u64 << dd) {
                let cand = Self::from_u64((1u64 << dd) | low);
                if self.rem(&cand).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn to_hex(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, w) in self.words.iter().rev().enumerate() {
            if i == 0 {
                s.push_str(&format!("{w:x}"));
            } else {
                s.push_str(&format!("{w:016x}"));
            }
        }
        s
    }

    pub fn from_hex(s: &str) -> Option<Self> {
        let s = s.trim();
        if s.is_empty() || !s.chars().all(|c| c.is_ascii_hexdigit()) {
            return None;
        }
        let mut words = Vec::new();
        let bytes = s.as_bytes();
        let mut end = bytes.len();
        while end > 0 {
            let start = end.saturating_sub(16);
            let chunk = std::str::from_utf8(&bytes[start..end]).ok()?;
            words.push(u64::from_str_radix(chunk, 16).ok()?);
            end = start;
        }
        let mut p = Self { words };
        p.normalize();
        Some(p)
    }

    /// Renders as e.g. `a^3+a+1` with the given variable name.
    pub fn fmt_with(&self, var: &str) -> String {
        let Some(d) = self.degree() else { return "0".to_string() };
        let mut parts = Vec::new();
        for i in (0..=d).rev() {
            if self.bit(i) {
                parts.push(match i {
                    0 => "1".to_string(),
                    1 => var.to_string(),
                    _ => format!("{var}^{i}"),
                });
            }
        }
        parts.join("+")
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }
}

impl PartialOrd for F2Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for F2Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.words
            .len()
            .cmp(&other.words.len())
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl fmt::Debug for F2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Poly({})", self.fmt_with("t"))
    }
}

/// Interleaves zero bits: bit `i` of the input lands at bit `2i`.
fn spread_bits(x: u32) -> u64 {
    let mut v = x as u64;
    v = (v | (v << 16)) & 0x0000_FFFF_0000_FFFF;
    v = (v | (v << 8)) & 0x00FF_00FF_00FF_00FF;
    v = (v | (v << 4)) & 0x0F0F_0F0F_0F0F_0F0F;
    v = (v | (v << 2)) & 0x3333_3333_3333_3333;
    v = (v | (v << 1)) & 0x5555_5555_5555_5555;
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_matches_mul() {
        let p = F2Poly::from_coeffs(&[1, 0, 1, 1, 0, 0, 1, 1, 1]);
        assert_eq!(p.square(), p.mul(&p));
        let big = F2Poly::monomial(70).add(&F2Poly::monomial(3));
        assert_eq!(big.square(), big.mul(&big));
        assert_eq!(big.square().degree(), Some(140));
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = F2Poly::monomial(130).add(&F2Poly::from_coeffs(&[1, 1, 0, 1]));
        let b = F2Poly::from_coeffs(&[1, 0, 1, 1, 1]);
        let (q, r) = a.div_rem(&b);
        assert!(r.degree().unwrap_or(0) < 4);
        assert_eq!(q.mul(&b).add(&r), a);
    }

    #[test]
    fn irreducibility_small_cases() {
        assert!(F2Poly::from_coeffs(&[1, 1, 1]).is_irreducible());
        assert!(!F2Poly::from_coeffs(&[1, 0, 1]).is_irreducible());
        assert!(F2Poly::from_coeffs(&[1, 1, 0, 1]).is_irreducible());
        assert!(F2Poly::from_coeffs(&[1, 1, 0, 0, 1]).is_irreducible());
        // (t^2+t+1)^2
        assert!(!F2Poly::from_coeffs(&[1, 0, 1, 0, 1]).is_irreducible());
        assert!(F2Poly::from_coeffs(&[0, 1]).is_irreducible());
    }

    #[test]
    fn hex_round_trip() {
        let p = F2Poly::monomial(100).add(&F2Poly::from_u64(0xdead_beef));
        assert_eq!(F2Poly::from_hex(&p.to_hex()), Some(p));
        assert_eq!(F2Poly::from_hex("0"), Some(F2Poly::zero()));
    }

    #[test]
    fn gcd_of_products() {
        let a = F2Poly::from_coeffs(&[1, 1, 1]);
        let b = F2Poly::from_coeffs(&[1, 1, 0, 1]);
        let c = F2Poly::from_coeffs(&[1, 1]);
        assert_eq!(a.mul(&c).gcd(&b.mul(&c)), c);
    }
}
