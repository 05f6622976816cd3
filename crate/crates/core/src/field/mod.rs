//! Characteristic-2 coefficient fields.
//!
//! Three concrete fields implement [`Field`]: the prime field [`F2`], finite
//! extensions [`Gf2m`] presented by the minimal polynomial of a generator
//! `λ`, and the rational function field [`RatFunc`] over F2 in one
//! indeterminate. Every algorithm in this crate is generic over [`Field`] and
//! relies on characteristic 2: subtraction is addition.

pub mod f2poly;
mod gf2m;
mod prime;
mod ratfunc;

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

pub use f2poly::F2Poly;
pub use gf2m::{Gf2m, Gf2mElem};
pub use prime::F2;
pub use ratfunc::{RatElem, RatFunc};

use crate::error::{Error, Result};

/// Arithmetic in a field of characteristic 2.
///
/// Field handles are cheap to clone and immutable; elements are plain values.
pub trait Field: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn spec(&self) -> FieldSpec;

    /// Hex encoding used in certificates; [`Field::decode_hex`] inverts it.
    fn encode_hex(&self, a: &Self::Elem) -> String;
    fn decode_hex(&self, s: &str) -> Option<Self::Elem>;

    /// Human-readable rendering of a single element.
    fn fmt_elem(&self, a: &Self::Elem) -> String;

    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    /// Pivot preference during elimination: lower is better.
    fn pivot_weight(&self, _a: &Self::Elem) -> usize {
        0
    }

    /// Some(bit) exactly when this is the prime field; enables the bit-packed paths.
    fn as_bit(&self, _a: &Self::Elem) -> Option<bool> {
        None
    }

    fn is_prime_field(&self) -> bool {
        false
    }

    fn from_bit(&self, b: bool) -> Self::Elem {
        if b {
            self.one()
        } else {
            self.zero()
        }
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.add(a, b);
    }

    fn square(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(a, a)
    }

    /// `a^(2^n)`.
    fn frobenius_pow(&self, a: &Self::Elem, n: u32) -> Self::Elem {
        let mut r = a.clone();
        for _ in 0..n {
            r = self.square(&r);
        }
        r
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.square(&base);
            e >>= 1;
        }
        acc
    }

    /// `dst[i] += factor * src[i]` for every `i`.
    fn axpy(&self, dst: &mut [Self::Elem], factor: &Self::Elem, src: &[Self::Elem]) {
        for (d, s) in dst.iter_mut().zip(src) {
            if !self.is_zero(s) {
                let t = self.mul(factor, s);
                self.add_assign(d, &t);
            }
        }
    }

    /// `row[i] *= factor` for every `i`.
    fn scale_slice(&self, row: &mut [Self::Elem], factor: &Self::Elem) {
        for e in row.iter_mut() {
            if !self.is_zero(e) {
                *e = self.mul(e, factor);
            }
        }
    }
}

/// Description of a coefficient field, as accepted on the command line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldSpec {
    F2,
    /// Minimal polynomial of `λ` over F2, lowest degree first.
    Gf2m { minpoly: Vec<u8> },
    RatFunc { indeterminate: String },
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("f2") {
            return Ok(FieldSpec::F2);
        }
        if let Some(rest) = s.strip_prefix("gf2m:") {
            let minpoly = rest
                .split(',')
                .map(|t| match t.trim() {
                    "0" => Ok(0u8),
                    "1" => Ok(1u8),
                    other => Err(Error::Parse(format!(
                        "minimal polynomial coefficient {other:?} is not 0 or 1"
                    ))),
                })
                .collect::<Result<Vec<_>>>()?;
            return Ok(FieldSpec::Gf2m { minpoly });
        }
        if let Some(rest) = s.strip_prefix("ratfunc:") {
            let name = rest.trim();
            if name.is_empty() {
                return Err(Error::Parse("empty indeterminate name".into()));
            }
            return Ok(FieldSpec::RatFunc {
                indeterminate: name.to_string(),
            });
        }
        Err(Error::Parse(format!("unknown field spec {s:?}")))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::F2 => write!(f, "f2"),
            FieldSpec::Gf2m { minpoly } => {
                let parts: Vec<String> = minpoly.iter().map(|c| c.to_string()).collect();
                write!(f, "gf2m:{}", parts.join(","))
            }
            FieldSpec::RatFunc { indeterminate } => write!(f, "ratfunc:{indeterminate}"),
        }
    }
}

/// A constructed field of any supported kind.
#[derive(Debug, Clone)]
pub enum AnyField {
    F2(F2),
    Gf2m(Gf2m),
    RatFunc(RatFunc),
}

/// Validates a spec and builds the field. Rejects reducible or degree < 2 minimal polynomials.
pub fn make_field(spec: &FieldSpec) -> Result<AnyField> {
    Ok(match spec {
        FieldSpec::F2 => AnyField::F2(F2),
        FieldSpec::Gf2m { minpoly } => AnyField::Gf2m(Gf2m::new(minpoly)?),
        FieldSpec::RatFunc { indeterminate } => AnyField::RatFunc(RatFunc::new(indeterminate)),
    })
}

/// `α = λ² + λ` and `Q = 2^(m-1)` for the generator `λ` of `GF(2^m)`.
pub fn alpha_of_lambda(field: &Gf2m) -> (Gf2mElem, u64) {
    let lambda = field.generator();
    let alpha = field.add(&field.square(&lambda), &lambda);
    debug_assert!(!field.is_zero(&alpha));
    (alpha, 1u64 << (field.degree() - 1))
}

/// Smallest (as an integer bit pattern) irreducible polynomial of degree `m` over F2.
pub fn first_irreducible(m: u32) -> Vec<u8> {
    assert!((1..=31).contains(&m));
    for low in 0u64..(1u64 << m) {
        let p = F2Poly::from_u64((1u64 << m) | low);
        if p.is_irreducible() {
            return p.coeffs();
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Uniformly random irreducible polynomial of degree `m` (rejection sampling).
pub fn random_irreducible<R: Rng + ?Sized>(m: u32, rng: &mut R) -> Vec<u8> {
    assert!((1..=31).contains(&m));
    loop {
        let low: u64 = rng.gen_range(0..(1u64 << m));
        let p = F2Poly::from_u64((1u64 << m) | low);
        if p.is_irreducible() {
            return p.coeffs();
        }
    }
}

/// Hex-encodes a coefficient vector, comma separated.
pub fn encode_vector<F: Field>(field: &F, v: &[F::Elem]) -> String {
    let parts: Vec<String> = v.iter().map(|e| field.encode_hex(e)).collect();
    parts.join(",")
}

pub fn decode_vector<F: Field>(field: &F, s: &str) -> Option<Vec<F::Elem>> {
    if s.is_empty() {
        return Some(Vec::new());
    }
    s.split(',').map(|t| field.decode_hex(t)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_parsing() {
        assert_eq!("f2".parse::<FieldSpec>().unwrap(), FieldSpec::F2);
        assert_eq!(
            "gf2m:1,1,1".parse::<FieldSpec>().unwrap(),
            FieldSpec::Gf2m { minpoly: vec![1, 1, 1] }
        );
        assert_eq!(
            "ratfunc:α".parse::<FieldSpec>().unwrap(),
            FieldSpec::RatFunc { indeterminate: "α".into() }
        );
        assert!("gf2m:1,2".parse::<FieldSpec>().is_err());
        assert!("gf7".parse::<FieldSpec>().is_err());
        for s in ["f2", "gf2m:1,1,0,1", "ratfunc:α"] {
            assert_eq!(s.parse::<FieldSpec>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn make_field_validates() {
        assert!(matches!(
            make_field(&FieldSpec::Gf2m { minpoly: vec![1, 1, 1] }),
            Ok(AnyField::Gf2m(f)) if f.order() == 4
        ));
        assert!(make_field(&FieldSpec::Gf2m { minpoly: vec![1, 0, 1] }).is_err());
        assert!(make_field(&FieldSpec::Gf2m { minpoly: vec![1, 1] }).is_err());
        assert!(matches!(
            make_field(&FieldSpec::RatFunc { indeterminate: "α".into() }),
            Ok(AnyField::RatFunc(_))
        ));
    }

    #[test]
    fn alpha_and_q() {
        let gf4 = Gf2m::new(&[1, 1, 1]).unwrap();
        let (alpha, q) = alpha_of_lambda(&gf4);
        assert!(gf4.is_one(&alpha));
        assert_eq!(q, 2);

        // λ^3 + λ + 1: α = λ^2 + λ is the bit pattern 0b110.
        let gf8 = Gf2m::new(&[1, 1, 0, 1]).unwrap();
        let (alpha, q) = alpha_of_lambda(&gf8);
        assert_eq!(alpha, Gf2mElem(0b110));
        assert_eq!(q, 4);

        for m in 2..=10 {
            let f = Gf2m::new(&first_irreducible(m)).unwrap();
            let (alpha, q) = alpha_of_lambda(&f);
            assert!(!f.is_zero(&alpha));
            assert_eq!(q, 1 << (m - 1));
        }
    }

    #[test]
    fn first_irreducibles() {
        assert_eq!(first_irreducible(2), vec![1, 1, 1]);
        assert_eq!(first_irreducible(3), vec![1, 1, 0, 1]);
        assert_eq!(first_irreducible(4), vec![1, 1, 0, 0, 1]);
        assert_eq!(first_irreducible(5), vec![1, 0, 1, 0, 0, 1]);
    }
}
