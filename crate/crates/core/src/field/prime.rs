use rand::Rng;

use super::{Field, FieldSpec};

/// The prime field `Z/2`. Elements are `bool`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct F2;

impl Field for F2 {
    type Elem = bool;

    fn zero(&self) -> bool {
        false
    }

    fn one(&self) -> bool {
        true
    }

    fn is_zero(&self, a: &bool) -> bool {
        !*a
    }

    fn add(&self, a: &bool, b: &bool) -> bool {
        a ^ b
    }

    fn mul(&self, a: &bool, b: &bool) -> bool {
        a & b
    }

    fn inv(&self, a: &bool) -> Option<bool> {
        a.then_some(true)
    }

    fn spec(&self) -> FieldSpec {
        FieldSpec::F2
    }

    fn encode_hex(&self, a: &bool) -> String {
        if *a { "1" } else { "0" }.to_string()
    }

    fn decode_hex(&self, s: &str) -> Option<bool> {
        match s.trim() {
            "0" => Some(false),
            "1" => Some(true),
            _ => None,
        }
    }

    fn fmt_elem(&self, a: &bool) -> String {
        self.encode_hex(a)
    }

    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> bool {
        rng.gen()
    }

    fn as_bit(&self, a: &bool) -> Option<bool> {
        Some(*a)
    }

    fn is_prime_field(&self) -> bool {
        true
    }

    fn frobenius_pow(&self, a: &bool, _n: u32) -> bool {
        *a
    }

    fn axpy(&self, dst: &mut [bool], factor: &bool, src: &[bool]) {
        if *factor {
            for (d, s) in dst.iter_mut().zip(src) {
                *d ^= s;
            }
        }
    }
}
