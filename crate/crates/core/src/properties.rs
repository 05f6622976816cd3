//! Randomized audits runnable outside the test harness.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::check::Check;
use crate::error::Result;
use crate::exactla::{Matrix, Plu};
use crate::field::{random_irreducible, Field, Gf2m, RatFunc, F2};
use crate::special_matrix::{counterexample_certificate, verify_certificate};

/// Field axioms on `samples` random triples; the first failing triple is reported.
pub fn field_axioms<F: Field, R: Rng + ?Sized>(field: &F, samples: usize, rng: &mut R) -> Check {
    let f = field;
    let mut failure = None;
    for n in 0..samples {
        let (a, b, c) = (f.random_elem(rng), f.random_elem(rng), f.random_elem(rng));
        let bad = if f.add(&a, &b) != f.add(&b, &a) || f.mul(&a, &b) != f.mul(&b, &a) {
            Some("commutativity")
        } else if f.add(&f.add(&a, &b), &c) != f.add(&a, &f.add(&b, &c))
            || f.mul(&f.mul(&a, &b), &c) != f.mul(&a, &f.mul(&b, &c))
        {
            Some("associativity")
        } else if f.mul(&a, &f.add(&b, &c)) != f.add(&f.mul(&a, &b), &f.mul(&a, &c)) {
            Some("distributivity")
        } else if f.add(&a, &f.zero()) != a || f.mul(&a, &f.one()) != a || !f.is_zero(&f.add(&a, &a)) {
            Some("identities and characteristic 2")
        } else if f.square(&f.add(&a, &b)) != f.add(&f.square(&a), &f.square(&b)) {
            Some("additivity of squaring")
        } else if f.is_zero(&a) != f.inv(&a).is_none()
            || f.inv(&a).is_some_and(|i| !f.is_one(&f.mul(&a, &i)))
        {
            Some("inverses")
        } else if f.decode_hex(&f.encode_hex(&a)).as_ref() != Some(&a) {
            Some("hex round trip")
        } else {
            None
        };
        if let Some(what) = bad {
            failure = Some(format!("{what} fails at sample {n}: a = {}, b = {}, c = {}", f.fmt_elem(&a), f.fmt_elem(&b), f.fmt_elem(&c)));
            break;
        }
    }
    Check::new(
        format!("field-axioms/{}", f.spec()),
        "field axioms hold in characteristic 2",
        failure.is_none(),
        failure.unwrap_or_else(|| format!("{samples} samples")),
    )
}

/// Random low-rank products `A·B`: rank plus nullity equals the column count,
/// kernel vectors are annihilated, and the PLU factorization agrees.
pub fn rank_nullity_audit<F: Field, R: Rng + ?Sized>(field: &F, trials: usize, rng: &mut R) -> Check {
    let f = field;
    let mut failure = None;
    for n in 0..trials {
        let (r, c, k) = (rng.gen_range(0..12), rng.gen_range(0..12), rng.gen_range(0..8));
        let a = Matrix::from_fn(f, r, k, |_, _| f.random_elem(rng));
        let b = Matrix::from_fn(f, k, c, |_, _| f.random_elem(rng));
        let m = a.mul(&b).expect("conformable");
        let rank = m.rank();
        let kernel = m.kernel_basis();
        let plu = Plu::new(&m);
        let annihilated = kernel.iter().all(|v| m.mul_vec(v).expect("length").iter().all(|e| f.is_zero(e)));
        if rank + kernel.len() != c || !annihilated || plu.rank() != rank || !plu.reconstructs(&m) || rank > k {
            failure = Some(format!("trial {n}: {r}x{c}, inner {k}, rank {rank}, nullity {}", kernel.len()));
            break;
        }
    }
    Check::new(
        format!("rank-nullity/{}", f.spec()),
        "rank + nullity = columns, with kernel vectors and PLU re-verified",
        failure.is_none(),
        failure.unwrap_or_else(|| format!("{trials} trials")),
    )
}

/// Field axioms on `F2`, `F2(α)` and random `GF(2^m)`, then rank–nullity audits.
pub fn run_property_suite(seed: u64, samples: usize) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = vec![field_axioms(&F2, samples, &mut rng), rank_nullity_audit(&F2, 200, &mut rng)];
    for m in [2, 3, 5, 8, 11, 16] {
        let gf = Gf2m::new(&random_irreducible(m, &mut rng))?;
        checks.push(field_axioms(&gf, samples, &mut rng));
        checks.push(rank_nullity_audit(&gf, 100, &mut rng));
    }
    let rf = RatFunc::new("a");
    checks.push(field_axioms(&rf, samples, &mut rng));
    checks.push(rank_nullity_audit(&rf, 30, &mut rng));
    Ok(checks)
}

/// Builds the certificate for each degree and re-checks it by multiplication.
pub fn certificate_reverification(ms: &[u32]) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for &m in ms {
        let gf = Gf2m::new(&crate::field::first_irreducible(m))?;
        let cert = counterexample_certificate(&gf, None)?;
        checks.extend(verify_certificate(&cert)?);
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes_small() {
        for c in run_property_suite(11, 500).unwrap() {
            assert!(c.passed, "{c:?}");
        }
        for c in certificate_reverification(&[2, 3]).unwrap() {
            assert!(c.passed, "{c:?}");
        }
    }

    /// `GF(8)` with multiplication perturbed on one product.
    #[derive(Debug, Clone)]
    struct Broken(Gf2m);

    impl Field for Broken {
        type Elem = crate::field::Gf2mElem;
        fn zero(&self) -> Self::Elem {
            self.0.zero()
        }
        fn one(&self) -> Self::Elem {
            self.0.one()
        }
        fn is_zero(&self, a: &Self::Elem) -> bool {
            self.0.is_zero(a)
        }
        fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
            self.0.add(a, b)
        }
        fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
            let p = self.0.mul(a, b);
            if a.0 == 3 && b.0 == 3 {
                self.0.add(&p, &self.0.one())
            } else {
                p
            }
        }
        fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
            self.0.inv(a)
        }
        fn spec(&self) -> crate::field::FieldSpec {
            self.0.spec()
        }
        fn encode_hex(&self, a: &Self::Elem) -> String {
            self.0.encode_hex(a)
        }
        fn decode_hex(&self, s: &str) -> Option<Self::Elem> {
            self.0.decode_hex(s)
        }
        fn fmt_elem(&self, a: &Self::Elem) -> String {
            self.0.fmt_elem(a)
        }
        fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
            self.0.random_elem(rng)
        }
    }

    #[test]
    fn axioms_catch_a_broken_field() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let broken = Broken(Gf2m::new(&[1, 1, 0, 1]).unwrap());
        assert!(!field_axioms(&broken, 2000, &mut rng).passed);
    }
}
