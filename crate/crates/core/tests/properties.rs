use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tightcheck_core::exactla::{poly_det, Matrix};
use tightcheck_core::field::{decode_vector, encode_vector, first_irreducible, random_irreducible, F2Poly};
use tightcheck_core::h2::H2;
use tightcheck_core::poly::{g_alpha, parse_poly};
use tightcheck_core::rings::CurveReducer;
use tightcheck_core::special_matrix::{is_special, random_special, ranks_by, AugmentedRanks, RankMethod};
use tightcheck_core::{Error, Field, FieldSpec, Gf2m, Gf2mElem, Monomial, Poly, RatFunc, F2};

fn gf(m: u32, seed: u64) -> Gf2m {
    Gf2m::new(&random_irreducible(m, &mut ChaCha8Rng::seed_from_u64(seed))).unwrap()
}

fn gf_elem(f: &Gf2m, bits: u16) -> Gf2mElem {
    Gf2mElem(bits & ((f.order() - 1) as u16))
}

fn bits_matrix(rows: usize, cols: usize, bits: &[bool]) -> Matrix<F2> {
    Matrix::from_fn(&F2, rows, cols, |r, c| bits[(r * cols + c) % bits.len().max(1)])
}

fn poly_strategy(max_deg: u32) -> impl Strategy<Value = Vec<(u32, u32, u32, u8)>> {
    prop::collection::vec((0..=max_deg, 0..=max_deg, 0..=max_deg, 1u8..=255), 0..8)
}

fn to_poly(f: &Gf2m, terms: &[(u32, u32, u32, u8)]) -> Poly<Gf2m> {
    let mut p = Poly::zero(f);
    for &(x, y, z, c) in terms {
        p.add_term(Monomial::new(x, y, z), &gf_elem(f, c as u16));
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gf_field_laws(m in 2u32..=16, seed: u64, a: u16, b: u16, c: u16) {
        let f = gf(m, seed);
        let (a, b, c) = (gf_elem(&f, a), gf_elem(&f, b), gf_elem(&f, c));
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        prop_assert_eq!(f.frobenius_pow(&a, m), a);
        if !f.is_zero(&a) {
            prop_assert!(f.is_one(&f.mul(&a, &f.inv(&a).unwrap())));
            prop_assert!(f.is_one(&f.pow(&a, f.order() - 1)));
        }
    }

    #[test]
    fn f2poly_division(a: u64, b in 1u64..) {
        let (a, b) = (F2Poly::from_u64(a), F2Poly::from_u64(b));
        let (q, r) = a.div_rem(&b);
        prop_assert_eq!(q.mul(&b).add(&r), a.clone());
        prop_assert!(r.is_zero() || r.degree() < b.degree());
        let g = a.gcd(&b);
        prop_assert!(a.rem(&g).is_zero() && b.rem(&g).is_zero());
    }

    #[test]
    fn field_spec_round_trip(m in 2u32..=16) {
        for spec in [FieldSpec::F2, FieldSpec::Gf2m { minpoly: first_irreducible(m) }, FieldSpec::RatFunc { indeterminate: "t".into() }] {
            prop_assert_eq!(spec.to_string().parse::<FieldSpec>().unwrap(), spec);
        }
    }

    #[test]
    fn hex_vectors_round_trip(m in 2u32..=16, seed: u64, v in prop::collection::vec(any::<u16>(), 0..20)) {
        let f = gf(m, seed);
        let v: Vec<_> = v.into_iter().map(|x| gf_elem(&f, x)).collect();
        prop_assert_eq!(decode_vector(&f, &encode_vector(&f, &v)).unwrap(), v);
    }

    #[test]
    fn polynomial_ring_laws(seed: u64, a in poly_strategy(4), b in poly_strategy(4), c in poly_strategy(4), n in 0u32..3) {
        let f = gf(5, seed);
        let (a, b, c) = (to_poly(&f, &a), to_poly(&f, &b), to_poly(&f, &c));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.frobenius(n), a.pow(1 << n));
    }

    #[test]
    fn curve_reduction_kills_multiples_of_g(seed: u64, a in poly_strategy(5), alpha in 1u16..32) {
        let f = gf(5, seed);
        let alpha = gf_elem(&f, alpha);
        prop_assume!(!f.is_zero(&alpha));
        let red = CurveReducer::new(&f, &alpha, 24, 24);
        let p = to_poly(&f, &a);
        let r = red.reduce(&p);
        prop_assert!(r.z_degree().is_none_or(|d| d < 4));
        prop_assert_eq!(red.reduce(&r), r.clone());
        prop_assert!(red.reduce(&g_alpha(&f, &alpha).mul(&p)).is_zero());
    }

    #[test]
    fn f2_rank_nullity(rows in 0usize..40, cols in 0usize..40, bits in prop::collection::vec(any::<bool>(), 1..200)) {
        let m = bits_matrix(rows, cols, &bits);
        let k = m.kernel_basis();
        prop_assert_eq!(m.rank() + k.len(), cols);
        prop_assert_eq!(m.rank(), m.transpose().rank());
        for v in &k {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(|e| !e));
        }
        // Same matrix through the generic (non bit-packed) path.
        let g4 = Gf2m::new(&[1, 1, 1]).unwrap();
        let lifted = Matrix::from_fn(&g4, rows, cols, |r, c| g4.from_bit(*m.get(r, c)));
        prop_assert_eq!(lifted.rank(), m.rank());
    }

    #[test]
    fn solve_finds_preimages(seed: u64, rows in 1usize..10, cols in 1usize..10, x in prop::collection::vec(any::<u16>(), 10)) {
        let f = gf(7, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = Matrix::from_fn(&f, rows, cols, |_, _| f.random_elem(&mut rng));
        let x: Vec<_> = x[..cols].iter().map(|&b| gf_elem(&f, b)).collect();
        let y = m.mul_vec(&x).unwrap();
        let sol = m.in_image(&y).unwrap().expect("image vector");
        prop_assert_eq!(m.mul_vec(&sol).unwrap(), y);
    }

    #[test]
    fn determinant_commutes_with_evaluation(n in 1usize..6, entries in prop::collection::vec(0u64..64, 36), point in 2u16..2048) {
        let rows: Vec<Vec<F2Poly>> = (0..n).map(|r| (0..n).map(|c| F2Poly::from_u64(entries[r * 6 + c])).collect()).collect();
        let det = poly_det(&rows).unwrap();
        let target = Gf2m::new(&first_irreducible(11)).unwrap();
        let rf = RatFunc::new("t");
        let pt = Gf2mElem(point);
        let ev = |p: &F2Poly| rf.evaluate(&rf.from_poly(p.clone()), &target, &pt).unwrap();
        let m = Matrix::from_fn(&target, n, n, |r, c| ev(&rows[r][c]));
        // det ≠ 0 at the point iff the evaluated matrix has full rank.
        prop_assert_eq!(target.is_zero(&ev(&det)), m.rank() < n);
    }

    #[test]
    fn random_special_profiles(qexp in 1u32..=6, m in 2u32..=16, seed: u64) {
        let q = 1u64 << qexp;
        let f = gf(m, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabc);
        let p = random_special(&f, q, &mut rng);
        let mat = p.to_matrix(&f).unwrap();
        prop_assert_eq!(is_special(&mat).unwrap(), p);
        let want = AugmentedRanks { m: q as usize - 2, m_b: q as usize - 1, m_b_bstar: q as usize };
        prop_assert_eq!(ranks_by(&mat, RankMethod::Direct).unwrap(), want);
        prop_assert_eq!(ranks_by(&mat, RankMethod::Recursive).unwrap(), want);
    }

    #[test]
    fn zeroed_pattern_entry_is_reported(qexp in 2u32..=6, seed: u64, pick: usize) {
        let q = 1u64 << qexp;
        let f = gf(6, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut mat = random_special(&f, q, &mut rng).to_matrix(&f).unwrap();
        let slots: Vec<(usize, usize)> = (0..q as usize)
            .flat_map(|i| (0..q as usize).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j && (i as i64 - j as i64) % 3 == 0)
            .collect();
        let (i, j) = slots[pick % slots.len()];
        mat.set(i, j, f.zero());
        match is_special(&mat) {
            Err(Error::NotSpecial { i: ri, j: rj, .. }) => prop_assert_eq!((ri, rj), (i + 1, j + 1)),
            other => prop_assert!(false, "{:?}", other),
        }
    }

    #[test]
    fn h2_representation_independent(k in 0u32..4, s in 0u32..4, t in 0u32..4, a in 1u32..6, b in 1u32..6, c in 0u32..4, d in 0u32..4) {
        let f = RatFunc::new("a");
        let alpha = f.indeterminate();
        let h = H2::new(&f, &alpha);
        let w = Poly::mono(&f, s, t, k).add(&Poly::mono(&f, 0, 0, k + 3));
        let shifted = w.mul_monomial(&Monomial::new(c, d, 0));
        prop_assert_eq!(h.reduce_fraction(&shifted, a + c, b + d), h.reduce_fraction(&w, a, b));
    }

    #[test]
    fn frobenius_is_semilinear(seed: u64, u in prop::collection::vec((1u32..4, 1u32..4, 0u32..4, 1u16..256), 0..5),
                               v in prop::collection::vec((1u32..4, 1u32..4, 0u32..4, 1u16..256), 0..5), s: u16, n in 1u32..4) {
        let f = gf(8, seed);
        let alpha = gf_elem(&f, (seed as u16) | 2);
        let h = H2::new(&f, &alpha);
        let build = |terms: &[(u32, u32, u32, u16)]| terms.iter().fold(tightcheck_core::h2::H2Element::zero(), |acc, &(i, j, k, c)| {
            h.add(&acc, &h.basis_term(i, j, k, gf_elem(&f, c)).unwrap())
        });
        let (u, v) = (build(&u), build(&v));
        let s = gf_elem(&f, s);
        prop_assert_eq!(h.frobenius(&h.add(&u, &v), n), h.add(&h.frobenius(&u, n), &h.frobenius(&v, n)));
        prop_assert_eq!(h.frobenius(&h.scale(&u, &s), n), h.scale(&h.frobenius(&u, n), &f.frobenius_pow(&s, n)));
    }
}

#[test]
fn frobenius_doubles_degree_on_basis_elements() {
    let f = RatFunc::new("a");
    let alpha = f.indeterminate();
    let h = H2::new(&f, &alpha);
    for d in [-1i64, -2, -3] {
        for (i, j, k) in h.graded_basis(d) {
            let u = h.basis_term(i, j, k, f.one()).unwrap();
            let img = h.frobenius(&u, 1);
            assert!(img.is_zero() || img.degree() == Some(2 * d), "{:?}", (i, j, k));
        }
    }
}

#[test]
fn z_support_of_p_powers() {
    use tightcheck_core::field::alpha_of_lambda;
    use tightcheck_core::kernel_lab::Lab;
    for m in 2..=5 {
        let g = Gf2m::new(&first_irreducible(m)).unwrap();
        let (alpha, q) = alpha_of_lambda(&g);
        assert!(Lab::new(&g, q, &alpha).unwrap().z_support_check().unwrap().passed, "m={m}");
    }
}

#[test]
fn parse_matches_named_polynomial() {
    let f = RatFunc::new("a");
    let alpha = f.indeterminate();
    assert_eq!(parse_poly(&f, &alpha, "z^4 + x*y*z^2 + x^3*z + y^3*z + a*x^2*y^2").unwrap(), g_alpha(&f, &alpha));
}
