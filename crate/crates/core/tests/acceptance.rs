//! Acceptance gate: one line per criterion, exit status 1 if any fails.
//! All checks are exact; the only tolerances are the wall-clock limits below.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tightcheck_core::field::{alpha_of_lambda, first_irreducible, random_irreducible};
use tightcheck_core::h2::{contradiction_replay, H2};
use tightcheck_core::kernel_lab::{det_induced, Lab, Route, Space};
use tightcheck_core::poly::{parse_poly, verify_p_identities, Monomial};
use tightcheck_core::rings::QuotientRing;
use tightcheck_core::special_matrix::{
    counterexample_certificate, random_special, ranks_by, verify_certificate, verify_induced_is_special, AugmentedRanks,
    RankMethod,
};
use tightcheck_core::testelem::verify_subring_membership;
use tightcheck_core::{properties, Field, Gf2m, Poly, RatFunc, F2};

const SEED: u64 = 0x5eed;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn checks_ok(checks: &[tightcheck_core::Check]) -> Result<(), String> {
    match checks.iter().find(|c| !c.passed) {
        None => Ok(()),
        Some(c) => Err(format!("{}: {}", c.name, c.detail)),
    }
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

fn c1() -> Outcome {
    for q in [1, 2, 4, 8, 16, 32] {
        let r = verify_p_identities(&F2, q).map_err(e)?;
        checks_ok(&r.checks)?;
    }
    Ok("Q ∈ {1,2,4,8,16,32}".into())
}

fn c2() -> Outcome {
    for q in [2u64, 4, 8, 16] {
        let o = QuotientRing::trunc_o(&F2, q).map_err(e)?;
        let d = q as u32;
        ensure(o.dim(6 * d - 5) == (12 * q * q - 12) as usize, || format!("dim O_(6Q-5) at Q={q}"))?;
        ensure(o.dim(6 * d - 1) == (12 * q * q) as usize, || format!("dim O_(6Q-1) at Q={q}"))?;
        let lab = Lab::new(&F2, q, &true).map_err(e)?;
        let half = (3 * q * q / 2) as usize;
        ensure(lab.basis_of(Space::X).map_err(e)?.len() == half, || format!("dim X at Q={q}"))?;
        ensure(lab.basis_of(Space::Y).map_err(e)?.len() == half, || format!("dim Y at Q={q}"))?;
    }
    Ok("Q ∈ {2,4,8,16}".into())
}

fn c3() -> Outcome {
    let rf = RatFunc::new("α");
    let a = rf.indeterminate();
    for q in [2u64, 4, 8] {
        let lab = Lab::new(&rf, q, &a).map_err(e)?;
        let same = lab.induced_matrix(Route::Formula).map_err(e)?.same_as(&lab.induced_matrix(Route::Composite).map_err(e)?);
        ensure(same, || format!("F2(α), Q={q}"))?;
        let m = q.trailing_zeros() + 1;
        let gf = Gf2m::new(&first_irreducible(m)).map_err(e)?;
        let (alpha, q2) = alpha_of_lambda(&gf);
        ensure(q2 == q, || format!("Q mismatch for m={m}"))?;
        let lab = Lab::new(&gf, q, &alpha).map_err(e)?;
        let same = lab.induced_matrix(Route::Formula).map_err(e)?.same_as(&lab.induced_matrix(Route::Composite).map_err(e)?);
        ensure(same, || format!("GF(2^{m}), Q={q}"))?;
    }
    Ok("Q ∈ {2,4,8}, F2(α) and GF(2^(log Q + 1))".into())
}

fn c4() -> Outcome {
    let rf = RatFunc::new("α");
    let a = rf.indeterminate();
    for q in [2u64, 4] {
        let lab = Lab::new(&rf, q, &a).map_err(e)?;
        ensure(lab.kernel_n().map_err(e)?.is_empty(), || format!("N nonzero at Q={q}"))?;
    }
    for q in [2u64, 4, 8] {
        let r = det_induced(q).map_err(e)?;
        ensure(r.passed(), || format!("determinant at Q={q}: {r:?}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let random = loop {
        let mut p = Poly::zero(&rf);
        for x in 0..=6 {
            for y in 0..=6 - x {
                if rng.gen_bool(0.5) {
                    p.add_term(Monomial::new(x, y, 6 - x - y), &rf.random_elem(&mut rng));
                }
            }
        }
        if !p.is_zero() {
            break p;
        }
    };
    let lab = Lab::new(&rf, 2, &a).map_err(e)?;
    for f6 in [parse_poly(&rf, &a, "y^3*z^3").map_err(e)?, parse_poly(&rf, &a, "x^6").map_err(e)?, random] {
        let r = lab.colon_membership(&f6).map_err(e)?;
        ensure(r.member && r.duality_consistent(), || format!("colon membership fails for {f6}"))?;
    }
    Ok("empty kernels Q ∈ {2,4}; det degrees Q ∈ {2,4,8}; 3 colon memberships".into())
}

fn c5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for q in [2u64, 4, 8, 16, 32, 64] {
        for _ in 0..50 {
            let m = rng.gen_range(2..=16);
            let gf = Gf2m::new(&random_irreducible(m, &mut rng)).map_err(e)?;
            let mat = random_special(&gf, q, &mut rng).to_matrix(&gf).map_err(e)?;
            let want = AugmentedRanks { m: q as usize - 2, m_b: q as usize - 1, m_b_bstar: q as usize };
            let d = ranks_by(&mat, RankMethod::Direct).map_err(e)?;
            let r = ranks_by(&mat, RankMethod::Recursive).map_err(e)?;
            ensure(d == want && r == want, || format!("Q={q}, m={m}: direct {d:?}, recursive {r:?}"))?;
        }
    }
    Ok("50 profiles per Q ∈ {2,...,64}".into())
}

fn c6() -> Outcome {
    let mut detail = Vec::new();
    for m in [2u32, 3, 4, 5] {
        let start = Instant::now();
        let gf = Gf2m::new(&first_irreducible(m)).map_err(e)?;
        checks_ok(&verify_induced_is_special(&gf).map_err(e)?)?;
        let cert = counterexample_certificate(&gf, None).map_err(e)?;
        ensure(cert.non_member_by_elimination, || format!("m={m}: elimination disagrees"))?;
        checks_ok(&verify_certificate(&cert).map_err(e)?)?;
        detail.push(format!("m={m} {:.1}s", start.elapsed().as_secs_f64()));
    }
    Ok(detail.join(", "))
}

fn c7() -> Outcome {
    let rf = RatFunc::new("α");
    let a = rf.indeterminate();
    let t = QuotientRing::curve_t(&rf, &a, 2).map_err(e)?;
    for i in 0..=t.top_degree() {
        let r = t.pairing_check(i, None).map_err(e)?;
        ensure(r.passed(), || format!("T pairing at degree {i}"))?;
    }
    let h = H2::new(&rf, &a);
    let cubic = parse_poly(&rf, &a, "x^3 + y^3").map_err(e)?;
    let img = |i, j, k| -> Result<_, String> {
        Ok(h.module_action(&cubic, &h.frobenius(&h.basis_term(i, j, k, rf.one()).map_err(e)?, 3)))
    };
    let a2a = rf.add(&rf.square(&a), &a);
    let want = h.add(&h.basis_term(4, 1, 0, a2a.clone()).map_err(e)?, &h.basis_term(1, 4, 0, a2a).map_err(e)?);
    ensure(img(1, 1, 1)? == want, || "image of z/xy".into())?;
    ensure(img(2, 1, 2)? == h.basis_term(2, 3, 0, a.clone()).map_err(e)?, || "image of z²/x²y".into())?;
    ensure(img(1, 2, 2)? == h.basis_term(3, 2, 0, a.clone()).map_err(e)?, || "image of z²/xy²".into())?;
    ensure(h.semilinear_nonvanishing(3).map_err(e)?.rank == 6, || "generic rank".into())?;
    for mp in [first_irreducible(3), first_irreducible(4)] {
        let gf = Gf2m::new(&mp).map_err(e)?;
        for v in 2..(1u16 << gf.degree()) {
            let r = H2::new(&gf, &tightcheck_core::Gf2mElem(v)).semilinear_nonvanishing(3).map_err(e)?;
            ensure(r.rank == 6, || format!("rank {} at α = {v:#x} in GF(2^{})", r.rank, gf.degree()))?;
        }
    }
    let one = H2::new(&F2, &true);
    ensure(one.semilinear_nonvanishing(3).map_err(e)?.rank < 6, || "α = 1, n = 3".into())?;
    ensure(one.semilinear_nonvanishing(4).map_err(e)?.rank == 6, || "α = 1, n = 4".into())?;
    Ok("pairing, 3 formulas, ranks over GF(8), GF(16)".into())
}

fn c8() -> Outcome {
    for m in [2u32, 3] {
        let gf = Gf2m::new(&first_irreducible(m)).map_err(e)?;
        checks_ok(&contradiction_replay(&gf, None).map_err(e)?)?;
    }
    Ok("m ∈ {2,3}".into())
}

fn c9() -> Outcome {
    let gf = Gf2m::new(&[1, 1, 1]).map_err(e)?;
    let rf = RatFunc::new("α");
    for q in [1u64, 2, 4] {
        for j in 0..=3 {
            ensure(verify_subring_membership(&gf, &gf.generator(), q, j).map_err(e)?.member(), || {
                format!("GF(4), q={q}, j={j}")
            })?;
            ensure(verify_subring_membership(&rf, &rf.indeterminate(), q, j).map_err(e)?.member(), || {
                format!("F2(α), q={q}, j={j}")
            })?;
        }
    }
    Ok("q ∈ {1,2,4}, j ∈ {0..3}".into())
}

fn c10() -> Outcome {
    let mut checks = properties::run_property_suite(SEED, 10_000).map_err(e)?;
    checks.extend(properties::certificate_reverification(&[2, 3, 4]).map_err(e)?);
    checks_ok(&checks)?;
    Ok(format!("{} property checks", checks.len()))
}

fn main() -> ExitCode {
    let criteria: [(u32, u64, fn() -> Outcome); 10] = [
        (1, 2, c1),
        (2, 60, c2),
        (3, 30, c3),
        (4, 120, c4),
        (5, 60, c5),
        (6, 600, c6),
        (7, 60, c7),
        (8, 120, c8),
        (9, 30, c9),
        (10, 300, c10),
    ];
    let mut failed = 0;
    for (n, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(limit);
        let (ok, detail) = match outcome {
            Ok(d) if in_time => (true, d),
            Ok(d) => (false, format!("{d}; exceeded {limit}s")),
            Err(d) => (false, d),
        };
        failed += usize::from(!ok);
        println!(
            "[{}] criterion {n}: {detail} ({:.2}s / {limit}s)",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
