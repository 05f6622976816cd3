//! Turns a [`RunConfig`] into independent jobs, runs them on a worker pool
//! and assembles the report.

// `with_field!` expands one body for every field type; some of them are `Copy`.
#![allow(clippy::clone_on_copy)]

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use tightcheck_core::field::{alpha_of_lambda, first_irreducible, make_field, random_irreducible};
use tightcheck_core::h2::{contradiction_replay, SemilinearReport, H2};
use tightcheck_core::kernel_lab::{det_induced, Lab, Route};
use tightcheck_core::poly::{parse_poly, verify_p_identities};
use tightcheck_core::rings::QuotientRing;
use tightcheck_core::special_matrix::{
    b_structure_check, counterexample_certificate, random_special, ranks_by, verify_certificate,
    verify_induced_is_special, AugmentedRanks, CounterexampleCertificate, RankMethod,
};
use tightcheck_core::testelem::membership_checks;
use tightcheck_core::{properties, AnyField, Check, Error, Field, FieldSpec, Gf2m, Poly, RatFunc, Result, F2};

use crate::config::{Command, RunConfig};
use crate::report::{CheckRecord, Report};

/// Everything one job contributes to the report.
#[derive(Debug, Default)]
pub struct Output {
    pub checks: Vec<Check>,
    pub certificates: Vec<CounterexampleCertificate>,
    pub semilinear: Vec<SemilinearReport>,
}

impl From<Vec<Check>> for Output {
    fn from(checks: Vec<Check>) -> Self {
        Output { checks, ..Default::default() }
    }
}

type Job = Box<dyn FnOnce() -> Result<Output> + Send>;

pub struct Task {
    pub name: String,
    job: Job,
}

fn task(name: impl Into<String>, job: impl FnOnce() -> Result<Output> + Send + 'static) -> Task {
    Task { name: name.into(), job: Box::new(job) }
}

/// Default `α` for a field: 1 in F2, `λ² + λ` in `GF(2^m)`, the indeterminate in `F2(t)`.
pub trait SuiteField: Field {
    fn default_alpha(&self) -> Self::Elem;

    fn transcendental(&self) -> bool {
        false
    }
}

impl SuiteField for F2 {
    fn default_alpha(&self) -> bool {
        true
    }
}

impl SuiteField for Gf2m {
    fn default_alpha(&self) -> Self::Elem {
        alpha_of_lambda(self).0
    }
}

impl SuiteField for RatFunc {
    fn default_alpha(&self) -> Self::Elem {
        self.indeterminate()
    }

    fn transcendental(&self) -> bool {
        true
    }
}

macro_rules! with_field {
    ($any:expr, $f:ident => $body:expr) => {
        match $any {
            AnyField::F2($f) => $body,
            AnyField::Gf2m($f) => $body,
            AnyField::RatFunc($f) => $body,
        }
    };
}

fn field_from(spec: Option<&str>, default: &str) -> Result<AnyField> {
    make_field(&spec.unwrap_or(default).parse::<FieldSpec>()?)
}

fn alpha_for<F: SuiteField>(f: &F, cfg: &RunConfig) -> Result<F::Elem> {
    match &cfg.alpha {
        None => Ok(f.default_alpha()),
        Some(h) => f.decode_hex(h).ok_or_else(|| Error::Parse(format!("α {h:?} is not an element of {}", f.spec()))),
    }
}

fn f_text(cfg: &RunConfig) -> String {
    cfg.f.clone().unwrap_or_else(|| "y^3*z^3".into())
}

fn or_default<T: Clone>(v: &[T], default: &[T]) -> Vec<T> {
    if v.is_empty() {
        default.to_vec()
    } else {
        v.to_vec()
    }
}

/// `GF(2^m)` fields selected by `--m`, or by a `gf2m` field spec.
fn degree_fields(cfg: &RunConfig, default: &[u32]) -> Result<Vec<Gf2m>> {
    if let Some(AnyField::Gf2m(gf)) = cfg.field.as_deref().map(|s| field_from(Some(s), "")).transpose()? {
        if cfg.m.is_empty() {
            return Ok(vec![gf]);
        }
    }
    or_default(&cfg.m, default)
        .into_iter()
        .map(|m| {
            if !(2..=16).contains(&m) {
                return Err(Error::InvalidParameter(format!("m = {m} outside 2..=16")));
            }
            Gf2m::new(&first_irreducible(m))
        })
        .collect()
}

pub fn plan(cfg: &RunConfig) -> Result<Vec<Task>> {
    match cfg.command {
        Command::Identities => plan_identities(cfg),
        Command::Kernel => plan_kernel(cfg),
        Command::Matrix => plan_matrix(cfg),
        Command::Certificate => plan_certificate(cfg),
        Command::H2 => plan_h2(cfg),
        Command::TestElement => plan_test_element(cfg),
        Command::Properties => plan_properties(cfg),
        Command::All => {
            let mut tasks = Vec::new();
            for c in [
                Command::Identities,
                Command::Kernel,
                Command::Matrix,
                Command::Certificate,
                Command::H2,
                Command::TestElement,
                Command::Properties,
            ] {
                tasks.extend(plan(&RunConfig { command: c, ..cfg.clone() })?);
            }
            Ok(tasks)
        }
    }
}

fn plan_identities(cfg: &RunConfig) -> Result<Vec<Task>> {
    let field = field_from(cfg.field.as_deref(), "f2")?;
    let qs = or_default(&cfg.q, &[1, 2, 4, 8, 16, 32]);
    Ok(with_field!(field, f => qs
        .into_iter()
        .map(|q| {
            let f = f.clone();
            task(format!("identities/Q={q}"), move || Ok(verify_p_identities(&f, q)?.checks.into()))
        })
        .collect()))
}

fn plan_kernel(cfg: &RunConfig) -> Result<Vec<Task>> {
    let field = field_from(cfg.field.as_deref(), "ratfunc:α")?;
    let qs = or_default(&cfg.q, &[2, 4]);
    with_field!(field, f => {
        let alpha = alpha_for(&f, cfg)?;
        let f6 = parse_poly(&f, &alpha, &f_text(cfg))?;
        Ok(qs
            .into_iter()
            .map(|q| {
                let (f, alpha, f6) = (f.clone(), alpha.clone(), f6.clone());
                task(format!("kernel/Q={q}"), move || kernel_checks(&f, &alpha, q, &f6).map(Output::from))
            })
            .collect())
    })
}

fn kernel_checks<F: SuiteField>(f: &F, alpha: &F::Elem, q: u64, f6: &Poly<F>) -> Result<Vec<Check>> {
    let spec = f.spec();
    let lab = Lab::new(f, q, alpha)?;
    let formula = lab.induced_matrix(Route::Formula)?;
    let composite = lab.induced_matrix(Route::Composite)?;
    let mut checks = vec![
        Check::new(
            format!("kernel-routes/{spec}/Q={q}"),
            "the induced matrix from the closed formula equals the one from solving in O",
            formula.same_as(&composite),
            format!("{q}x{q}"),
        ),
        lab.x0_bijectivity()?,
        lab.z_support_check()?,
    ];
    let n = lab.kernel_n()?;
    let cap = lab.kernel_n_cap_x()?;
    if f.transcendental() {
        checks.push(Check::new(
            format!("kernel-n/{spec}/Q={q}"),
            "multiplication by g_α: O_{6Q−5} → O_{6Q−1} is injective over F2(α)",
            n.is_empty(),
            format!("dim N = {}", n.len()),
        ));
        let det = det_induced(q)?;
        checks.push(Check::new(
            format!("kernel-det/{spec}/Q={q}"),
            "det M has degree Q², diagonal entries degree Q, off-diagonal degree below Q",
            det.passed(),
            format!("deg det = {:?}", det.det_degree),
        ).with_witness(det.det_hex));
    }
    checks.push(Check::new(
        format!("kernel-cap-x/{spec}/Q={q}"),
        "dim(N ∩ X) from the induced matrix equals the kernel of g_α on X",
        cap.kernel.len() == cap.direct_dim,
        format!("dim N = {}, dim N ∩ X = {}", n.len(), cap.kernel.len()),
    ));
    let colon = lab.colon_membership(f6)?;
    let (claim, passed) = if f.transcendental() {
        ("xy f^Q ∈ (x^{4Q}, y^{4Q}, z^{4Q}, g_α) over F2(α)", colon.member)
    } else {
        ("rank of g_α on O_{6Q−2} matches rank on O_{6Q−5} by duality", colon.duality_consistent())
    };
    checks.push(Check::new(
        format!("kernel-colon/{spec}/Q={q}"),
        claim,
        passed,
        format!("member = {}, ranks {} / {}", colon.member, colon.rank_onto_side, colon.rank_injective_side),
    ));
    Ok(checks)
}

fn plan_matrix(cfg: &RunConfig) -> Result<Vec<Task>> {
    if !cfg.random {
        let mut tasks: Vec<Task> = degree_fields(cfg, &[2, 3, 4, 5])?
            .into_iter()
            .map(|gf| task(format!("matrix/m={}", gf.degree()), move || Ok(verify_induced_is_special(&gf)?.into())))
            .collect();
        for q in or_default(&cfg.q, &[4, 8, 16]) {
            tasks.push(task(format!("matrix-b/Q={q}"), move || Ok(vec![b_structure_check(q)].into())));
        }
        return Ok(tasks);
    }
    let fixed = match cfg.field.as_deref().map(|s| field_from(Some(s), "")).transpose()? {
        None => None,
        Some(AnyField::Gf2m(gf)) => Some(gf),
        Some(_) => return Err(Error::InvalidParameter("random special matrices need a gf2m field".into())),
    };
    let samples = cfg.samples.unwrap_or(50);
    let ms = cfg.m.clone();
    Ok(or_default(&cfg.q, &[2, 4, 8, 16, 32, 64])
        .into_iter()
        .map(|q| {
            let (fixed, ms, seed) = (fixed.clone(), ms.clone(), cfg.seed ^ q.rotate_left(32));
            task(format!("matrix-random/Q={q}"), move || random_rank_check(q, samples, seed, fixed, &ms).map(|c| vec![c].into()))
        })
        .collect())
}

fn random_rank_check(q: u64, samples: usize, seed: u64, fixed: Option<Gf2m>, ms: &[u32]) -> Result<Check> {
    if q < 2 || !tightcheck_core::is_power_of_two(q) {
        return Err(Error::InvalidParameter(format!("Q = {q} must be a power of two at least 2")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let want = AugmentedRanks { m: q as usize - 2, m_b: q as usize - 1, m_b_bstar: q as usize };
    let mut bad = None;
    for n in 0..samples {
        let gf = match &fixed {
            Some(g) => g.clone(),
            None => {
                let m = if ms.is_empty() { rng.gen_range(2..=16) } else { ms[rng.gen_range(0..ms.len())] };
                Gf2m::new(&random_irreducible(m, &mut rng))?
            }
        };
        let mat = random_special(&gf, q, &mut rng).to_matrix(&gf)?;
        let d = ranks_by(&mat, RankMethod::Direct)?;
        let r = ranks_by(&mat, RankMethod::Recursive)?;
        if d != want || r != want {
            bad = Some(format!("sample {n} over {}: direct {d:?}, recursive {r:?}", gf.spec()));
            break;
        }
    }
    Ok(Check::new(
        format!("matrix-random/Q={q}"),
        "special Q-matrices have rank Q − 2, then Q − 1 and Q with b and b* appended; both methods agree",
        bad.is_none(),
        bad.unwrap_or_else(|| format!("ranks ({}, {}, {}) on {samples} random profiles", want.m, want.m_b, want.m_b_bstar)),
    ))
}

fn plan_certificate(cfg: &RunConfig) -> Result<Vec<Task>> {
    let f = cfg.f.clone();
    Ok(degree_fields(cfg, &[2, 3, 4, 5])?
        .into_iter()
        .map(|gf| {
            let f = f.clone();
            task(format!("certificate/m={}", gf.degree()), move || {
                let cert = counterexample_certificate(&gf, f.as_deref())?;
                let mut checks = verify_certificate(&cert)?;
                checks.push(
                    Check::new(
                        format!("certificate-pipeline/m={}", cert.m),
                        "N_{6Q−5} ∩ X is a line whose generator has ρ(u) ≠ 0, so xy f^Q is not in the Frobenius power ideal",
                        cert.non_member_by_elimination,
                        format!("Q = {}, ρ(u) = {}, pairing {}", cert.q, cert.rho_u, cert.pairing_value),
                    )
                    .with_witness(cert.u.clone()),
                );
                Ok(Output { checks, certificates: vec![cert], ..Default::default() })
            })
        })
        .collect())
}

fn plan_h2(cfg: &RunConfig) -> Result<Vec<Task>> {
    let field = field_from(cfg.field.as_deref(), "ratfunc:α")?;
    let mut tasks = with_field!(field, f => {
        let alpha = alpha_for(&f, cfg)?;
        vec![task(format!("h2/{}", f.spec()), move || h2_checks(&f, &alpha))]
    });
    let f = cfg.f.clone();
    let replay_fields = if cfg.m.is_empty() && cfg.field.is_some() { degree_fields(cfg, &[])? } else { degree_fields(cfg, &[2, 3])? };
    for gf in replay_fields {
        let f = f.clone();
        tasks.push(task(format!("h2-replay/m={}", gf.degree()), move || Ok(contradiction_replay(&gf, f.as_deref())?.into())));
    }
    Ok(tasks)
}

fn h2_checks<F: SuiteField>(f: &F, alpha: &F::Elem) -> Result<Output> {
    let spec = f.spec();
    let mut out = Output::default();
    let t = QuotientRing::curve_t(f, alpha, 2)?;
    for i in 0..=t.top_degree() {
        out.checks.push(t.pairing_check(i, None)?.to_check(&format!("T/{spec}/Q=2")));
    }
    let h = H2::new(f, alpha);
    let alpha_is_one = f.is_one(alpha);
    let r3 = h.semilinear_nonvanishing(3)?;
    out.checks.push(Check::new(
        format!("h2-semilinear/{spec}/n=3"),
        if alpha_is_one {
            "for α = 1 some nonzero U in H²_{−1} has (x³+y³) U^{[8]} = 0"
        } else {
            "for α ≠ 0, 1 every nonzero U in H²_{−1} has (x³+y³) U^{[8]} ≠ 0"
        },
        if alpha_is_one { r3.rank < 6 } else { r3.rank == 6 },
        format!("rank {}", r3.rank),
    ));
    out.semilinear.push(r3);
    if alpha_is_one {
        let r4 = h.semilinear_nonvanishing(4)?;
        out.checks.push(Check::new(
            format!("h2-semilinear/{spec}/n=4"),
            "for α = 1 every nonzero U in H²_{−1} has (x³+y³) U^{[16]} ≠ 0",
            r4.rank == 6,
            format!("rank {}", r4.rank),
        ));
        out.semilinear.push(r4);
    }
    if f.transcendental() {
        let cubic = parse_poly(f, alpha, "x^3 + y^3")?;
        let img = |i, j, k| -> Result<_> { Ok(h.module_action(&cubic, &h.frobenius(&h.basis_term(i, j, k, f.one())?, 3))) };
        let a2a = f.add(&f.square(alpha), alpha);
        let expected = [
            ((1, 1, 1), h.add(&h.basis_term(4, 1, 0, a2a.clone())?, &h.basis_term(1, 4, 0, a2a)?), "(α²+α)(1/x⁴y + 1/xy⁴)"),
            ((2, 1, 2), h.basis_term(2, 3, 0, alpha.clone())?, "α/(x²y³)"),
            ((1, 2, 2), h.basis_term(3, 2, 0, alpha.clone())?, "α/(x³y²)"),
        ];
        for ((i, j, k), want, text) in expected {
            let got = img(i, j, k)?;
            out.checks.push(Check::new(
                format!("h2-formula/{spec}/z^{k}/x^{i}y^{j}"),
                format!("(x³+y³)·(z^{k}/x^{i}y^{j})^[8] = {text}"),
                got == want,
                h.display(&got),
            ));
        }
    }
    Ok(out)
}

fn plan_test_element(cfg: &RunConfig) -> Result<Vec<Task>> {
    let specs: Vec<String> = match &cfg.field {
        Some(s) => vec![s.clone()],
        None => vec!["gf2m:1,1,1".into(), "ratfunc:α".into()],
    };
    let qs = or_default(&cfg.q, &[1, 2, 4]);
    let mut tasks = Vec::new();
    for s in specs {
        let field = field_from(Some(&s), "")?;
        with_field!(field, f => {
            let alpha = alpha_for(&f, cfg)?;
            let qs = qs.clone();
            tasks.push(task(format!("test-element/{s}"), move || {
                Ok(membership_checks(&f, &alpha, &qs, &[0, 1, 2, 3])?.into())
            }));
        });
    }
    Ok(tasks)
}

fn plan_properties(cfg: &RunConfig) -> Result<Vec<Task>> {
    let (seed, samples) = (cfg.seed, cfg.samples.unwrap_or(10_000));
    let ms = or_default(&cfg.m, &[2, 3, 4]);
    Ok(vec![
        task("properties/fields", move || Ok(properties::run_property_suite(seed, samples)?.into())),
        task("properties/certificates", move || Ok(properties::certificate_reverification(&ms)?.into())),
    ])
}

/// A failed job becomes one failing record naming the violated claim.
fn error_check(task: &str, err: &Error) -> Check {
    let claim = match err {
        Error::Violation { claim, .. } => claim.to_string(),
        _ => "the computation completes".to_string(),
    };
    Check::new(format!("{task}/error"), claim, false, err.to_string())
}

pub fn run_suite(cfg: &RunConfig) -> Result<Report> {
    let tasks = plan(cfg)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("worker pool: {e}")))?;
    let timings = cfg.timings;
    let outputs: Vec<(Vec<CheckRecord>, Vec<CounterexampleCertificate>, Vec<SemilinearReport>)> = pool.install(|| {
        tasks
            .into_par_iter()
            .map(|t| {
                let start = Instant::now();
                let out = (t.job)().unwrap_or_else(|e| Output::from(vec![error_check(&t.name, &e)]));
                let ms = timings.then(|| start.elapsed().as_secs_f64() * 1e3);
                let recs = out.checks.into_iter().map(|c| CheckRecord::from_check(c, ms)).collect();
                (recs, out.certificates, out.semilinear)
            })
            .collect()
    });
    let (mut checks, mut certs, mut semi) = (Vec::new(), Vec::new(), Vec::new());
    for (c, ce, s) in outputs {
        checks.extend(c);
        certs.extend(ce);
        semi.extend(s);
    }
    Ok(Report::new(cfg.clone(), checks, certs, semi))
}
