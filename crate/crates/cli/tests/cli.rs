use std::process::{Command as Proc, Output};

use serde_json::Value;
use tightcheck::{emit, run_suite, Command, Format, RunConfig};

fn run(args: &[&str]) -> Output {
    Proc::new(env!("CARGO_BIN_EXE_tightcheck")).args(args).env_remove("TIGHTCHECK_JOBS").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn smallest_certificate() {
    let out = run(&["certificate", "--field", "gf2m:1,1,1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["certificates"][0]["m"], 2);
    assert_eq!(v["certificates"][0]["q"], 2);
}

#[test]
fn m3_certificate_has_nonzero_rho() {
    let v = json(&run(&["certificate", "--m", "3"]));
    let rho = v["certificates"][0]["rho_u"].as_str().unwrap();
    assert!(rho.chars().any(|c| c != '0'), "{rho}");
    assert_eq!(v["certificates"][0]["ranks"]["m_b"], 3);
}

#[test]
fn generic_kernels_are_empty() {
    let out = run(&["kernel", "--field", "ratfunc:α", "--Q", "2,4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let n: Vec<&Value> = v["checks"].as_array().unwrap().iter().filter(|c| c["name"].as_str().unwrap().starts_with("kernel-n/")).collect();
    assert_eq!(n.len(), 2);
    assert!(n.iter().all(|c| c["detail"] == "dim N = 0"));
}

#[test]
fn random_special_ranks_q64() {
    let v = json(&run(&["matrix", "--random", "--Q", "64", "--seed", "7"]));
    assert_eq!(v["checks"][0]["detail"], "ranks (62, 63, 64) on 50 random profiles");
}

#[test]
fn reports_are_deterministic() {
    let args = ["matrix", "--random", "--Q", "8,16", "--seed", "3", "--samples", "5"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let mut with_jobs = args.to_vec();
    with_jobs.extend(["--jobs", "1"]);
    let a = json(&run(&with_jobs));
    let b = json(&run(&args));
    assert_eq!(a["checks"], b["checks"]);
}

#[test]
fn bad_input_exits_2() {
    assert_eq!(run(&["identities", "--field", "gf2m:1,0,0,1"]).status.code(), Some(2));
    assert_eq!(run(&["identities", "--field", "bogus"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn failures_exit_1() {
    let out = run(&["kernel", "--Q", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["summary"]["failed"], 1);
}

#[test]
fn output_file_and_markdown() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.md");
    let out = run(&["certificate", "--m", "2", "--format", "markdown", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let md = std::fs::read_to_string(path).unwrap();
    assert!(md.contains("## Certificate m = 2, Q = 2"));
    assert!(md.contains("Induced matrix M"));
}

#[test]
fn timings_are_opt_in() {
    let plain = json(&run(&["identities", "--Q", "2"]));
    assert!(plain["checks"][0].get("timing_ms").is_none());
    let timed = json(&run(&["identities", "--Q", "2", "--timings"]));
    assert!(timed["checks"][0]["timing_ms"].is_number());
}

#[test]
fn config_round_trips() {
    let mut cfg = RunConfig::new(Command::TestElement);
    cfg.field = Some("gf2m:1,1,0,1".into());
    cfg.q = vec![1, 2];
    cfg.m = vec![3];
    cfg.f = Some("x^6".into());
    cfg.format = Format::Markdown;
    cfg.seed = 9;
    cfg.samples = Some(4);
    let text = serde_json::to_string(&cfg).unwrap();
    assert_eq!(serde_json::from_str::<RunConfig>(&text).unwrap(), cfg);
}

#[test]
fn library_and_binary_agree() {
    let mut cfg = RunConfig::new(Command::Identities);
    cfg.q = vec![1, 2];
    let text = emit(&run_suite(&cfg).unwrap(), Format::Json);
    assert_eq!(text.as_bytes(), run(&["identities", "--Q", "1,2"]).stdout);
}
