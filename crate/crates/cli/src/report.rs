//! Report assembly and serialization.

use std::fmt::Write as _;

use serde::Serialize;
use tightcheck_core::h2::SemilinearReport;
use tightcheck_core::special_matrix::CounterexampleCertificate;
use tightcheck_core::Check;

use crate::config::{Format, RunConfig};

/// Bumped whenever a field is renamed or removed.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub claim: String,
    pub status: Status,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl CheckRecord {
    pub fn from_check(c: Check, timing_ms: Option<f64>) -> Self {
        Self {
            name: c.name,
            claim: c.claim,
            status: if c.passed { Status::Pass } else { Status::Fail },
            detail: c.detail,
            witness: c.witness,
            timing_ms,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub version: &'static str,
    pub config: RunConfig,
    pub passed: bool,
    pub summary: Summary,
    pub checks: Vec<CheckRecord>,
    pub certificates: Vec<CounterexampleCertificate>,
    pub semilinear: Vec<SemilinearReport>,
}

impl Report {
    /// Sorts every collection so the result does not depend on scheduling.
    pub fn new(
        config: RunConfig,
        mut checks: Vec<CheckRecord>,
        mut certificates: Vec<CounterexampleCertificate>,
        mut semilinear: Vec<SemilinearReport>,
    ) -> Self {
        checks.sort_by(|a, b| (&a.name, &a.detail).cmp(&(&b.name, &b.detail)));
        certificates.sort_by(|a, b| (a.m, &a.minpoly).cmp(&(b.m, &b.minpoly)));
        semilinear.sort_by(|a, b| (&a.field, &a.alpha, a.n).cmp(&(&b.field, &b.alpha, b.n)));
        let failed = checks.iter().filter(|c| !c.passed()).count();
        Self {
            schema_version: SCHEMA_VERSION,
            version: env!("CARGO_PKG_VERSION"),
            config,
            passed: failed == 0,
            summary: Summary { total: checks.len(), failed },
            checks,
            certificates,
            semilinear,
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

pub fn emit(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Markdown => markdown(report),
    }
}

fn cell(s: &str) -> String {
    s.replace('|', "\\|").replace('\n', " ")
}

fn markdown(r: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# tightcheck {} report\n", r.config.command.name());
    let _ = writeln!(
        out,
        "Version {}, schema {}. {} of {} checks passed.\n",
        r.version,
        r.schema_version,
        r.summary.total - r.summary.failed,
        r.summary.total
    );
    if !r.checks.is_empty() {
        let timed = r.checks.iter().any(|c| c.timing_ms.is_some());
        let _ = writeln!(out, "| status | check | claim | detail |{}", if timed { " ms |" } else { "" });
        let _ = writeln!(out, "|---|---|---|---|{}", if timed { "---|" } else { "" });
        for c in &r.checks {
            let status = if c.passed() { "pass" } else { "**FAIL**" };
            let _ = write!(out, "| {status} | `{}` | {} | {} |", c.name, cell(&c.claim), cell(&c.detail));
            if timed {
                let _ = write!(out, " {:.1} |", c.timing_ms.unwrap_or(0.0));
            }
            out.push('\n');
        }
    }
    for cert in &r.certificates {
        let _ = writeln!(out, "\n## Certificate m = {}, Q = {}\n", cert.m, cert.q);
        let _ = writeln!(out, "| quantity | value |\n|---|---|");
        for (k, v) in [
            ("field", cert.field.clone()),
            ("α", cert.alpha.clone()),
            ("f", cert.f.clone()),
            ("rank M, M|b, M|b|b*", format!("{}, {}, {}", cert.ranks.m, cert.ranks.m_b, cert.ranks.m_b_bstar)),
            ("b", bits(&cert.b)),
            ("b*", bits(&cert.b_star)),
            ("kernel generator", cert.kernel_generator.clone()),
            ("ρ(u)", cert.rho_u.clone()),
            ("pairing value", cert.pairing_value.clone()),
            ("non-member by elimination", cert.non_member_by_elimination.to_string()),
        ] {
            let _ = writeln!(out, "| {k} | `{}` |", cell(&v));
        }
        let _ = writeln!(out, "\nInduced matrix M:\n");
        let q = cert.matrix.len();
        let _ = writeln!(out, "|{}", (1..=q).map(|j| format!(" {j} |")).collect::<String>());
        let _ = writeln!(out, "|{}", "---|".repeat(q));
        for row in &cert.matrix {
            let _ = writeln!(out, "|{}", row.iter().map(|e| format!(" {e} |")).collect::<String>());
        }
    }
    for s in &r.semilinear {
        let _ = writeln!(out, "\n## (x³+y³)·U^[2^{}] over {}, α = {}: rank {}\n", s.n, s.field, s.alpha, s.rank);
        let _ = writeln!(out, "| basis element | image |\n|---|---|");
        for (b, v) in &s.images {
            let _ = writeln!(out, "| {} | {} |", cell(b), cell(v));
        }
    }
    out
}

fn bits(v: &[u8]) -> String {
    v.iter().map(|b| char::from(b'0' + b)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Command;

    #[test]
    fn empty_report_is_valid() {
        let r = Report::new(RunConfig::new(Command::All), vec![], vec![], vec![]);
        assert!(r.passed);
        let v: serde_json::Value = serde_json::from_str(&emit(&r, Format::Json)).unwrap();
        assert_eq!(v["schema_version"], SCHEMA_VERSION);
        assert_eq!(v["checks"].as_array().unwrap().len(), 0);
        assert!(emit(&r, Format::Markdown).contains("0 of 0 checks passed"));
    }

    #[test]
    fn sorted_and_counted() {
        let recs = ["b", "a", "c"]
            .into_iter()
            .map(|n| CheckRecord::from_check(Check::new(n, "claim", n != "c", ""), None))
            .collect();
        let r = Report::new(RunConfig::new(Command::All), recs, vec![], vec![]);
        assert_eq!(r.checks.iter().map(|c| c.name.as_str()).collect::<Vec<_>>(), ["a", "b", "c"]);
        assert_eq!(r.summary, Summary { total: 3, failed: 1 });
        assert_eq!(r.exit_code(), 1);
    }
}
