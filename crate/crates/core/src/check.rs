//! Pass/fail records shared by every verifier.

use serde::Serialize;

/// Outcome of one exact check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    /// Stable identifier, `family/parameters`.
    pub name: String,
    /// The mathematical statement being confirmed.
    pub claim: String,
    pub passed: bool,
    pub detail: String,
    /// Hex-encoded witness data, when the check produces any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, claim: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self { name: name.into(), claim: claim.into(), passed, detail: detail.into(), witness: None }
    }

    pub fn with_witness(mut self, witness: impl Into<String>) -> Self {
        self.witness = Some(witness.into());
        self
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}
