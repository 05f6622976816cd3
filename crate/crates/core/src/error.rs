use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    Field(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    /// A computation contradicted a claim it was meant to confirm.
    #[error("claim violated ({claim}): {detail}")]
    Violation { claim: &'static str, detail: String },

    /// Entry `(i, j)`, 1-based, breaks the special pattern.
    #[error("not special at ({i}, {j}): {reason}")]
    NotSpecial { i: usize, j: usize, reason: String },

    #[error("no witness: {0}")]
    NoWitness(String),
}

impl Error {
    pub fn violation(claim: &'static str, detail: impl Into<String>) -> Self {
        Error::Violation { claim, detail: detail.into() }
    }
}
