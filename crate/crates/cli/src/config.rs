//! Run configuration, echoed verbatim into every report.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Identities,
    Kernel,
    Matrix,
    Certificate,
    H2,
    TestElement,
    Properties,
    All,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Identities => "identities",
            Command::Kernel => "kernel",
            Command::Matrix => "matrix",
            Command::Certificate => "certificate",
            Command::H2 => "h2",
            Command::TestElement => "test-element",
            Command::Properties => "properties",
            Command::All => "all",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Markdown,
}

/// Empty lists and `None` select each command's defaults.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    /// Field spec: `f2`, `gf2m:c0,c1,...` or `ratfunc:name`.
    pub field: Option<String>,
    /// Override for `α`, hex-encoded in the chosen field.
    pub alpha: Option<String>,
    pub q: Vec<u64>,
    /// Degrees of `λ`; each selects `GF(2^m)` with `α = λ² + λ`.
    pub m: Vec<u32>,
    /// Degree-6 form replacing `y³z³`.
    pub f: Option<String>,
    pub format: Format,
    pub seed: u64,
    /// Worker threads; 0 lets the pool decide.
    pub jobs: usize,
    /// Draw random special profiles instead of induced matrices.
    pub random: bool,
    pub samples: Option<usize>,
    /// Include wall-clock timings; off by default so reports are reproducible byte for byte.
    pub timings: bool,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            field: None,
            alpha: None,
            q: Vec::new(),
            m: Vec::new(),
            f: None,
            format: Format::Json,
            seed: 0,
            jobs: 0,
            random: false,
            samples: None,
            timings: false,
        }
    }
}
