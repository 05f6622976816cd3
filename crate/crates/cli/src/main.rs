use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use tightcheck::{emit, run_suite, Command, Format, RunConfig};

/// Exact verification suites for the quartic family g_α = z⁴ + xyz² + (x³+y³)z + αx²y².
///
/// Exit status: 0 when every check passes, 1 when some check fails, 2 on bad input.
#[derive(Debug, Parser)]
#[command(name = "tightcheck", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,

    /// Coefficient field: f2, gf2m:c0,c1,...,cm (minimal polynomial, low degree first), or ratfunc:NAME.
    #[arg(long)]
    field: Option<String>,

    /// Override for α, hex-encoded in the chosen field.
    #[arg(long)]
    alpha: Option<String>,

    /// Values of Q, comma separated.
    #[arg(long = "Q", alias = "q", value_delimiter = ',')]
    q: Vec<u64>,

    /// Degrees m of λ, comma separated; each selects GF(2^m) with α = λ² + λ.
    #[arg(long, value_delimiter = ',')]
    m: Vec<u32>,

    /// Degree-6 form replacing y^3*z^3, e.g. "x^6 + a*y^3*z^3" (a stands for α).
    #[arg(long)]
    f: Option<String>,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Seed for the randomized suites.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Worker threads; 0 lets the pool decide.
    #[arg(long, env = "TIGHTCHECK_JOBS", default_value_t = 0)]
    jobs: usize,

    /// matrix: draw random special profiles.
    #[arg(long)]
    random: bool,

    /// Number of random samples (matrix --random, properties).
    #[arg(long)]
    samples: Option<usize>,

    /// Record per-check wall-clock timings (makes output nondeterministic).
    #[arg(long)]
    timings: bool,

    /// Write the report here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = RunConfig {
        command: cli.command,
        field: cli.field,
        alpha: cli.alpha,
        q: cli.q,
        m: cli.m,
        f: cli.f,
        format: cli.format,
        seed: cli.seed,
        jobs: cli.jobs,
        random: cli.random,
        samples: cli.samples,
        timings: cli.timings,
    };
    let report = match run_suite(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("tightcheck: {e}");
            return ExitCode::from(2);
        }
    };
    let text = emit(&report, cfg.format);
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("tightcheck: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(report.exit_code() as u8)
}
