//! `alphapf`: compute α-pfaffians and α-determinants, run the verification
//! suites, evaluate shifted Schur correlations and scan positivity.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Input(#[from] alphapf::Error),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

/// What a command produced and whether every check it ran passed.
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

#[derive(Parser, Debug)]
#[command(name = "alphapf", version, about = "α-pfaffians, pfaffian point processes and the shifted Schur measure")]
struct Cli {
    /// Worker threads for parallel sections (default: all cores)
    #[arg(long, global = true, env = "ALPHAPF_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PfMethod {
    Dp,
    Bruteforce,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SchurMethod {
    Matrix,
    Series,
    Both,
    Bruteforce,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Pfaffian, α-pfaffian or α-determinant of a matrix given as JSON
    Compute(ComputeArgs),
    /// Run the named identity suites
    Verify(VerifyArgs),
    /// Shifted Schur measure correlation ρ(λ) = pf(𝒦[λ])
    Schur(SchurArgs),
    /// Correlation function of a finite α-pfaffian point process
    Pointproc(PointprocArgs),
    /// SH-class classification and the α scan
    #[command(subcommand)]
    Positivity(PositivityCommand),
}

#[derive(Args, Debug)]
pub struct ComputeArgs {
    /// Matrix JSON (`m` for skew inputs, `n` for --det-alpha)
    pub input: PathBuf,
    /// Print pf(B)
    #[arg(long)]
    pub pf: bool,
    /// Print pf_α(B) for this α (`a`, `a+bi`, rationals allowed)
    #[arg(long, allow_hyphen_values = true, value_name = "ALPHA")]
    pub pf_alpha: Option<String>,
    /// Print det_α(A) for this α
    #[arg(long, allow_hyphen_values = true, value_name = "ALPHA")]
    pub det_alpha: Option<String>,
    /// α-pfaffian algorithm; `both` cross-checks the two
    #[arg(long, value_enum, default_value = "both")]
    pub method: PfMethod,
    /// Exact complex-rational arithmetic
    #[arg(long)]
    pub exact: bool,
    /// Relative tolerance for the method cross-check in float mode
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Include wall-clock timings (makes output non-reproducible)
    #[arg(long)]
    pub timing: bool,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Suite to run (repeatable; default: all)
    #[arg(long)]
    pub suite: Vec<String>,
    /// List the suites and exit
    #[arg(long)]
    pub list: bool,
    /// Block size of the random matrices
    #[arg(long, default_value_t = 4)]
    pub m: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Series kernel truncation order
    #[arg(long, default_value_t = 24)]
    pub order: usize,
    /// Random instances per check
    #[arg(long, default_value_t = 10)]
    pub samples: usize,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct SchurArgs {
    /// Comma-separated u parameters (odd counts are padded with 0)
    #[arg(long, allow_hyphen_values = true)]
    pub u: String,
    /// Comma-separated v parameters
    #[arg(long, allow_hyphen_values = true)]
    pub v: String,
    /// Strict partition, e.g. `3,1`
    #[arg(long)]
    pub lambda: String,
    #[arg(long, value_enum, default_value = "both")]
    pub method: SchurMethod,
    /// Weight cut of the strict-partition enumeration
    #[arg(long, default_value_t = 40)]
    pub weight_cut: usize,
    /// Truncation order of the series kernel
    #[arg(long, default_value_t = 24)]
    pub order: usize,
    /// Absolute tolerance (on top of tail bounds) for method agreement
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct PointprocArgs {
    /// Kernel JSON with `labels` and the block entries of L
    #[arg(long)]
    pub kernel: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    /// Comma-separated point labels (repeats allowed)
    #[arg(long)]
    pub points: String,
    /// Extra points summed in the brute-force cross-check
    #[arg(long, default_value_t = 12)]
    pub k_max: usize,
    #[arg(long)]
    pub exact: bool,
    /// Absolute tolerance (on top of the tail bound) for the cross-check
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Subcommand, Debug)]
pub enum PositivityCommand {
    /// Minimum of Re pf_α over a seeded SH^{>=0} ensemble, per α
    Scan(ScanArgs),
    /// Classify a skew matrix and run the checks its class allows
    Classify(ClassifyArgs),
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[arg(long, default_value_t = 4)]
    pub m: usize,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    /// Grid `lo:hi:step`
    #[arg(long, allow_hyphen_values = true, default_value = "-2:2:0.1")]
    pub alpha_grid: String,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Write the CSV here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot set up {n} threads: {e}")))?;
    }
    match cli.command {
        Command::Compute(a) => commands::compute(&a),
        Command::Verify(a) => commands::verify(&a),
        Command::Schur(a) => commands::schur(&a),
        Command::Pointproc(a) => commands::pointproc(&a),
        Command::Positivity(PositivityCommand::Scan(a)) => commands::scan(&a),
        Command::Positivity(PositivityCommand::Classify(a)) => commands::classify(&a),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
