//! `para-racah`: exact coefficient tables, spectral data and certificates.

mod commands;
mod config;
mod output;

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::output::Format;

#[derive(Parser, Debug)]
#[command(name = "para-racah", version, about = "Para-Racah polynomials: tables, spectra and certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Recurrence coefficients b_n, u_n.
    Coeffs,
    /// Labeled bi-lattice nodes.
    Grid,
    /// Closed-form and spectral weights.
    Weights,
    /// Exact Gram diagonal against u_1...u_n.
    Gram,
    /// Difference-equation residuals at certificate points.
    Bispectral,
    /// Jacobi-matrix eigenvalues against the sorted bi-lattice.
    Eigen,
    /// Para-Krawtchouk convergence errors over doubling theta.
    PkLimit,
    /// Dual-Hahn coefficient comparison.
    DualHahn,
    /// Run every structural check; exit 4 if any fails.
    Certify,
}

#[derive(Args, Debug, Clone)]
pub struct Options {
    /// Maximal degree N.
    #[arg(long = "N", global = true)]
    pub max_degree: Option<usize>,
    /// Parameter a as "p/q" or an integer.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub a: Option<String>,
    /// Parameter c as "p/q" or an integer.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub c: Option<String>,
    /// Deformation alpha in [0, 1]; defaults to 1/2.
    #[arg(long, global = true)]
    pub alpha: Option<String>,
    /// Para-Krawtchouk offset delta.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub delta: Option<String>,
    /// Largest theta in the doubling sequence starting at 16.
    #[arg(long = "theta-max", global = true, default_value_t = 4096)]
    pub theta_max: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// JSON object with keys N, a, c, alpha.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Significant digits for floating-point columns.
    #[arg(long, global = true, default_value_t = 17)]
    pub precision: usize,
    /// Coefficient table {"b": [...], "u": [...]} to certify instead of the computed one.
    #[arg(long, global = true)]
    pub table: Option<PathBuf>,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Params(String),
    CheckFailed(String),
    Io(String),
    Internal(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Params(_) => 3,
            CliError::CheckFailed(_) => 4,
            CliError::Io(_) | CliError::Internal(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Params(m) | CliError::CheckFailed(m) | CliError::Io(m) | CliError::Internal(m) => m,
        }
    }
}

impl From<para_racah::Error> for CliError {
    fn from(e: para_racah::Error) -> Self {
        use para_racah::Error as E;
        match e {
            E::InvalidDegree | E::AlphaOutOfRange(_) | E::Parse(_) | E::TableShape(_) => CliError::Usage(e.to_string()),
            E::RegimeViolation(_) | E::DegenerateParameters(_) | E::CollidingNodes(..) => CliError::Params(e.to_string()),
            other => CliError::Internal(other.to_string()),
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let (doc, verdict) = commands::dispatch(cli.command, &cli.opts)?;
    let mut sink: Box<dyn Write> = match &cli.opts.out {
        Some(path) => Box::new(File::create(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?),
        None => Box::new(io::stdout().lock()),
    };
    doc.write(cli.opts.format, sink.as_mut()).map_err(|e| CliError::Io(e.to_string()))?;
    sink.flush().map_err(|e| CliError::Io(e.to_string()))?;
    verdict
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
