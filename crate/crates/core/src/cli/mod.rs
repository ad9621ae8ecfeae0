//! The `spectra` command line: `solve`, `table`, `validate` and `sweep`.
//!
//! Exit codes: 0 success, 1 error (including a failed validation), 2 partial
//! result, 64 usage error. `SPECTRA_THREADS` caps the worker threads; output
//! never depends on it.

mod commands;
pub mod output;

use crate::anharmonic::Parity;
use crate::spectrum::SolverPolicy;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

pub const EXIT_SUCCESS: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_PARTIAL: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

/// Environment variable capping the number of worker threads.
pub const THREADS_VAR: &str = "SPECTRA_THREADS";

#[derive(Debug, Parser)]
#[command(name = "spectra", version, about = "Bound-state energies of g x^2 + x^(2N) oscillators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lowest levels for one coupling.
    Solve(SolveArgs),
    /// Four-level tables over a list of couplings (CSV by default).
    Table(TableArgs),
    /// Compare located zeros with closed-form levels or with the Numerov oracle.
    Validate(ValidateArgs),
    /// Levels along a uniform range of couplings (CSV by default).
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParityChoice {
    Even,
    Odd,
    Both,
}

impl ParityChoice {
    pub fn parities(self) -> Vec<Parity> {
        match self {
            ParityChoice::Even => vec![Parity::Even],
            ParityChoice::Odd => vec![Parity::Odd],
            ParityChoice::Both => Parity::BOTH.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    PoschlTeller,
    ModifiedPt,
    Morse,
    Oracle,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to a file instead of standard output.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SolverArgs {
    /// Energy grid spacing of the bracket scan.
    #[arg(long, allow_negative_numbers = true)]
    pub step: Option<f64>,
    /// Absolute energy tolerance.
    #[arg(long, allow_negative_numbers = true)]
    pub tol: Option<f64>,
    /// Term cap of each Wronskian coefficient series.
    #[arg(long)]
    pub max_terms: Option<usize>,
    /// Relative tail tolerance of each Wronskian coefficient series.
    #[arg(long, allow_negative_numbers = true)]
    pub tail_tol: Option<f64>,
}

impl SolverArgs {
    pub fn policy(&self) -> SolverPolicy {
        let mut policy = SolverPolicy::default();
        if let Some(step) = self.step {
            policy.step = step;
        }
        if let Some(tol) = self.tol {
            policy.energy_tol = tol;
        }
        if let Some(max_terms) = self.max_terms {
            policy.quantization.tail.max_terms = max_terms;
        }
        if let Some(tail_tol) = self.tail_tol {
            policy.quantization.tail.rel_tol = tail_tol;
        }
        policy
    }
}

fn half_degree_parser() -> clap::builder::RangedI64ValueParser<u32> {
    clap::value_parser!(u32).range(4..)
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    /// Half-degree N of the x^(2N) term (N >= 4).
    #[arg(long = "N", visible_alias = "n", value_parser = half_degree_parser())]
    pub half_degree: u32,
    /// Coupling g of the x^2 term.
    #[arg(long, allow_negative_numbers = true)]
    pub g: f64,
    #[arg(long, value_enum, default_value = "both")]
    pub parity: ParityChoice,
    #[arg(long, default_value_t = 4)]
    pub count: usize,
    #[arg(long, allow_negative_numbers = true)]
    pub emin: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub emax: Option<f64>,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    /// Half-degrees, comma separated.
    #[arg(long = "N", visible_alias = "n", value_parser = half_degree_parser(), value_delimiter = ',', required = true)]
    pub half_degrees: Vec<u32>,
    /// Couplings, comma separated or repeated; defaults to the reference couplings.
    #[arg(long, allow_negative_numbers = true, value_delimiter = ',')]
    pub g: Vec<f64>,
    #[arg(long, default_value_t = 4)]
    pub levels: usize,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long = "N", visible_alias = "n", value_parser = half_degree_parser())]
    pub half_degree: u32,
    #[arg(long, allow_negative_numbers = true)]
    pub g_from: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub g_to: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub g_step: f64,
    #[arg(long, default_value_t = 4)]
    pub levels: usize,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ValidateArgs {
    #[arg(long, value_enum)]
    pub model: Model,
    /// Pöschl-Teller kappa.
    #[arg(long, allow_negative_numbers = true)]
    pub kappa: Option<f64>,
    /// Pöschl-Teller or modified Pöschl-Teller lambda.
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    /// Morse alpha.
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// Morse gamma/alpha.
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: Option<f64>,
    #[arg(long, value_enum, default_value = "both")]
    pub parity: ParityChoice,
    #[arg(long = "N", visible_alias = "n", value_parser = half_degree_parser())]
    pub half_degree: Option<u32>,
    #[arg(long, allow_negative_numbers = true)]
    pub g: Option<f64>,
    #[arg(long)]
    pub count: Option<usize>,
    /// Largest accepted gap; defaults per model.
    #[arg(long, allow_negative_numbers = true)]
    pub tol: Option<f64>,
    /// Numerov steps for the oracle model.
    #[arg(long)]
    pub steps: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Drops the `--` in `--flag -- value`, so negative values can follow an escape.
pub fn preprocess_args(args: Vec<OsString>) -> Vec<OsString> {
    let mut result = Vec::with_capacity(args.len());
    let mut i = 0;
    while i < args.len() {
        result.push(args[i].clone());
        let is_flag = args[i].to_str().is_some_and(|s| s.starts_with("--") && s.len() > 2 && !s.contains('='));
        if is_flag && i + 2 < args.len() && args[i + 1] == "--" {
            result.push(args[i + 2].clone());
            i += 3;
        } else {
            i += 1;
        }
    }
    result
}

/// Parses `args` (program name first), runs the command, returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let args = preprocess_args(args.into_iter().map(Into::into).collect());
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_SUCCESS
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let threads = match std::env::var(THREADS_VAR) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Some(n),
            _ => {
                let _ = writeln!(err, "error: {THREADS_VAR} must be a positive integer, got {v:?}");
                return EXIT_USAGE;
            }
        },
        Err(_) => None,
    };
    commands::execute(cli, threads, out, err)
}

/// Entry point of the `spectra` binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
