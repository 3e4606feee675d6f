//! `tightcert`: command-line front end for the closure decider.
//!
//! Exit codes: 0 decided or computed, 1 internal error or golden mismatch,
//! 2 unknown or undetermined, 3 input error.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use tightcert_core::Error;

#[derive(Parser, Debug)]
#[command(name = "tightcert", version, about = "Tight and solid closure certificates on plane curve cones")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Degree, genus and smoothness of the curve.
    Invariants,
    /// Hilbert function of R, and of R/I when an ideal is given.
    Hilbert,
    /// Relations in a degree, or the minimal relation and splitting type.
    Syzygies,
    /// Ideal membership of --element with explicit coefficients.
    Membership,
    /// Degree bounds for the closure, from the ideal or from --degrees/--delta.
    Bounds,
    /// Primary witness and semistability certificate.
    Certify,
    /// Decide --element against the closure of the ideal.
    Decide,
    /// Decide every basis coset of R_m / I_m for m = --degree.
    BatchDecide,
    /// Frobenius closure test, or tight evidence with --multiplier.
    Frobenius,
    /// Hasse invariant of a plane cubic, for the ring's prime or each of --primes.
    Hasse,
    /// Self-intersection of the forcing divisor.
    Selfint,
    /// Cohomology of R(m) next to the Riemann-Roch prediction.
    Euler,
    /// dim H^1(O(a)) by Cech truncation for a = --degree.
    Cech,
    /// Decider against the Frobenius oracle over --primes.
    CrossValidate,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Opts {
    /// Ring config: {"char": p, "vars": [...], "F": "..."}.
    #[arg(long, global = true, value_name = "FILE")]
    pub ring: Option<PathBuf>,
    /// Ideal config: {"gens": [...]}.
    #[arg(long, global = true, value_name = "FILE")]
    pub ideal: Option<PathBuf>,
    /// Whole session: {"ring": ..., "ideal": ..., "options": ...}; other flags override it.
    #[arg(long, global = true, value_name = "FILE")]
    pub session: Option<PathBuf>,
    /// Reads the ring over this characteristic instead of the configured one.
    #[arg(long = "char", global = true, value_name = "P")]
    pub characteristic: Option<u64>,
    #[arg(long, global = true, value_name = "EXPR", allow_hyphen_values = true)]
    pub element: Option<String>,
    #[arg(long, global = true, value_name = "M", allow_hyphen_values = true)]
    pub degree: Option<i64>,
    #[arg(long, global = true, value_name = "Q")]
    pub qmax: Option<u64>,
    /// Truncation and search cap.
    #[arg(long, global = true, value_name = "N", env = "FS_NMAX")]
    pub nmax: Option<i64>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, conflicts_with = "table")]
    pub json: bool,
    #[arg(long, global = true)]
    pub table: bool,
    #[arg(long, global = true, value_name = "P1,P2,...", value_delimiter = ',')]
    pub primes: Vec<u64>,
    /// Generator degrees for the purely numerical commands.
    #[arg(long, global = true, value_name = "D1,D2,...", value_delimiter = ',')]
    pub degrees: Vec<i64>,
    #[arg(long, global = true, value_name = "DELTA")]
    pub delta: Option<i64>,
    /// Asserts that the relation sheaf is indecomposable.
    #[arg(long, global = true)]
    pub indecomposable: bool,
    /// Multiplier c for tight evidence, checking c f0^q in I^[q].
    #[arg(long, global = true, value_name = "EXPR")]
    pub multiplier: Option<String>,
    /// Symmetric power k for `euler`.
    #[arg(long, global = true, value_name = "K")]
    pub sym: Option<i64>,
    /// Appends oracle outcomes as JSON lines.
    #[arg(long, global = true, value_name = "FILE")]
    pub records: Option<PathBuf>,
    /// Compares the report with a golden file instead of printing it.
    #[arg(long, global = true, value_name = "FILE")]
    pub check: Option<PathBuf>,
}

/// How a command finished, before rendering.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Done,
    Unknown,
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        e if e.is_input_error() => 3,
        Error::NotPrimary { .. } => 3,
        Error::Undetermined(_) | Error::StabilizationFailed { .. } => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = commands::load(&cli.opts)
        .and_then(|loaded| Ok((commands::run(cli.command, &loaded, &cli.opts)?, loaded.format())));
    let ((report, status), format) = match outcome {
        Ok(x) => x,
        Err(e) => {
            eprintln!("tightcert: {e}");
            return ExitCode::from(exit_code_for(&e));
        }
    };
    let text = render::render(&report, format);
    if let Some(path) = &cli.opts.check {
        return match std::fs::read_to_string(path) {
            Ok(golden) if golden.trim_end() == text.trim_end() => ExitCode::SUCCESS,
            Ok(_) => {
                eprintln!("tightcert: report differs from {}", path.display());
                ExitCode::from(1)
            }
            Err(e) => {
                eprintln!("tightcert: {}: {e}", path.display());
                ExitCode::from(3)
            }
        };
    }
    println!("{text}");
    match status {
        Status::Done => ExitCode::SUCCESS,
        Status::Unknown => ExitCode::from(2),
    }
}
