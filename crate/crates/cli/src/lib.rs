//! Command-line front end for `fvsub`.
//!
//! [`run`] parses arguments, dispatches to a command and returns the process
//! exit code: 0 on success, 1 for usage or input errors, 2 when a
//! verification fails, 3 when a computation precondition does not hold.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use fvsub::barycentric::BarycentricError;
use fvsub::complexes::ComplexError;
use fvsub::exactalg::ExactError;
use fvsub::rules::RuleError;

mod commands;
pub mod converge;
mod format;
pub mod verify;

pub use converge::{convergence_records, ConvergenceRecord};

/// Environment variable overriding the largest accepted dimension parameter.
pub const MAX_DIM_ENV: &str = "FVSUB_MAX_DIM";
pub const DEFAULT_MAX_DIM: usize = 16;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Verification(String),
    #[error("{0}")]
    Precondition(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Verification(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl From<ComplexError> for CliError {
    fn from(e: ComplexError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<ExactError> for CliError {
    fn from(e: ExactError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<BarycentricError> for CliError {
    fn from(e: BarycentricError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<RuleError> for CliError {
    fn from(e: RuleError) -> Self {
        match e {
            RuleError::Format(_) | RuleError::Complex(_) => CliError::Usage(e.to_string()),
            RuleError::Validation(_) => CliError::Verification(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "fvsub", version, about = "Exact f-vector arithmetic for simplicial subdivisions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the transition matrix, or its eigenvector matrices
    Matrix {
        d: usize,
        /// Print P_d and its inverse instead
        #[arg(long)]
        inverse: bool,
        #[arg(long)]
        json: bool,
    },
    /// Limit polynomials p_d and q_d, optionally with their roots
    Limit {
        d: usize,
        #[arg(long)]
        roots: bool,
        /// Refinement tolerance, e.g. 1e-12 or 1/1000
        #[arg(long)]
        tol: Option<String>,
        #[command(flatten)]
        out: TableFormat,
    },
    /// f-vectors of iterated subdivisions of a complex
    Subdivide {
        file: PathBuf,
        /// Built-in rule name or path to a rule file
        #[arg(long, default_value = "barycentric")]
        rule: String,
        #[arg(long, short = 'n', default_value_t = 1)]
        iterations: usize,
        /// Also subdivide explicitly and require agreement
        #[arg(long)]
        explicit: bool,
        #[arg(long)]
        json: bool,
    },
    /// Distances from the roots of p^X_n to the roots of p_d
    Converge {
        file: PathBuf,
        #[arg(long, short = 'n', default_value_t = 10)]
        iterations: usize,
        #[arg(long)]
        tol: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Run invariant suites
    Verify(VerifyArgs),
    /// Subdivision rules
    #[command(subcommand)]
    Rule(RuleCommand),
}

#[derive(Args, Debug)]
pub struct TableFormat {
    #[arg(long, conflicts_with = "csv")]
    pub json: bool,
    #[arg(long)]
    pub csv: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Symmetry,
    Identity,
    Oracle,
    Rules,
    All,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: Suite,
    #[arg(long, default_value_t = 10)]
    pub max_d: usize,
    #[arg(long, default_value_t = 12)]
    pub max_k: usize,
    #[arg(long)]
    pub json: bool,
    /// Worker threads for independent checks
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Subcommand, Debug)]
pub enum RuleCommand {
    /// Parse a rule file and list validation findings
    Validate {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Transition matrix of a rule
    Matrix {
        rule: String,
        d: usize,
        #[arg(long)]
        json: bool,
    },
    /// Print a built-in rule in the rule file format
    Show { rule: String, max_dim: usize },
    /// Limit polynomial of a rule and its symmetry check
    Limit {
        rule: String,
        d: usize,
        #[arg(long)]
        roots: bool,
        #[arg(long)]
        json: bool,
    },
}

/// Largest dimension parameter accepted, from [`MAX_DIM_ENV`].
pub fn max_dim() -> Result<usize, CliError> {
    match std::env::var(MAX_DIM_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{MAX_DIM_ENV} must be a positive integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_MAX_DIM),
    }
}

pub(crate) fn check_dim(d: usize, min: usize) -> Result<(), CliError> {
    let max = max_dim()?;
    if d < min || d > max {
        return Err(CliError::Usage(format!("d must lie in {min}..={max}, got {d}")));
    }
    Ok(())
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match commands::dispatch(cli.command, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
