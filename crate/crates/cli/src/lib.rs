//! Command-line front end for the hopfcalc library.

pub mod cache;
pub mod report;
pub mod spec;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use report::{emit_report, Document, Format};
pub use spec::{parse_spec, parse_spec_str, SpecFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("invariant violation: {0}")]
    Violation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => EXIT_INVALID,
            CliError::Violation(_) => EXIT_VIOLATION,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "hopfcalc",
    version,
    about = "Invariants of decorated graphs of generalized Hopf links"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full invariant report for a graph spec.
    Report {
        spec: PathBuf,
        /// Cross-check every linking matrix against the homology presentation.
        #[arg(long)]
        oracle: bool,
    },
    /// Admissibility, linking matrix and descriptors of a single link.
    CheckLink {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        k: u32,
        #[arg(long, default_value_t = 1)]
        theta: u32,
    },
    /// Type and standard form of an integral bilinear form.
    Classify {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Presentation-oracle cross-checks for every black vertex of a spec.
    Oracle {
        spec: PathBuf,
        /// Also check this many random congruent copies of each decoration.
        #[arg(long, default_value_t = 0)]
        random: usize,
    },
}

fn execute(cli: &Cli) -> Result<Document, CliError> {
    match &cli.command {
        Command::Report { spec, oracle } => emit_report(&parse_spec(spec)?, *oracle),
        Command::CheckLink {
            matrix,
            n,
            k,
            theta,
        } => report::check_link(spec::parse_matrix_file(matrix)?, *n, *k, *theta),
        Command::Classify { matrix } => report::classify(spec::parse_matrix_file(matrix)?),
        Command::Oracle { spec, random } => {
            report::oracle_report(&parse_spec(spec)?, *random, cli.seed)
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli) {
        Ok(doc) => {
            let _ = out.write_all(doc.render(cli.format).as_bytes());
            if doc.violation {
                let _ = writeln!(
                    err,
                    "invariant violation: oracle or additivity check failed"
                );
                EXIT_VIOLATION
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            let _ = writeln!(err, "{e}");
            e.exit_code()
        }
    }
}
