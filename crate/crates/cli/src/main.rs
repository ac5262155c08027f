//! `motivic`: tables, checks, specialization and series I/O.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on a usage,
//! parse or I/O error.

mod cache;
mod commands;
mod config;
mod render;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use motivic::pairs::PairsError;
use motivic::powerstruct::PowerError;
use motivic::ring::RingError;
use motivic::solver::SolverError;
use motivic::tuples::TupleError;
use thiserror::Error;

use crate::render::Format;
use crate::verify::Check;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    /// A verification ran and did not hold; the payload is its report.
    #[error("{0}")]
    Failed(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            _ => 2,
        }
    }
}

impl From<RingError> for CliError {
    fn from(e: RingError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<SolverError> for CliError {
    fn from(e: SolverError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<PowerError> for CliError {
    fn from(e: PowerError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<PairsError> for CliError {
    fn from(e: PairsError) -> Self {
        match e {
            PairsError::NoStabilization { .. } => CliError::Failed(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<TupleError> for CliError {
    fn from(e: TupleError) -> Self {
        match e {
            TupleError::NoStabilization { .. } => CliError::Failed(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "motivic", version, about = "Exact motivic generating series for plane arcs")]
pub struct Cli {
    /// Plain `key = value` file with default bounds and options.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Cache directory; overrides MOTIVIC_CACHE_DIR and the config file.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Ignore any configured cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Table of G[i,j](t) for i <= imax, j <= jmax.
    Gtable {
        #[arg(long)]
        imax: Option<usize>,
        #[arg(long)]
        jmax: Option<usize>,
        #[arg(long)]
        order: Option<usize>,
    },
    /// One entry G[i,j](t), with its closed form when gcd(i,j) <= 4.
    Gij {
        i: usize,
        j: usize,
        #[arg(long)]
        order: Option<usize>,
    },
    /// G[a,a](t) against its closed form.
    Gaa {
        a: usize,
        #[arg(long)]
        order: Option<usize>,
    },
    /// The series I(t,a,b,c,d,f) assembled from the table.
    AssembleI {
        #[arg(long)]
        imax: Option<usize>,
        #[arg(long)]
        jmax: Option<usize>,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Run one of the exact checks.
    Verify {
        #[arg(value_enum)]
        which: Check,
        #[arg(long)]
        imax: Option<usize>,
        #[arg(long)]
        jmax: Option<usize>,
        #[arg(long)]
        max: Option<usize>,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        cap: Option<u32>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// (1 - t)^(-m), or BASE^m for a series given by its coefficients.
    Power {
        /// Exponent, e.g. "L+1" or "L^2 - 3*L^-1".
        #[arg(long, allow_hyphen_values = true)]
        m: String,
        /// Comma-separated coefficients starting with 1, e.g. "1,L,-2".
        #[arg(long, allow_hyphen_values = true)]
        base: Option<String>,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Phi at eight fresh variables with the single-index slots capped.
    Phi {
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Psi at five fresh variables with the single-index slots capped.
    Psi {
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Solve for the pair series J.
    SolvePairs {
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Solve for the tuple series, graded by t + u.
    SolveTuples {
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Evaluate every coefficient of a saved table or series at L = VALUE.
    Specialize {
        #[arg(long)]
        input: PathBuf,
        /// Exact rational such as 4, -1/2 or 9/16.
        #[arg(long, allow_hyphen_values = true)]
        value: Option<String>,
    },
    /// Re-render a saved table or series in another format.
    Export {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Validate a saved table or series and print its canonical JSON.
    Import {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(CliError::Failed(report)) => {
            print!("{report}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
