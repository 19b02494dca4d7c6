//! Command implementations behind the `gcdtn` binary.
//!
//! Each command returns a [`report::Report`] and an [`Exit`] code; printing
//! and argument parsing live in `main.rs`.

pub mod commands;
pub mod input;
pub mod report;

use thiserror::Error;

/// Process exit codes. These values are a stable contract.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Exit {
    /// TN, or the command succeeded.
    Success = 0,
    /// A definite negative result: not TN, or a singular matrix.
    Negative = 1,
    /// Malformed input or an infeasible request.
    Usage = 2,
    /// Two exact computations that must agree did not.
    Inconsistent = 3,
}

impl Exit {
    pub fn code(self) -> u8 {
        self as u8
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Negative(String),
}

impl CliError {
    pub fn exit(&self) -> Exit {
        match self {
            CliError::Usage(_) => Exit::Usage,
            CliError::Negative(_) => Exit::Negative,
        }
    }
}

impl From<gcdtn::Error> for CliError {
    fn from(e: gcdtn::Error) -> Self {
        use gcdtn::Error as E;
        match e {
            E::Singular | E::DuplicateEntries | E::NotTotallyNonnegative => {
                CliError::Negative(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}
