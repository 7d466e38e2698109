use std::io;

use thiserror::Error;

/// Errors surfaced by the command-line front end, each tied to an exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("corrupt cache {path}: {reason}")]
    Corrupt { path: String, reason: String },
    #[error(transparent)]
    Core(#[from] strata_core::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Verification(_) => 1,
            CliError::Corrupt { .. } => 3,
            CliError::Core(strata_core::Error::PrecisionTooLow(_)) => 2,
            CliError::Core(_) | CliError::Io(_) => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
