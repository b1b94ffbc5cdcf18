use std::path::PathBuf;

use thiserror::Error;

/// Failures surfaced by the CLI, each mapped to a process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable input file.
    #[error("cannot read {path}: {source}")]
    Io {
        /// File that failed.
        path: PathBuf,
        /// Underlying error.
        source: std::io::Error,
    },
    /// Malformed input.
    #[error("parse error: {0}")]
    Parse(String),
    /// Well-formed input describing something invalid.
    #[error("invalid input: {0}")]
    Spec(String),
    /// A check failed.
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    /// 1 verification failed, 2 parse error, 3 semantic error.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Io { .. } | CliError::Parse(_) => 2,
            CliError::Spec(_) => 3,
        }
    }

    pub(crate) fn spec(context: impl std::fmt::Display, err: planerot_core::Error) -> Self {
        CliError::Spec(format!("{context}: {err}"))
    }
}
