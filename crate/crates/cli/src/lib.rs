//! File formats and command implementations behind the `planerot` binary.
//!
//! Commands return an [`Outcome`] (stdout text plus exit status) so they can
//! be driven from tests without spawning a process.

pub mod commands;
mod error;
pub mod matrix_io;
pub mod selftest;
pub mod spec_file;

pub use commands::Outcome;
pub use error::CliError;
