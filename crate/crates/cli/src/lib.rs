//! Command-line front end: file formats and the command implementations.
//! Every answer is computed by the library; this crate only parses and prints.

pub mod commands;
pub mod files;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Semantic(#[from] nary_algebra::Error),
}

impl CliError {
    /// 2 for unreadable or malformed input, 1 when a valid input fails a precondition.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) | CliError::Parse(_) => 2,
            CliError::Semantic(_) => 1,
        }
    }
}

pub use commands::{run, Cli, Output};
