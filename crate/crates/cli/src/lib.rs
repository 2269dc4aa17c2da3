//! Library side of the `qkdiff` command: series documents, check reports
//! and the commands behind each subcommand.

pub mod commands;
pub mod doc;
pub mod report;

use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const PASS: u8 = 0;
    pub const FAIL: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const INAPPLICABLE: u8 = 3;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Core(#[from] qkdiff_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Core(_) => exit::USAGE,
            CliError::Io(_) => exit::FAIL,
        }
    }
}
