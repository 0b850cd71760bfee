//! CLI error type carrying the exit-status contract: 2 for bad input, 3
//! for runtime scenario failures.

use std::fmt;

#[derive(Debug)]
pub enum CliError {
    /// Malformed flags, config files, or field values. Exit status 2.
    BadInput(String),
    /// A scenario or report failed at runtime. Exit status 3.
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::BadInput(_) => 2,
            CliError::Runtime(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::BadInput(msg) => write!(f, "{msg}"),
            CliError::Runtime(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<biased_collapse_core::Error> for CliError {
    fn from(e: biased_collapse_core::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}
