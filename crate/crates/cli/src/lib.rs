//! Command-line front end for the measurement simulator: structured run
//! configs in, machine-readable reports out, with a fixed exit-status
//! contract (0 pass, 1 invariant failure, 2 bad input, 3 runtime error).

pub mod config;
pub mod error;
pub mod report;
pub mod run;
pub mod twirl;
pub mod verify;

pub use error::CliError;
pub use report::{ReportFile, ReportFormat, Row};
