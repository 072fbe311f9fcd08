//! Library half of the `cch` binary: document parsing, command
//! implementations, and report types, kept separate so integration tests can
//! drive commands in-process.

pub mod commands;
pub mod doc;
pub mod report;

use cch_core::CchError;

/// Output format selector shared by every command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// Failures split by exit code: input problems (exit 2) versus computation
/// errors (exit 3). Mathematical failures like a non-squaring differential
/// are data, not errors; those render a report and exit 4.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Compute(CchError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Compute(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "input error: {msg}"),
            CliError::Compute(e) => write!(f, "computation error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<CchError> for CliError {
    fn from(e: CchError) -> Self {
        match e {
            CchError::InfiniteActionCap => CliError::Input(
                "an explicit action cap is required; pass --action-cap or set one in the document"
                    .into(),
            ),
            other => CliError::Compute(other),
        }
    }
}
