use std::fmt;

use maxplus_transience::Error;

/// Failure of a subcommand, carrying its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Malformed input or arguments: exit code 2.
    Input(String),
    /// A checked property does not hold: exit code 1.
    Violation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Violation(_) => 1,
            CliError::Input(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(message) => write!(f, "error: {message}"),
            CliError::Violation(message) => write!(f, "violation: {message}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(error: Error) -> Self {
        match error {
            Error::NotStabilized { .. } => CliError::Violation(error.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(error: std::io::Error) -> Self {
        CliError::Input(error.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
