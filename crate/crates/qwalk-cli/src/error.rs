use qwalk::{AnalysisError, SearchError};
use std::path::Path;
use thiserror::Error;

/// Errors are split by exit code: 2 for anything wrong with configuration
/// or input data, 3 for structural invariant violations raised by the
/// builders or the simulation core, 1 for output I/O failures.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("invariant violation: {0}")]
    Invariant(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Invariant(_) => 3,
            CliError::Io(_) => 1,
        }
    }

    pub fn config(path: &Path, message: impl std::fmt::Display) -> Self {
        CliError::Config(format!("{}: {message}", path.display()))
    }
}

impl From<SearchError> for CliError {
    fn from(err: SearchError) -> Self {
        CliError::Invariant(err.to_string())
    }
}

impl From<qwalk::GraphError> for CliError {
    fn from(err: qwalk::GraphError) -> Self {
        CliError::Invariant(err.to_string())
    }
}

impl From<AnalysisError> for CliError {
    fn from(err: AnalysisError) -> Self {
        CliError::Config(err.to_string())
    }
}
