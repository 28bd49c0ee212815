//! Error kinds mapped to process exit codes: 2 for configuration problems,
//! 3 for scenarios the model rejects, 4 for output I/O failures.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("infeasible scenario: {0}")]
    Infeasible(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        Self::Config(msg.into())
    }

    pub fn infeasible(msg: impl Into<String>) -> Self {
        Self::Infeasible(msg.into())
    }

    pub fn io(msg: impl Into<String>) -> Self {
        Self::Io(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Infeasible(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl From<corrblock::montecarlo::McError> for CliError {
    fn from(e: corrblock::montecarlo::McError) -> Self {
        CliError::infeasible(e.to_string())
    }
}

impl From<corrblock::blocking::BlockingError> for CliError {
    fn from(e: corrblock::blocking::BlockingError) -> Self {
        CliError::infeasible(e.to_string())
    }
}
