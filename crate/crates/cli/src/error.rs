use thiserror::Error;

use crate::params::ParamError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Compute(emergent_core::Error),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Compute(_) => 1,
            CliError::Config(_) => 2,
            CliError::Invariant(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl From<ParamError> for CliError {
    fn from(e: ParamError) -> Self {
        CliError::Config(e.to_string())
    }
}

/// Library errors surface as computation failures when the inputs were
/// well formed but carry nothing to compute (an uncorrelated graph), as
/// invariant failures when a checked identity breaks, and as configuration
/// errors otherwise, since every remaining case traces back to a parameter.
impl From<emergent_core::Error> for CliError {
    fn from(e: emergent_core::Error) -> Self {
        match e {
            emergent_core::Error::NoCorrelations => CliError::Compute(e),
            emergent_core::Error::InvariantViolation(msg) => CliError::Invariant(msg),
            other => CliError::Config(other.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
