use thiserror::Error;

use crate::liealg::LieError;
use crate::multivec::MultivecError;
use crate::poisson::PoissonError;
use crate::stability::StabilityError;

/// Top-level error. [`Error::exit_code`] maps each variant onto the CLI's
/// exit status.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Multivec(#[from] MultivecError),
    #[error(transparent)]
    Poisson(#[from] PoissonError),
    #[error(transparent)]
    Stability(#[from] StabilityError),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// 2 for unreadable or malformed input, 3 for a violated mathematical
    /// precondition, 4 for an internal invariant breach.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::Io { .. } => 2,
            Error::Internal(_) => 4,
            Error::Stability(StabilityError::InvariantBreach(_)) => 4,
            _ => 3,
        }
    }
}
