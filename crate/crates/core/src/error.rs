use thiserror::Error;

use crate::chain::ChainError;
use crate::peel::PeelError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parameter {name} must be {requirement}, got {value}")]
    InvalidParameter {
        name: &'static str,
        requirement: &'static str,
        value: String,
    },

    #[error("{what} {value} exceeds the limit {limit}")]
    LimitExceeded {
        what: &'static str,
        value: u64,
        limit: u64,
    },

    #[error(transparent)]
    Chain(#[from] ChainError),

    #[error(transparent)]
    Peel(#[from] PeelError),

    /// An internal invariant of a construction failed. This is a bug.
    #[error("construction invariant violated: {0}")]
    Construction(String),

    #[error("linear programming backend failed: {0}")]
    Backend(String),
}

impl Error {
    pub(crate) fn invalid(
        name: &'static str,
        requirement: &'static str,
        value: impl std::fmt::Display,
    ) -> Self {
        Error::InvalidParameter {
            name,
            requirement,
            value: value.to_string(),
        }
    }
}
