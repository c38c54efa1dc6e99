use thiserror::Error;

use crate::exactlin::FieldSpec;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("mixed fields: expected {expected}, found {found}")]
    MixedField { expected: FieldSpec, found: FieldSpec },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("element does not belong to this ring: {0}")]
    ParentMismatch(String),

    #[error("ring order {order} exceeds enumeration bound {bound}")]
    BoundExceeded { order: u128, bound: u128 },

    #[error("radical undecided: {0}")]
    RadicalUndecided(String),

    #[error("radical post-check failed: {0}")]
    RadicalCheckFailed(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}
