//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("classes belong to different rings")]
    OwnershipMismatch,

    #[error("coefficient modes differ")]
    ModeMismatch,

    #[error("constant term is not invertible: {0}")]
    NonUnitConstant(String),

    #[error("malformed bundle: {0}")]
    MalformedBundle(String),

    #[error("operation requires rational coefficient mode")]
    RationalModeRequired,

    #[error("expected a homogeneous class of weight {expected}, got {found}")]
    WrongWeight { expected: u32, found: String },

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(u32, u32),

    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(u32, u32),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
