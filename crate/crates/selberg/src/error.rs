//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An operation was called outside its documented domain.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A construction would exceed a hard size cap.
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    /// Two structures that must agree (e.g. the middle sets of a
    /// composition) do not.
    #[error("mismatch: {0}")]
    Mismatch(String),

    /// A materialized pairing failed verification.
    #[error("invalid pairing: {0}")]
    InvalidPairing(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn mismatch(msg: impl Into<String>) -> Self {
        Error::Mismatch(msg.into())
    }
}
