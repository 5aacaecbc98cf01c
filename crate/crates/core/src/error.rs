use thiserror::Error;

use crate::gsc::Mode;

/// Why a container failed to decode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecodeCategory {
    Magic,
    Version,
    Curve,
    Length,
    Point,
    Scalar,
    Field,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("scalar is zero or out of range")]
    InvalidScalar,
    #[error("the vacant identity cannot hold keys")]
    VacantIdentity,
    #[error("invalid identity combination: {0}")]
    InvalidModeCombination(&'static str),
    #[error("{mode} mode requires {rule}")]
    MissingKey { mode: Mode, rule: &'static str },
    #[error("key belongs to a different identity")]
    KeyMismatch,
    #[error("identity must be {expected} bytes, got {actual}")]
    MalformedIdentity { expected: usize, actual: usize },
    #[error("identity label must be 1..={max} bytes, got {actual}")]
    IdentityLabel { max: usize, actual: usize },
    #[error("message block must be {expected} bytes, got {actual}")]
    MalformedMessage { expected: usize, actual: usize },
    #[error("invalid system parameters: {0}")]
    InvalidParams(&'static str),
    /// Cryptographic rejection. Carries no detail by design of the API.
    #[error("rejected")]
    Reject,
    #[error("decode error ({category:?}): {detail}")]
    Decode { category: DecodeCategory, detail: &'static str },
    #[error("malformed padding")]
    Padding,
    #[error("payload too large for the padding length field")]
    PayloadTooLarge,
    #[error("master key could not be unlocked")]
    Unlock,
    #[error("key derivation failed: {0}")]
    Kdf(String),
    #[error("{0}")]
    Usage(String),
    #[error("oracle query error: {0}")]
    Query(&'static str),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn decode(category: DecodeCategory, detail: &'static str) -> Self {
        Error::Decode { category, detail }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
