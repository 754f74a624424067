use std::path::PathBuf;

use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed permutation {text:?}: {reason}")]
    MalformedPermutation { text: String, reason: String },

    #[error("malformed inflation {text:?}: {reason}")]
    MalformedInflation { text: String, reason: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("Möbius value overflowed 64-bit arithmetic")]
    Overflow,

    #[error("cache file {path}: {reason}")]
    CacheCorrupt { path: PathBuf, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
