//! Error type shared by every algorithm in this crate.
//!
//! Errors are split by who is at fault:
//! - [`Error::Parse`]: the input text is malformed.
//! - [`Error::Domain`]: the input parses but is outside the domain of the
//!   requested operation (wrong semiring, negative coefficient, zero where a
//!   nonzero element is required, invalid parameter).
//! - [`Error::Capacity`]: the input is valid but exceeds a configured
//!   resource bound (degree cap, recursion depth, prime-factoring cutoff),
//!   so the computation was refused rather than attempted.
//! - [`Error::Internal`]: an invariant of the implementation itself failed.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input text. `pos` is a 0-based byte offset into the input.
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// Structurally valid input outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Valid input that exceeds a configured resource bound.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// An internal invariant failed; always a bug in this crate.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn capacity(msg: impl Into<String>) -> Self {
        Error::Capacity(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    /// Process exit code used by the command-line frontend.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 2,
            Error::Domain(_) => 3,
            Error::Capacity(_) => 4,
            Error::Internal(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
