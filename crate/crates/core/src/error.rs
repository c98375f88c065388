//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A structure violates a construction invariant (ragged blocks,
    /// out-of-range points, duplicate entries, bad partitions, ...).
    #[error("malformed structure: {0}")]
    Structure(String),

    /// Arguments outside an operation's domain (divisibility failures,
    /// ingredient parameter mismatches, zero denominators, ...).
    #[error("parameter error: {0}")]
    Parameter(String),

    /// The requested Hadamard order is not reachable by the implemented
    /// constructions. Distinct from nonexistence: the order may still exist.
    #[error("no implemented construction reaches Hadamard order {order}")]
    ConstructionUnavailable { order: usize },

    /// A constructor's output failed its own verification. Indicates a bug
    /// in an ingredient rather than in the caller's input.
    #[error("construction output failed verification: {0}")]
    ConstructionFailed(String),

    /// Input document could not be parsed.
    #[error("parse error at {locus}: {msg}")]
    Parse { locus: String, msg: String },
}

impl Error {
    pub fn structure(msg: impl Into<String>) -> Self {
        Error::Structure(msg.into())
    }

    pub fn parameter(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub fn parse(locus: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Parse {
            locus: locus.into(),
            msg: msg.into(),
        }
    }
}
