//! Error taxonomy shared by all modules.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Semantically invalid input (loops, duplicate edges, out-of-range ids,
    /// violated argument contracts).
    #[error("invalid input: {0}")]
    Input(String),

    /// Syntactically malformed file content.
    #[error("parse error at line {line}, offset {offset}: {message}")]
    Parse {
        line: usize,
        offset: usize,
        message: String,
    },

    /// Search-node budget exhausted. Carries the best lower bound proved so
    /// far; never a silent approximation.
    #[error("node budget {budget} exceeded; best known lower bound is {best_lower_bound}")]
    Budget {
        budget: u64,
        best_lower_bound: usize,
    },

    /// A documented operation precondition does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// Parameters outside the admissible range of a construction.
    #[error("invalid parameters: {0}")]
    Parameter(String),

    /// A constructed artifact failed one of its internal distance checks.
    #[error("validation failed: {0}")]
    Validation(String),

    /// A certified packing did not yield a satisfying assignment.
    #[error("assignment extraction failed: {0}")]
    Extraction(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn parse(line: usize, offset: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            offset,
            message: msg.into(),
        }
    }
}
