use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Precondition on an argument violated.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("integer overflow in exact arithmetic")]
    Overflow,

    /// An invariant the algorithm relies on did not hold.
    #[error("internal consistency error: {0}")]
    Consistency(String),

    /// Two trails with a shared end point failed to merge.
    #[error("trail store returned inconsistent triples: {0}")]
    Corrupt(String),

    #[error("exhaustive search refused: {0}")]
    Refused(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
