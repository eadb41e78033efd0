use thiserror::Error;

use crate::posets::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The input is well formed but the requested size exceeds a guard.
    #[error("{what}: size {requested} exceeds the limit of {limit}")]
    Capacity {
        what: &'static str,
        requested: usize,
        limit: usize,
    },

    #[error("invalid word {input:?}: {reason}")]
    InvalidWord { input: String, reason: String },

    #[error("word {0} is not packed")]
    NotPacked(String),

    #[error("invalid ordered set partition: {0}")]
    InvalidPartition(String),

    #[error("invalid relation: {0}")]
    InvalidRelation(String),

    #[error("not a weak plane poset: {0}")]
    NotWeakPlane(Violation),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("element {element} is out of range for a ground set of size {n}")]
    OutOfRange { element: usize, n: usize },

    #[error("malformed json: {0}")]
    Json(String),
}

impl Error {
    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. })
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
