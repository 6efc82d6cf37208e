use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    /// A resource cap refused the computation. `quantity` names what was
    /// measured, e.g. `degree^k = 24^5`.
    #[error("budget exceeded in {engine}: {quantity} = {needed} exceeds limit {limit}")]
    Budget {
        engine: &'static str,
        quantity: String,
        needed: u128,
        limit: u128,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0} is not a block of the group")]
    NotABlock(String),

    #[error("partition is not invariant under the group")]
    NotInvariant,

    #[error("group is not transitive")]
    Intransitive,

    #[error("matrix is singular")]
    Singular,

    #[error("element does not respect the tensor decomposition: simple tensor {witness} maps to non-simple vector {image}")]
    NotDecomposable { witness: usize, image: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("unknown corpus entry {0:?}")]
    UnknownCorpus(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
