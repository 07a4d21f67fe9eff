use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rank {rank} for family {family}")]
    InvalidRank { family: char, rank: usize },

    #[error("cannot parse type specification `{0}`")]
    InvalidTypeSpec(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("vector {0:?} is not a root")]
    NotARoot(Vec<i32>),

    #[error("root string of a root through itself or its negative is undefined")]
    DegenerateString,

    #[error("root set is reducible ({0} components); split it first")]
    Reducible(usize),

    #[error("root set is empty")]
    Empty,

    #[error("unknown cascade index {0}")]
    UnknownIndex(String),

    #[error("simple root index {index} out of range 1..={rank}")]
    SimpleIndexOutOfRange { index: usize, rank: usize },

    #[error("bracket of subalgebra members leaves the subalgebra")]
    NotClosed,

    #[error("subalgebra is not a Borel subalgebra of the cascade's root system")]
    NotBorel,

    #[error("factors do not form a direct product: {0}")]
    NotAProduct(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
