use thiserror::Error;

use crate::index::MultiIndex;
use crate::tensor::Domain;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index entry {entry} is outside 1..={dim}")]
    IndexOutOfRange { entry: usize, dim: usize },

    #[error("index has {found} entries but the tensor order is {order}")]
    WrongIndexLength { found: usize, order: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("order {order} is below the minimum {min}")]
    InvalidOrder { order: usize, min: usize },

    #[error("tensor of order {order} and dimension {dim} is too large to store")]
    TooLarge { order: usize, dim: usize },

    /// Both positions are 0-based.
    #[error("factor {factor} has a negative entry at coordinate {coordinate}")]
    NegativeFactor { factor: usize, coordinate: usize },

    #[error("empty vector family")]
    EmptyFamily,

    #[error("m-norm is undefined: the m-inner power is negative")]
    UndefinedNorm,

    #[error("expected a 2-dimensional tensor, found dimension {0}")]
    WrongDimension(usize),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("value {value} at {index} is outside the {domain} domain")]
    DomainError {
        index: String,
        value: String,
        domain: Domain,
    },

    #[error("tensor is not diagonal: nonzero entry at {0}")]
    NotDiagonal(MultiIndex),

    #[error("invalid subset: {0}")]
    BadSubset(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("duplicate entry for canonical index {0}")]
    DuplicateIndex(MultiIndex),

    #[error("search visited more than {cap} nodes")]
    SearchSpaceTooLarge { cap: u64 },

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
