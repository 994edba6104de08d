use thiserror::Error;

use crate::quiver::DimVector;

/// Coarse classification used by front-ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed input: bad shapes, negative entries, unknown families.
    Input,
    /// Well-formed input that violates a mathematical precondition.
    Precondition,
    /// A computed value failed a self-check. Indicates a bug.
    Consistency,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} coordinates, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("dimension vector has a negative coordinate")]
    NegativeDimension,
    #[error("dimension vector must be nonzero")]
    ZeroDimensionVector,
    #[error("enumeration box has {cells} cells, exceeding the limit of {limit}; raise --max-box or shrink the dimension vector")]
    BoxGuardExceeded { cells: u128, limit: u64 },
    #[error("dimension vector {0} is divisible")]
    Divisible(DimVector),
    #[error("stability does not vanish on the dimension vector (value {0})")]
    NonzeroOnDimension(i64),
    #[error("stability not coprime for d (witness {0})")]
    NotCoprime(DimVector),
    #[error("no separating covector found up to sup-norm {0}")]
    EtaSearchExhausted(i64),
    #[error("Euler form is not symmetric on the kernel of the stability")]
    KernelAsymmetric,
    #[error("quiver is not symmetric")]
    NotSymmetric,
    #[error("local quiver would have {count} arrows from vertex {from} to vertex {to}")]
    NegativeArrowCount { from: usize, to: usize, count: i64 },
    #[error("not a generic deformation: {0}")]
    NotGenericDeformation(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("series constant term must be {expected}")]
    ConstantTerm { expected: &'static str },
    #[error("series boxes differ")]
    BoxMismatch,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::DimensionMismatch { .. }
            | Error::InvalidQuiver(_)
            | Error::NegativeDimension
            | Error::InvalidParams(_)
            | Error::BoxMismatch => ErrorKind::Input,
            Error::Consistency(_) => ErrorKind::Consistency,
            _ => ErrorKind::Precondition,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
