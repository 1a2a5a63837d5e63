use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("operands use different variable registries")]
    RegistryMismatch,
    #[error("polynomial is not divisible by x{j} - x{i}")]
    NotDivisible { i: usize, j: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("incompatible truncations: {0}")]
    TruncationMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("ragged matrix rows")]
    Ragged,
    #[error("pfaffian of odd dimension {0}")]
    OddDimension(usize),
    #[error("matrix is not antisymmetric at ({0}, {1})")]
    NotAntisymmetric(usize, usize),
    #[error("weight sums to {weight} but shape has size {shape}")]
    SizeMismatch { shape: u64, weight: u64 },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("jet order {have} is below the required {need}")]
    InsufficientJetOrder { have: usize, need: usize },
    #[error("truncation too coarse: {0}")]
    InsufficientTruncation(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown special function `{0}`")]
    UnknownFunction(String),
    #[error("internal invariant breached: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// True when the failure is a broken internal invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}
