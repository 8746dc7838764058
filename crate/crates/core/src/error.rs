use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The requested syndrome is not in the column space of the matrix.
    #[error("syndrome is outside the column space (inconsistent system)")]
    Inconsistent,
    /// Operand sizes do not line up.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("code length {0} does not give an integer circulant size")]
    BadLength(usize),
    #[error("cell ({row}, {col}) is outside the prototype matrix")]
    OutOfRange { row: usize, col: usize },
    #[error("block row {0} contains a zero block")]
    ZeroBlock(usize),
    #[error("invalid block-row groups: {0}")]
    BadGroups(&'static str),
    #[error("level-1 checks are not in the row space of the level-0 checks")]
    NotNested,
    #[error("level-1 row {0} has an odd dot product with the level-0 codeword")]
    OddDot(usize),
    #[error("code dimension {0} is too large for exhaustive enumeration")]
    TooLarge(usize),
    #[error("invalid prototype cell: {0}")]
    BadCell(&'static str),
}
