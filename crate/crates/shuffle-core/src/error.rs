use thiserror::Error;

/// Contract violations for shuffle operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShuffleError {
    #[error("dimension {d} outside supported range 1..={max}")]
    InvalidDimension { d: u32, max: u32 },
    #[error("direction {j} invalid for dimension {d} (valid range 1..={d})")]
    InvalidDirection { j: u32, d: u32 },
    #[error("truncation depth {d_star} invalid for dimension {d} (valid range 1..={d})")]
    InvalidTruncation { d_star: u32, d: u32 },
    #[error("position index {index} out of range for dimension {d}")]
    InvalidPosition { index: u32, d: u32 },
    #[error("card id {card} unknown for dimension {d}")]
    UnknownCard { card: u32, d: u32 },
    #[error("occupant table is not a bijection on 0..2^{d}")]
    NotABijection { d: u32 },
    #[error("empty card set")]
    EmptyCardSet,
    #[error("malformed trace line {line}: {reason}")]
    MalformedTrace { line: usize, reason: String },
}
