use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("state space {spec} not supported here: {reason}")]
    UnsupportedSpec { spec: String, reason: String },
    #[error("operator for {spec} needs {entries} row entries, over the cap {cap}")]
    CapExceeded { spec: String, entries: u64, cap: u64 },
    #[error("dyadic precision exhausted (denominator beyond 2^{max})")]
    DyadicPrecision { max: u32 },
    #[error("specs do not match: {left} vs {right}")]
    SpecMismatch { left: String, right: String },
    #[error("state {state} out of range for space of size {size}")]
    InvalidState { state: u64, size: u64 },
    #[error("rows are not doubly stochastic: {detail}")]
    NotDoublyStochastic { detail: String },
    #[error("no convergence within {cap} rounds")]
    NoConvergence { cap: u64 },
    #[error(transparent)]
    Shuffle(#[from] shuffle_core::ShuffleError),
}
