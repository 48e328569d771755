use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvolvingError {
    #[error("kernel has {size} states, over the {max}-state cap for this operation")]
    TooManyStates { size: u64, max: u64 },
    #[error("threshold tree too large: {detail}")]
    EnumerationTooLarge { detail: String },
    #[error("grid value {x} outside (0, 1]")]
    GridOutOfRange { x: f64 },
    #[error("no nonempty subset satisfies |S| <= {x} |V|")]
    NoAdmissibleSubset { x: f64 },
    #[error("state {state} out of range for {size} states")]
    InvalidState { state: u32, size: u64 },
    #[error("operation needs a nonempty set")]
    EmptySet,
    #[error(transparent)]
    Kernel(#[from] exact_kernel::KernelError),
}
