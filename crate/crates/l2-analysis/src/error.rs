use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum L2Error {
    #[error("function value {value} at state {state} outside [0, 1]")]
    ValueOutOfRange { state: usize, value: f64 },
    #[error("sizes do not match: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("kernel rows are not doubly stochastic within {tolerance}: {detail}")]
    NotDoublyStochastic { detail: String, tolerance: f64 },
    #[error("distribution invalid: {0}")]
    BadDistribution(String),
    #[error("mean {mu} violates the hypothesis mu <= 1/2")]
    MeanTooLarge { mu: f64 },
    #[error("exponent p must exceed 1, got {p}")]
    BadExponent { p: f64 },
    #[error("set must be a proper nonempty subset of the {size} states")]
    ImproperSubset { size: usize },
}
