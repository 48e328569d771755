use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChameleonError {
    #[error("need more than 2^{{d-1}} = {min} nonblack cards, got {b}")]
    TooFewNonblack { b: u32, min: u32 },
    #[error("card list contains duplicates or out-of-range ids")]
    BadCardList,
    #[error("de-pink period must be at least one round")]
    BadPeriod,
    #[error("card sets must be disjoint")]
    OverlappingSets,
    #[error("window must cover at least one round")]
    BadWindow,
    #[error("exact enumeration needs {bits} coin bits, over the {max}-bit cap")]
    EnumerationTooLarge { bits: u32, max: u32 },
    #[error("hypothesis p <= 3/4 violated: p = {p}")]
    TailHypothesis { p: f64 },
    #[error(transparent)]
    Shuffle(#[from] shuffle_core::ShuffleError),
}
