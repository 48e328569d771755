//! Report generation and the two calculators sitting on top of the shuffle
//! laboratory: the root-profile mixing-time iteration and the solver for
//! the implicit constants of the chameleon argument. The `mixbound` binary
//! dispatches to these and to the library crates.

pub mod bound;
pub mod config;
pub mod constants;
pub mod report;
pub mod runs;
pub mod verify;

pub use bound::{closed_form_counts, mixing_bound_from_profile, BoundResult, ProfileBoundSpec};
pub use config::{ChainKind, RunConfig, ScheduleKind};
pub use constants::{
    alpha_constraint_margin, c_constraint_margin, constants_solver, trunccor_check, ConstantsReport,
    TruncCorFailure, BETA,
};
pub use verify::{run_suite, CheckResult};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum MixboundError {
    #[error("invalid bound parameters: {0}")]
    BadBoundSpec(String),
    #[error("iteration cap {cap} reached before the threshold")]
    IterationCap { cap: u64 },
    #[error("unknown {what}: {value}")]
    BadFlag { what: &'static str, value: String },
    #[error("config file {path}: {detail}")]
    BadConfigFile { path: String, detail: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Shuffle(#[from] shuffle_core::ShuffleError),
    #[error(transparent)]
    Kernel(#[from] exact_kernel::KernelError),
    #[error(transparent)]
    Evolving(#[from] evolving_sets::EvolvingError),
    #[error(transparent)]
    Chameleon(#[from] chameleon::ChameleonError),
    #[error(transparent)]
    L2(#[from] l2_analysis::L2Error),
}

pub type Result<T> = std::result::Result<T, MixboundError>;
