//! The evolving-set process over a doubly stochastic kernel.
//!
//! From a subset `S` of the state space, draw `U` uniform on `[0, 1]` and
//! move to `S~ = { y : p(S, y) >= U }`. The set size is a martingale, the
//! singleton process is dual to the chain itself
//! (`p^n(x, y) = P_{{x}}(y in S_n)`), and complements evolve as the same
//! process. The quantity `psi(S) = 1 - E sqrt(|S~| / |S|)` drives the
//! mixing-time machinery; its infimum over small sets is the root profile.
//!
//! The one-step law of the process has at most `|V| + 1` atoms (one per
//! distinct value of `p(S, .)`), which makes exact integration over `U`
//! cheap: every expectation here is computed by summing atoms, with the
//! half-open interval convention `U in (v_{i-1}, v_i]` so that the `>=`
//! versus `>` threshold choice is immaterial.
//!
//! Sets are bitmasks over state indices, so everything is capped at 32
//! states (exhaustive profile scans at 24).

mod duality;
mod error;
mod lemma;
mod process;
mod profile;

pub use duality::{
    complement_law_matches, complement_trajectory_gap, duality_monte_carlo, verify_duality_exact,
    DualityCaps, DualityReport, McDualityReport,
};
pub use error::EvolvingError;
pub use lemma::{lemma31_check, Lemma31Report};
pub use process::{es_step, exact_expectations, one_step_law, OneStepLaw, StepExpectations};
pub use profile::{profile_to_csv, root_profile, ProfileMode, RootProfilePoint};

pub type Result<T> = std::result::Result<T, EvolvingError>;
