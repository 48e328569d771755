//! Normalized `l1`/`l2` calculus for functions `f: V -> [0, 1]` on finite
//! doubly stochastic chains, with the two classical inequalities used to
//! turn subset-chain mixing into an `l2` contraction statement.
//!
//! Norms carry the uniform `1/|V|` normalization throughout:
//! `||f||_1 = mean(f)`, `||f||_2^2 = mean(f^2)`, `<f, g> = mean(f g)`.

mod contraction;
mod error;
mod func;
mod kernel;
mod lemmas;

pub use contraction::{contraction_report, ContractionReport};
pub use error::L2Error;
pub use func::FuncVector;
pub use kernel::DenseKernel;
pub use lemmas::{
    ball_lemma_check, peres_lemma_check, quarter_power_margin, sweep_to_csv, BallReport,
    PeresReport, SweepRow,
};

pub type Result<T> = std::result::Result<T, L2Error>;
