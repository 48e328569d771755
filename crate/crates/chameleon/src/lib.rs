//! The chameleon process: a zigzag shuffle whose cards carry colors.
//!
//! A fixed family of `b > 2^{d-1}` nonblack cards starts as `b - 1` white
//! plus one red; everything else is black and never changes. When a ringing
//! edge connects a red card to a white card, both turn pink (whatever the
//! swap coin does). At the end of every `T` rounds all pink cards are
//! collectively re-colored red or white on one fair coin.
//!
//! The observable `rho_n(x)` (one for a red card at `x`, one half for pink)
//! tracks the law of the distinguished card: conditioned on the trajectory
//! of nonblack positions, `P(X_n(x_b) = x) = E(rho_n(x))`. Its total mass
//! is conserved between de-pinkings and is a martingale across them. The
//! antisocial counts `Z(A, B, j)` and the avoids/mixes predicates over round
//! windows drive the decay of the folded red mass `min(Z, k - Z)`.

mod antisocial;
mod bounds;
mod decay;
mod error;
mod identity;
mod state;

pub use antisocial::{antisocial_counts, avoids, mixes, SplitSearch};
pub use bounds::{
    moment_bound_exact, moment_bound_monte_carlo, tail_bound_check, MomentCheck, TailReport,
};
pub use decay::{red_decay_trace, run_with_round_log, sqrt_pair_margin, DecayPoint, RoundLog};
pub use error::ChameleonError;
pub use identity::{
    verify_identity_exact, verify_identity_monte_carlo, ExactIdentityReport, McIdentityReport,
};
pub use state::{ChameleonState, Color};

pub type Result<T> = std::result::Result<T, ChameleonError>;
