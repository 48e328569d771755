//! Hypercube card shuffles, deterministic given their coin stream.
//!
//! A deck of `2^d` cards occupies the vertices of the d-dimensional
//! hypercube. The basic move is the kernel `K_j`: every edge in coordinate
//! direction `j` *rings*, i.e. swaps its two occupants on an independent
//! fair coin. Composing the kernels in different orders gives the Thorp
//! shuffle (`K_1 .. K_d`, one step per time tick), the zigzag shuffle
//! (`K_1 .. K_d K_d .. K_1` per round), truncated partial rounds, and the
//! classic two-pile description (one `K_1` plus a cyclic bit shift).
//!
//! Everything here is a pure function of its inputs; randomness enters only
//! through an explicit [`CoinStream`], so any run can be replayed bit for
//! bit from its seed. Coins for a `K_j` step are always consumed in
//! ascending order of the edge's lower endpoint index, which fixes a
//! canonical trace format shared by every consumer.

mod coins;
mod deck;
mod error;
mod position;
mod schedule;
mod sets;
mod step;
mod trace;

pub use coins::CoinStream;
pub use deck::DeckState;
pub use error::ShuffleError;
pub use position::{direction_mask, kj_edge_lowers, rotate_left, Position, MAX_DIMENSION};
pub use schedule::{zigzag_direction, Schedule, StepOp};
pub use sets::{project_set, set_step};
pub use step::{
    apply_kj, apply_kj_traced, classic_thorp_pass, rotate_deck, run_schedule, thorp_step,
};
pub use trace::{EdgeEvent, RunTrace};

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, ShuffleError>;
