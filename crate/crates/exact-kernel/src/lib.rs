//! Exact finite-state transition operators for the shuffle chains small
//! enough to enumerate.
//!
//! Single steps and schedule compositions are kept in dyadic-exact
//! arithmetic (every probability has a power-of-two denominator), so row and
//! column sums can be verified to be exactly one. Matrix powers switch to
//! floating point: denominators grow exponentially with the step count and
//! the downstream checks only need 1e-12 agreement.
//!
//! Three state spaces are enumerable at desk scale: full permutation decks
//! (d <= 3), the position of a single tracked card, and unordered k-subsets
//! of positions. A fourth, `Custom`, admits externally supplied kernels such
//! as the two-state half/half chain used widely in tests.

mod dist;
mod dyadic;
mod error;
mod export;
mod lambda;
mod matrix;
mod mixing;
mod operator;
mod space;

pub use dist::{exact_deck_distribution, step_dist, DeckDistribution, DistVector};
pub use dyadic::Dyadic;
pub use error::KernelError;
pub use export::{curve_to_csv, curve_to_json, operator_to_json};
pub use lambda::{lambda_k, lambda_sequence, smallest_round_below};
pub use matrix::DenseMatrix;
pub use mixing::{distance_curve, mixing_time, mixing_time_all_starts, uniform_distance, DEFAULT_MIXING_THRESHOLD, DEFAULT_ROUND_CAP};
pub use operator::{two_state_half_chain, OperatorCaps, TransitionOperator};
pub use space::StateSpaceSpec;

pub type Result<T> = std::result::Result<T, KernelError>;

/// Small shuffle chains used as a shared verification matrix by the
/// evolving-set and l2 modules: kernels with at most `max_states` states
/// drawn from the enumerable families, under both round schedules.
pub fn small_chain_matrix(max_states: u64) -> Vec<(String, TransitionOperator)> {
    use shuffle_core::Schedule;
    let caps = OperatorCaps::default();
    let mut out = Vec::new();
    out.push(("two-state-half".to_string(), two_state_half_chain()));
    let schedules = [Schedule::ThorpRound, Schedule::ZigzagRound];
    let mut add = |spec: StateSpaceSpec| {
        if spec.size() > max_states {
            return;
        }
        for schedule in &schedules {
            if let Ok(op) = TransitionOperator::build(spec.clone(), schedule, &caps) {
                out.push((format!("{}/{}", spec.label(), schedule.label()), op));
            }
        }
    };
    add(StateSpaceSpec::full_permutations(1).unwrap());
    if let Ok(spec) = StateSpaceSpec::full_permutations(2) {
        add(spec);
    }
    for d in 1..=3 {
        add(StateSpaceSpec::single_card(d).unwrap());
    }
    for (d, k) in [(2u32, 1u32), (2, 2), (2, 3), (3, 1), (3, 7)] {
        add(StateSpaceSpec::k_subset(d, k).unwrap());
    }
    out.retain(|(_, op)| op.size() <= max_states);
    out
}
