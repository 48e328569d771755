use serde_json::json;
use shuffle_core::CoinStream;

use crate::state::{ChameleonState, Color};
use crate::Result;

/// Aggregated folded-red-mass data at one de-pinking checkpoint.
#[derive(Debug, Clone)]
pub struct DecayPoint {
    pub checkpoint: u64,
    /// `E sqrt(min(Z, k - Z))` right after the de-pinking.
    pub mean_sqrt_sharp: f64,
    pub se: f64,
    /// Fraction of trials whose window pinkened at least `|A_n| / (8 d)`
    /// cards, `A_n` being the smaller color side at the window start.
    pub pinkening_bound_fraction: f64,
    /// `mean_sqrt_sharp / previous mean`, the measured per-checkpoint decay.
    pub decay_ratio: Option<f64>,
}

/// Run `trials` chameleon processes for `rounds` rounds with de-pinkings
/// every `depink_period` rounds and aggregate the folded red mass at each
/// checkpoint. Cards `0..b` are the nonblack family, card `b - 1` red.
pub fn red_decay_trace(
    d: u32,
    b: u32,
    depink_period: u32,
    rounds: u64,
    trials: u64,
    seed: u64,
) -> Result<Vec<DecayPoint>> {
    let cards: Vec<u32> = (0..b).collect();
    let checkpoints = rounds / depink_period as u64;
    let mut sqrt_sum = vec![0.0f64; checkpoints as usize];
    let mut sqrt_sq_sum = vec![0.0f64; checkpoints as usize];
    let mut bound_hits = vec![0u64; checkpoints as usize];

    for trial in 0..trials {
        let mut coins = CoinStream::for_trial(seed, trial);
        let mut state = ChameleonState::init(d, depink_period, &cards)?;
        for checkpoint in 0..checkpoints {
            let window_side = state.smaller_side().len() as f64;
            // step the window by hand so the pink count is readable just
            // before the de-pinking; coin order matches advance_steps
            for _ in 0..depink_period as u64 * 2 * d as u64 {
                state.ring_step(&mut coins)?;
            }
            let pinkened = f64::from(state.count(Color::Pink));
            debug_assert!(state.depink_due());
            state.depink(coins.next_bit());

            let sharp_root = state.red_mass_sharp().sqrt();
            sqrt_sum[checkpoint as usize] += sharp_root;
            sqrt_sq_sum[checkpoint as usize] += sharp_root * sharp_root;
            if pinkened >= window_side / (8.0 * f64::from(d)) {
                bound_hits[checkpoint as usize] += 1;
            }
        }
    }

    let nf = trials as f64;
    let mut points: Vec<DecayPoint> = Vec::with_capacity(checkpoints as usize);
    for c in 0..checkpoints as usize {
        let mean = sqrt_sum[c] / nf;
        let var = (sqrt_sq_sum[c] / nf - mean * mean).max(0.0);
        let decay_ratio = points.last().and_then(|prev: &DecayPoint| {
            (prev.mean_sqrt_sharp > 0.0).then(|| mean / prev.mean_sqrt_sharp)
        });
        points.push(DecayPoint {
            checkpoint: c as u64 + 1,
            mean_sqrt_sharp: mean,
            se: (var / nf).sqrt(),
            pinkening_bound_fraction: bound_hits[c] as f64 / nf,
            decay_ratio,
        });
    }
    Ok(points)
}

/// Per-round summary of one chameleon run.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundLog {
    pub round: u64,
    pub red_mass: f64,
    pub pink: u32,
    pub red: u32,
    pub white: u32,
    pub black: u32,
}

impl RoundLog {
    /// One JSON line: `{"round":..,"Z":..,"P":..,"colors":{..}}`.
    pub fn to_json_line(&self) -> String {
        json!({
            "round": self.round,
            "Z": self.red_mass,
            "P": self.pink,
            "colors": {
                "red": self.red,
                "white": self.white,
                "pink": self.pink,
                "black": self.black,
            },
        })
        .to_string()
    }
}

/// Run one seeded chameleon process and log each round; the JSON-lines form
/// of the log is the export format for external tooling.
pub fn run_with_round_log(
    d: u32,
    cards: &[u32],
    depink_period: u32,
    rounds: u64,
    seed: u64,
) -> Result<(Vec<RoundLog>, ChameleonState)> {
    let mut coins = CoinStream::new(seed);
    let mut state = ChameleonState::init(d, depink_period, cards)?;
    let mut log = Vec::with_capacity(rounds as usize);
    for round in 1..=rounds {
        state.advance_rounds(1, &mut coins)?;
        log.push(RoundLog {
            round,
            red_mass: state.red_mass(),
            pink: state.count(Color::Pink),
            red: state.count(Color::Red),
            white: state.count(Color::White),
            black: state.count(Color::Black),
        });
    }
    Ok((log, state))
}

/// Margin of `(sqrt(1+u) + sqrt(1-u)) / 2 <= exp(-u^2 / 8)`;
/// nonnegative on `[0, 1]`.
pub fn sqrt_pair_margin(u: f64) -> f64 {
    (-u * u / 8.0).exp() - 0.5 * ((1.0 + u).sqrt() + (1.0 - u).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d1_first_checkpoint_kills_the_sharp_mass() {
        // pinkening is forced in round one; the collective coin then sends
        // Z to 0 or 2, and min(Z, 2 - Z) = 0 either way
        let points = red_decay_trace(1, 2, 1, 3, 50, 4).unwrap();
        assert_eq!(points.len(), 3);
        assert_eq!(points[0].mean_sqrt_sharp, 0.0);
        assert_eq!(points[0].pinkening_bound_fraction, 1.0);
    }

    #[test]
    fn decay_curve_shrinks_at_d3() {
        let points = red_decay_trace(3, 5, 2, 12, 400, 9).unwrap();
        assert_eq!(points.len(), 6);
        let first = points.first().unwrap().mean_sqrt_sharp;
        let last = points.last().unwrap().mean_sqrt_sharp;
        assert!(last <= first, "no decay: first {first}, last {last}");
    }

    #[test]
    fn round_log_serializes_histogram() {
        let (log, _) = run_with_round_log(2, &[0, 1, 2], 1, 2, 5).unwrap();
        assert_eq!(log.len(), 2);
        let line = log[0].to_json_line();
        assert!(line.contains("\"round\":1"));
        assert!(line.contains("\"colors\""));
    }

    #[test]
    fn sqrt_pair_margin_nonnegative_on_grid() {
        for i in 0..=10_000 {
            let u = i as f64 / 10_000.0;
            assert!(sqrt_pair_margin(u) >= -1e-15, "u = {u}");
        }
    }
}
