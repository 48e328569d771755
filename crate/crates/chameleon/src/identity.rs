use std::collections::HashMap;

use shuffle_core::{zigzag_direction, CoinStream, DeckState};

use crate::state::ChameleonState;
use crate::{ChameleonError, Result};

const MAX_EXACT_COIN_BITS: u32 = 22;

/// Exact verification of the conditional identity
/// `P(X_n(x_b) = x | W_1..W_n) = E(rho_n(x) | W_1..W_n)`
/// by enumerating every coin sequence (ring coins plus de-pink coins) and
/// grouping outcomes by the trajectory of nonblack position sets.
#[derive(Debug, Clone)]
pub struct ExactIdentityReport {
    pub coin_bits: u32,
    pub groups: usize,
    pub max_gap: f64,
    pub pass: bool,
}

pub fn verify_identity_exact(
    d: u32,
    cards: &[u32],
    n_steps: u64,
    depink_period: u32,
    tolerance: f64,
) -> Result<ExactIdentityReport> {
    let template = ChameleonState::init(d, depink_period, cards)?;
    let positions = 1u32 << d;
    let edges_per_step = 1u64 << (d - 1);
    let steps_per_round = 2 * d as u64;
    let completed_rounds = n_steps / steps_per_round;
    let depinks = completed_rounds / depink_period as u64;
    let total_bits = n_steps * edges_per_step + depinks;
    if d > 2 || total_bits > MAX_EXACT_COIN_BITS as u64 {
        return Err(ChameleonError::EnumerationTooLarge {
            bits: total_bits as u32,
            max: MAX_EXACT_COIN_BITS,
        });
    }
    let total_bits = total_bits as u32;
    let distinguished = *cards.last().expect("card list validated nonempty");

    struct Group {
        count: u64,
        rho_sum: Vec<f64>,
        position_hits: Vec<u64>,
    }
    let mut groups: HashMap<Vec<u64>, Group> = HashMap::new();

    for pattern in 0..(1u64 << total_bits) {
        let mut cursor = 0u32;
        let mut next_bit = || {
            let bit = pattern >> cursor & 1 == 1;
            cursor += 1;
            bit
        };
        let mut state = template.clone();
        let mut trajectory = Vec::with_capacity(n_steps as usize);
        for _ in 0..n_steps {
            state.ring_step_with(&mut next_bit)?;
            trajectory.push(state.nonblack_position_mask());
            if state.depink_due() {
                let to_red = next_bit();
                state.depink(to_red);
            }
        }
        debug_assert_eq!(cursor, total_bits);
        let entry = groups.entry(trajectory).or_insert_with(|| Group {
            count: 0,
            rho_sum: vec![0.0; positions as usize],
            position_hits: vec![0; positions as usize],
        });
        entry.count += 1;
        for x in 0..positions {
            entry.rho_sum[x as usize] += state.rho(x);
        }
        let pos = state.deck().position_of(distinguished)?;
        entry.position_hits[pos as usize] += 1;
    }

    let mut max_gap = 0.0f64;
    for group in groups.values() {
        for x in 0..positions as usize {
            let expectation = group.rho_sum[x] / group.count as f64;
            let probability = group.position_hits[x] as f64 / group.count as f64;
            max_gap = max_gap.max((expectation - probability).abs());
        }
    }
    Ok(ExactIdentityReport {
        coin_bits: total_bits,
        groups: groups.len(),
        max_gap,
        pass: max_gap <= tolerance,
    })
}

/// Monte Carlo verification of the unconditional consequence
/// `E[rho_n(x)] = P(X_n(x_b) = x)` with two independent estimators: the
/// chameleon's mean red paint, and the card-position frequency of a plain
/// zigzag shuffle driven by its own seed stream.
#[derive(Debug, Clone)]
pub struct McIdentityReport {
    pub rho_mean: Vec<f64>,
    pub rho_se: Vec<f64>,
    pub freq: Vec<f64>,
    pub freq_se: Vec<f64>,
    /// Largest `|rho_mean - freq|` in combined-standard-error units.
    pub max_sigma: f64,
    pub pass: bool,
}

pub fn verify_identity_monte_carlo(
    d: u32,
    cards: &[u32],
    n_steps: u64,
    depink_period: u32,
    trials: u64,
    seed: u64,
) -> Result<McIdentityReport> {
    let template = ChameleonState::init(d, depink_period, cards)?;
    let positions = 1usize << d;
    let distinguished = *cards.last().expect("card list validated nonempty");

    let mut rho_sum = vec![0.0f64; positions];
    let mut rho_sq_sum = vec![0.0f64; positions];
    for trial in 0..trials {
        let mut coins = CoinStream::for_trial(seed, trial);
        let mut state = template.clone();
        state.advance_steps(n_steps, &mut coins)?;
        for x in 0..positions {
            let r = state.rho(x as u32);
            rho_sum[x] += r;
            rho_sq_sum[x] += r * r;
        }
    }

    // independent estimator: plain zigzag steps on a bare deck
    let mut hits = vec![0u64; positions];
    for trial in 0..trials {
        let mut coins = CoinStream::for_trial(seed ^ 0xA5A5_5A5A_DEAD_BEEF, trial);
        let mut deck = DeckState::identity(d)?;
        for step in 0..n_steps {
            let j = zigzag_direction(d, step);
            deck = shuffle_core::apply_kj(&deck, j, &mut coins)?;
        }
        hits[deck.position_of(distinguished)? as usize] += 1;
    }

    let nf = trials as f64;
    let mut rho_mean = vec![0.0; positions];
    let mut rho_se = vec![0.0; positions];
    let mut freq = vec![0.0; positions];
    let mut freq_se = vec![0.0; positions];
    let mut max_sigma = 0.0f64;
    for x in 0..positions {
        rho_mean[x] = rho_sum[x] / nf;
        let var = (rho_sq_sum[x] / nf - rho_mean[x] * rho_mean[x]).max(0.0);
        rho_se[x] = (var / nf).sqrt();
        freq[x] = hits[x] as f64 / nf;
        freq_se[x] = (freq[x] * (1.0 - freq[x]) / nf).sqrt();
        let combined = (rho_se[x] * rho_se[x] + freq_se[x] * freq_se[x])
            .sqrt()
            .max(1.0 / nf);
        max_sigma = max_sigma.max((rho_mean[x] - freq[x]).abs() / combined);
    }
    Ok(McIdentityReport {
        rho_mean,
        rho_se,
        freq,
        freq_se,
        max_sigma,
        pass: max_sigma <= 4.0,
    })
}
