use std::collections::{BTreeSet, HashMap};

use shuffle_core::{direction_mask, kj_edge_lowers, zigzag_direction, CoinStream};

use crate::{ChameleonError, Result};

const MAX_EXACT_COIN_BITS: u32 = 20;

/// One zigzag round from the identity deck: returns the antisocial count
/// `Z(A, B, 1)` and the positions of the `B` cards after each of the first
/// `d` steps (the conditioning trajectory of the moment bound).
fn one_round_observables(
    d: u32,
    in_a: &[bool],
    in_b: &[bool],
    mut coin: impl FnMut() -> bool,
) -> Result<(u32, Vec<u64>)> {
    let size = 1usize << d;
    let mut occ: Vec<u32> = (0..size as u32).collect();
    let mut social = vec![false; size];
    let mut b_trace = Vec::with_capacity(d as usize);
    for step in 0..2 * d as u64 {
        let j = zigzag_direction(d, step);
        let mask = direction_mask(d, j)?;
        for lower in kj_edge_lowers(d, j)? {
            let upper = lower | mask;
            let (lo, up) = (lower as usize, upper as usize);
            let (card_low, card_up) = (occ[lo] as usize, occ[up] as usize);
            if in_a[card_low] && in_b[card_up] {
                social[card_low] = true;
            }
            if in_a[card_up] && in_b[card_low] {
                social[card_up] = true;
            }
            if coin() {
                occ.swap(lo, up);
            }
        }
        if step < d as u64 {
            let mut positions = 0u64;
            for (pos, &card) in occ.iter().enumerate() {
                if in_b[card as usize] {
                    positions |= 1u64 << pos;
                }
            }
            b_trace.push(positions);
        }
    }
    let z = (0..size)
        .filter(|&card| in_a[card] && !social[card])
        .count() as u32;
    Ok((z, b_trace))
}

fn membership(d: u32, cards: &BTreeSet<u32>) -> Result<Vec<bool>> {
    let size = 1usize << d;
    let mut table = vec![false; size];
    for &card in cards {
        if card as usize >= size {
            return Err(ChameleonError::BadCardList);
        }
        table[card as usize] = true;
    }
    Ok(table)
}

/// `Phi_p(theta) = 1 - p + p e^theta` with `p = 1 - |B| / 2^d`.
fn phi(p: f64, theta: f64) -> f64 {
    1.0 - p + p * theta.exp()
}

/// One theta of the moment-generating-function bound
/// `E[e^{theta Z} | B-trajectory] <= Phi_p(theta)^{|A|}`.
#[derive(Debug, Clone)]
pub struct MomentCheck {
    pub theta: f64,
    pub bound: f64,
    pub marginal_mean: f64,
    pub marginal_se: f64,
    /// Largest conditional-mean excess over the bound across trajectory
    /// groups (exact mode only).
    pub worst_group_excess: Option<f64>,
    pub pass: bool,
}

/// Exact mode (`d <= 2`): enumerate every coin pattern of one zigzag round,
/// group by the B-position trajectory over the first `d` steps, and check
/// the bound per group as well as marginally.
pub fn moment_bound_exact(
    d: u32,
    a: &BTreeSet<u32>,
    b: &BTreeSet<u32>,
    thetas: &[f64],
    tolerance: f64,
) -> Result<Vec<MomentCheck>> {
    if !a.is_disjoint(b) {
        return Err(ChameleonError::OverlappingSets);
    }
    let bits = 2 * d as u64 * (1u64 << (d - 1));
    if d > 2 || bits > MAX_EXACT_COIN_BITS as u64 {
        return Err(ChameleonError::EnumerationTooLarge {
            bits: bits as u32,
            max: MAX_EXACT_COIN_BITS,
        });
    }
    let in_a = membership(d, a)?;
    let in_b = membership(d, b)?;
    let p = 1.0 - b.len() as f64 / (1u64 << d) as f64;
    let k = a.len() as f64;

    let mut by_group: HashMap<Vec<u64>, Vec<u32>> = HashMap::new();
    for pattern in 0..(1u64 << bits) {
        let mut cursor = 0u32;
        let (z, trace) = one_round_observables(d, &in_a, &in_b, || {
            let bit = pattern >> cursor & 1 == 1;
            cursor += 1;
            bit
        })?;
        by_group.entry(trace).or_default().push(z);
    }

    let total = (1u64 << bits) as f64;
    let mut checks = Vec::with_capacity(thetas.len());
    for &theta in thetas {
        let bound = phi(p, theta).powf(k);
        let mut marginal = 0.0;
        let mut worst_excess = f64::NEG_INFINITY;
        for zs in by_group.values() {
            let mean =
                zs.iter().map(|&z| (theta * f64::from(z)).exp()).sum::<f64>() / zs.len() as f64;
            worst_excess = worst_excess.max(mean - bound);
            marginal += zs.len() as f64 * mean;
        }
        marginal /= total;
        checks.push(MomentCheck {
            theta,
            bound,
            marginal_mean: marginal,
            marginal_se: 0.0,
            worst_group_excess: Some(worst_excess),
            pass: worst_excess <= tolerance && marginal <= bound + tolerance,
        });
    }
    Ok(checks)
}

/// Monte Carlo mode: the marginal bound `E[e^{theta Z}] <= Phi_p(theta)^k`
/// within four standard errors.
pub fn moment_bound_monte_carlo(
    d: u32,
    a: &BTreeSet<u32>,
    b: &BTreeSet<u32>,
    thetas: &[f64],
    trials: u64,
    seed: u64,
) -> Result<Vec<MomentCheck>> {
    if !a.is_disjoint(b) {
        return Err(ChameleonError::OverlappingSets);
    }
    let in_a = membership(d, a)?;
    let in_b = membership(d, b)?;
    let p = 1.0 - b.len() as f64 / (1u64 << d) as f64;
    let k = a.len() as f64;

    let mut samples = Vec::with_capacity(trials as usize);
    for trial in 0..trials {
        let mut coins = CoinStream::for_trial(seed, trial);
        let (z, _) = one_round_observables(d, &in_a, &in_b, || coins.next_bit())?;
        samples.push(z);
    }
    let nf = trials as f64;
    let mut checks = Vec::with_capacity(thetas.len());
    for &theta in thetas {
        let bound = phi(p, theta).powf(k);
        let mut sum = 0.0;
        let mut sq_sum = 0.0;
        for &z in &samples {
            let v = (theta * f64::from(z)).exp();
            sum += v;
            sq_sum += v * v;
        }
        let mean = sum / nf;
        let var = (sq_sum / nf - mean * mean).max(0.0);
        let se = (var / nf).sqrt().max(1.0 / nf);
        checks.push(MomentCheck {
            theta,
            bound,
            marginal_mean: mean,
            marginal_se: se,
            worst_group_excess: None,
            pass: mean <= bound + 4.0 * se,
        });
    }
    Ok(checks)
}

/// Tail bound `P(Z > (7/8) k) <= e^{-k/64}`, valid under `p <= 3/4`.
#[derive(Debug, Clone)]
pub struct TailReport {
    pub p: f64,
    pub k: u32,
    pub empirical: f64,
    pub standard_error: f64,
    pub bound: f64,
    pub pass: bool,
}

pub fn tail_bound_check(
    d: u32,
    a: &BTreeSet<u32>,
    b: &BTreeSet<u32>,
    trials: u64,
    seed: u64,
) -> Result<TailReport> {
    if !a.is_disjoint(b) {
        return Err(ChameleonError::OverlappingSets);
    }
    let p = 1.0 - b.len() as f64 / (1u64 << d) as f64;
    if p > 0.75 + 1e-12 {
        return Err(ChameleonError::TailHypothesis { p });
    }
    let in_a = membership(d, a)?;
    let in_b = membership(d, b)?;
    let k = a.len() as u32;
    let threshold = 7.0 * f64::from(k) / 8.0;

    let mut exceed = 0u64;
    for trial in 0..trials {
        let mut coins = CoinStream::for_trial(seed, trial);
        let (z, _) = one_round_observables(d, &in_a, &in_b, || coins.next_bit())?;
        if f64::from(z) > threshold {
            exceed += 1;
        }
    }
    let nf = trials as f64;
    let empirical = exceed as f64 / nf;
    let standard_error = (empirical * (1.0 - empirical) / nf).sqrt().max(1.0 / nf);
    let bound = (-f64::from(k) / 64.0).exp();
    Ok(TailReport {
        p,
        k,
        empirical,
        standard_error,
        bound,
        pass: empirical <= bound + 4.0 * standard_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(items: &[u32]) -> BTreeSet<u32> {
        items.iter().copied().collect()
    }

    #[test]
    fn theta_zero_is_trivial_equality() {
        let checks = moment_bound_exact(2, &set(&[0]), &set(&[1]), &[0.0], 1e-12).unwrap();
        assert!((checks[0].bound - 1.0).abs() < 1e-15);
        assert!((checks[0].marginal_mean - 1.0).abs() < 1e-15);
        assert!(checks[0].pass);
    }

    #[test]
    fn phi_arithmetic_example() {
        // p = 1/2, theta = ln 2: Phi = 1/2 + 1/2 * 2 = 3/2
        assert!((phi(0.5, 2.0f64.ln()) - 1.5).abs() < 1e-15);
    }

    #[test]
    fn exact_bound_holds_at_d2_singletons() {
        // p = 3/4; per-group and marginal inequality over all 256 patterns
        let thetas = [0.0, 0.25, 0.5, 1.0, 2.0f64.ln()];
        let checks = moment_bound_exact(2, &set(&[0]), &set(&[3]), &thetas, 1e-12).unwrap();
        for c in &checks {
            assert!(
                c.pass,
                "theta {}: mean {} bound {} excess {:?}",
                c.theta, c.marginal_mean, c.bound, c.worst_group_excess
            );
        }
    }

    #[test]
    fn d1_pair_never_escapes() {
        // forced adjacency: Z = 0 always, P(Z > 7/8) = 0
        let report = tail_bound_check(1, &set(&[0]), &set(&[1]), 2000, 3).unwrap();
        assert_eq!(report.empirical, 0.0);
        assert!(report.pass);
    }

    #[test]
    fn tail_hypothesis_validated() {
        // |B| = 1 at d = 3 gives p = 7/8 > 3/4
        assert!(matches!(
            tail_bound_check(3, &set(&[0]), &set(&[1]), 10, 3),
            Err(ChameleonError::TailHypothesis { .. })
        ));
    }

    #[test]
    fn monte_carlo_matches_exact_marginal_at_d2() {
        let thetas = [0.5, 1.0];
        let exact = moment_bound_exact(2, &set(&[0, 1]), &set(&[2]), &thetas, 1e-12).unwrap();
        let mc =
            moment_bound_monte_carlo(2, &set(&[0, 1]), &set(&[2]), &thetas, 20_000, 11).unwrap();
        for (e, m) in exact.iter().zip(&mc) {
            assert!(
                (e.marginal_mean - m.marginal_mean).abs() <= 4.0 * m.marginal_se,
                "theta {}: exact {} vs mc {} (se {})",
                e.theta,
                e.marginal_mean,
                m.marginal_mean,
                m.marginal_se
            );
            assert!(m.pass);
        }
    }
}
