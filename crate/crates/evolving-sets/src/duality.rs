use std::collections::HashMap;

use exact_kernel::TransitionOperator;
use shuffle_core::CoinStream;

use crate::process::{check_mask_domain, one_step_law};
use crate::{EvolvingError, Result};

/// Enumeration limits for the exact threshold tree. The one-step law has at
/// most `|V| + 1` atoms, so the mask-distribution stays within `2^{|V|}`
/// entries regardless of depth; the caps keep that comfortable.
#[derive(Debug, Clone, Copy)]
pub struct DualityCaps {
    pub max_states: u64,
    pub max_steps: u64,
}

impl Default for DualityCaps {
    fn default() -> Self {
        DualityCaps {
            max_states: 12,
            max_steps: 8,
        }
    }
}

/// Outcome of the exact duality check `p^n(x, y) = P_{{x}}(y in S_n)` over
/// all `(x, y)` pairs. Both sides are reported at the worst pair.
#[derive(Debug, Clone)]
pub struct DualityReport {
    pub steps: u64,
    pub max_gap: f64,
    pub worst_pair: (u32, u32),
    /// `p^n(x, y)` at the worst pair.
    pub matrix_side: f64,
    /// `P_{{x}}(y in S_n)` at the worst pair.
    pub set_side: f64,
    pub pass: bool,
}

/// Propagate the exact set-valued distribution `n` steps from every
/// singleton and compare membership probabilities against matrix powers.
pub fn verify_duality_exact(
    op: &TransitionOperator,
    n: u64,
    tolerance: f64,
    caps: &DualityCaps,
) -> Result<DualityReport> {
    let states = check_mask_domain(op, caps.max_states)?;
    if n > caps.max_steps {
        return Err(EvolvingError::EnumerationTooLarge {
            detail: format!("{n} steps over the {}-step cap", caps.max_steps),
        });
    }
    let dense = op.to_dense();
    let power = dense.pow(n);
    let mut max_gap = 0.0f64;
    let mut worst_pair = (0u32, 0u32);
    let mut sides = (0.0f64, 0.0f64);
    for x in 0..states {
        let membership = singleton_membership_probabilities(op, x, n)?;
        for y in 0..states {
            let matrix_side = power.get(x as usize, y as usize);
            let set_side = membership[y as usize];
            let gap = (set_side - matrix_side).abs();
            if gap > max_gap {
                max_gap = gap;
                worst_pair = (x, y);
                sides = (matrix_side, set_side);
            }
        }
    }
    Ok(DualityReport {
        steps: n,
        max_gap,
        worst_pair,
        matrix_side: sides.0,
        set_side: sides.1,
        pass: max_gap <= tolerance,
    })
}

/// `P_{{x}}(y in S_n)` for every `y`, by exact atom propagation.
fn singleton_membership_probabilities(
    op: &TransitionOperator,
    x: u32,
    n: u64,
) -> Result<Vec<f64>> {
    let states = op.size() as u32;
    let mut dist: HashMap<u32, f64> = HashMap::new();
    dist.insert(1u32 << x, 1.0);
    let mut law_cache: HashMap<u32, Vec<(u32, f64)>> = HashMap::new();
    for _ in 0..n {
        let mut next: HashMap<u32, f64> = HashMap::new();
        for (mask, weight) in dist {
            let law = match law_cache.get(&mask) {
                Some(law) => law,
                None => {
                    let law: Vec<(u32, f64)> = one_step_law(mask, op)?
                        .atoms
                        .into_iter()
                        .map(|(m, p)| (m, p.to_f64()))
                        .collect();
                    law_cache.entry(mask).or_insert(law)
                }
            };
            for &(m, p) in law {
                *next.entry(m).or_insert(0.0) += weight * p;
            }
        }
        dist = next;
    }
    let mut membership = vec![0.0f64; states as usize];
    for (mask, weight) in dist {
        for y in 0..states {
            if mask >> y & 1 == 1 {
                membership[y as usize] += weight;
            }
        }
    }
    Ok(membership)
}

/// Monte Carlo side of the duality identity at a single `(x, y)` pair.
#[derive(Debug, Clone)]
pub struct McDualityReport {
    pub exact: f64,
    pub estimate: f64,
    pub standard_error: f64,
    pub pass: bool,
}

/// Estimate `P_{{x}}(y in S_n)` by sampling `U` draws and require agreement
/// with the exact `p^n(x, y)` within four standard errors.
pub fn duality_monte_carlo(
    op: &TransitionOperator,
    x: u32,
    y: u32,
    n: u64,
    trials: u64,
    seed: u64,
) -> Result<McDualityReport> {
    let states = check_mask_domain(op, 32)?;
    if x >= states || y >= states {
        return Err(EvolvingError::InvalidState {
            state: x.max(y),
            size: op.size(),
        });
    }
    let mut hits = 0u64;
    for trial in 0..trials {
        let mut coins = CoinStream::for_trial(seed, trial);
        let mut mask = 1u32 << x;
        for _ in 0..n {
            mask = crate::process::es_step(mask, op, coins.next_unit_open_zero())?;
        }
        if mask >> y & 1 == 1 {
            hits += 1;
        }
    }
    let estimate = hits as f64 / trials as f64;
    let standard_error = (estimate * (1.0 - estimate) / trials as f64).sqrt();
    let exact = op.to_dense().pow(n).get(x as usize, y as usize);
    // a degenerate estimator (all hits or none) still gets a floor of one
    // trial's worth of slack
    let slack = 4.0 * standard_error.max(1.0 / trials as f64);
    Ok(McDualityReport {
        exact,
        estimate,
        standard_error,
        pass: (estimate - exact).abs() <= slack,
    })
}

/// Distributional complement symmetry of one step: the law of `S~^c` from
/// `S` equals the law of the process started at `S^c`. Ties between `>=`
/// and `>` thresholds sit on measure-zero `U` values, so the exact atom
/// lists agree.
pub fn complement_law_matches(s: u32, op: &TransitionOperator) -> Result<bool> {
    let states = check_mask_domain(op, 32)?;
    let full = if states == 32 {
        u32::MAX
    } else {
        (1u32 << states) - 1
    };
    let from_complement = one_step_law(full & !s, op)?;
    let complemented: Vec<(u32, f64)> = {
        let mut atoms: Vec<(u32, f64)> = one_step_law(s, op)?
            .atoms
            .into_iter()
            .map(|(m, p)| (full & !m, p.to_f64()))
            .collect();
        atoms.sort_by_key(|&(m, _)| m);
        atoms
    };
    let mut direct: Vec<(u32, f64)> = from_complement
        .atoms
        .into_iter()
        .map(|(m, p)| (m, p.to_f64()))
        .collect();
    direct.sort_by_key(|&(m, _)| m);
    if direct.len() != complemented.len() {
        return Ok(false);
    }
    Ok(direct
        .iter()
        .zip(&complemented)
        .all(|(a, b)| a.0 == b.0 && (a.1 - b.1).abs() < 1e-15))
}

/// Max difference between the n-step mask distribution of complements from
/// `s` and the n-step distribution from `s^c`.
pub fn complement_trajectory_gap(
    op: &TransitionOperator,
    s: u32,
    n: u64,
    caps: &DualityCaps,
) -> Result<f64> {
    let states = check_mask_domain(op, caps.max_states)?;
    if n > caps.max_steps {
        return Err(EvolvingError::EnumerationTooLarge {
            detail: format!("{n} steps over the {}-step cap", caps.max_steps),
        });
    }
    let full = (1u32 << states) - 1;
    let from_s = mask_distribution(op, s, n)?;
    let from_sc = mask_distribution(op, full & !s, n)?;
    let mut gap = 0.0f64;
    let keys: std::collections::HashSet<u32> = from_s
        .keys()
        .map(|&m| full & !m)
        .chain(from_sc.keys().copied())
        .collect();
    for key in keys {
        let a = from_s.get(&(full & !key)).copied().unwrap_or(0.0);
        let b = from_sc.get(&key).copied().unwrap_or(0.0);
        gap = gap.max((a - b).abs());
    }
    Ok(gap)
}

fn mask_distribution(op: &TransitionOperator, s: u32, n: u64) -> Result<HashMap<u32, f64>> {
    let mut dist: HashMap<u32, f64> = HashMap::new();
    dist.insert(s, 1.0);
    for _ in 0..n {
        let mut next: HashMap<u32, f64> = HashMap::new();
        for (mask, weight) in dist {
            for (m, p) in one_step_law(mask, op)?.atoms {
                *next.entry(m).or_insert(0.0) += weight * p.to_f64();
            }
        }
        dist = next;
    }
    Ok(dist)
}
