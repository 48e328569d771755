use exact_kernel::TransitionOperator;
use shuffle_core::CoinStream;

use crate::process::{check_mask_domain, exact_expectations};
use crate::{EvolvingError, Result};

/// Exhaustive subset scans are bounded by this state count (2^24 masks).
const MAX_EXHAUSTIVE_STATES: u64 = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileMode {
    /// Scan every nonempty subset within the size filter: the reported psi
    /// is the true infimum.
    Exhaustive,
    /// Random subsets per size plus greedy single-element-swap descent. This
    /// minimizes over candidates only, so the reported value is an upper
    /// bound on the true infimum (an over-estimate of psi): report-only,
    /// never a verified lower bound.
    Sampled {
        subsets_per_size: u32,
        descent_steps: u32,
        seed: u64,
    },
}

impl ProfileMode {
    pub fn sampled_default(seed: u64) -> Self {
        ProfileMode::Sampled {
            subsets_per_size: 10_000,
            descent_steps: 100,
            seed,
        }
    }

    fn label(&self) -> &'static str {
        match self {
            ProfileMode::Exhaustive => "exhaustive",
            ProfileMode::Sampled { .. } => "sampled",
        }
    }
}

/// One root-profile sample: `psi >= psi(x)` claims hold only in exhaustive
/// mode, where the value is the true infimum over `|S| <= x |V|`.
#[derive(Debug, Clone)]
pub struct RootProfilePoint {
    pub x: f64,
    pub psi: f64,
    pub mode: &'static str,
    /// A minimizing (or best sampled) set, as a state bitmask.
    pub argmin: u32,
}

/// Root profile `psi(x) = inf { psi(S) : 0 < |S| <= x |V| }` on a grid of
/// `x` values in `(0, 1]`; values above 1/2 use the profile at 1/2.
pub fn root_profile(
    op: &TransitionOperator,
    grid: &[f64],
    mode: ProfileMode,
) -> Result<Vec<RootProfilePoint>> {
    let states = match mode {
        ProfileMode::Exhaustive => check_mask_domain(op, MAX_EXHAUSTIVE_STATES)?,
        ProfileMode::Sampled { .. } => check_mask_domain(op, 32)?,
    };
    for &x in grid {
        if !(0.0..=1.0).contains(&x) || x == 0.0 {
            return Err(EvolvingError::GridOutOfRange { x });
        }
    }
    let max_size = states; // sizes 1..=states get minima
    let by_size = match mode {
        ProfileMode::Exhaustive => exhaustive_size_minima(op, states)?,
        ProfileMode::Sampled {
            subsets_per_size,
            descent_steps,
            seed,
        } => sampled_size_minima(op, states, subsets_per_size, descent_steps, seed)?,
    };

    let mut points = Vec::with_capacity(grid.len());
    for &x in grid {
        let effective = x.min(0.5);
        let limit = ((effective * states as f64).floor() as u32).min(max_size);
        if limit == 0 {
            return Err(EvolvingError::NoAdmissibleSubset { x });
        }
        let (mut best_psi, mut best_mask) = (f64::INFINITY, 0u32);
        for s in 1..=limit {
            let (psi, mask) = by_size[s as usize];
            if psi < best_psi {
                best_psi = psi;
                best_mask = mask;
            }
        }
        points.push(RootProfilePoint {
            x,
            psi: best_psi,
            mode: mode.label(),
            argmin: best_mask,
        });
    }
    // psi(x) is non-increasing in x by construction (inf over larger
    // families); enforce it against float noise all the same
    let mut sorted: Vec<usize> = (0..points.len()).collect();
    sorted.sort_by(|&a, &b| points[a].x.partial_cmp(&points[b].x).unwrap());
    let mut running = f64::INFINITY;
    for idx in sorted {
        if points[idx].psi > running {
            points[idx].psi = running;
        } else {
            running = points[idx].psi;
        }
    }
    Ok(points)
}

/// `(min psi, argmin)` for each subset size, by full scan.
fn exhaustive_size_minima(
    op: &TransitionOperator,
    states: u32,
) -> Result<Vec<(f64, u32)>> {
    let mut by_size = vec![(f64::INFINITY, 0u32); states as usize + 1];
    for mask in 1..(1u64 << states) as u32 {
        let size = mask.count_ones() as usize;
        let psi = exact_expectations(mask, op)?.psi;
        if psi < by_size[size].0 {
            by_size[size] = (psi, mask);
        }
    }
    Ok(by_size)
}

fn sampled_size_minima(
    op: &TransitionOperator,
    states: u32,
    subsets_per_size: u32,
    descent_steps: u32,
    seed: u64,
) -> Result<Vec<(f64, u32)>> {
    let mut by_size = vec![(f64::INFINITY, 0u32); states as usize + 1];
    let mut coins = CoinStream::new(seed);
    for size in 1..=states {
        let mut best = (f64::INFINITY, 0u32);
        let distinct_masks = binomial_capped(states, size, subsets_per_size as u64);
        for _ in 0..(subsets_per_size as u64).min(distinct_masks) {
            let mut mask = random_mask(&mut coins, states, size);
            let mut psi = exact_expectations(mask, op)?.psi;
            for _ in 0..descent_steps {
                match best_swap_neighbor(op, mask, states, psi)? {
                    Some((next_mask, next_psi)) => {
                        mask = next_mask;
                        psi = next_psi;
                    }
                    None => break,
                }
            }
            if psi < best.0 {
                best = (psi, mask);
            }
        }
        by_size[size as usize] = best;
    }
    Ok(by_size)
}

/// Best single-element swap (remove one member, add one non-member), if any
/// improves psi.
fn best_swap_neighbor(
    op: &TransitionOperator,
    mask: u32,
    states: u32,
    current: f64,
) -> Result<Option<(u32, f64)>> {
    let mut best: Option<(u32, f64)> = None;
    for out in 0..states {
        if mask >> out & 1 == 0 {
            continue;
        }
        for into in 0..states {
            if mask >> into & 1 == 1 {
                continue;
            }
            let candidate = (mask & !(1 << out)) | (1 << into);
            let psi = exact_expectations(candidate, op)?.psi;
            if psi < best.map_or(current, |(_, b)| b) {
                best = Some((candidate, psi));
            }
        }
    }
    Ok(best)
}

fn random_mask(coins: &mut CoinStream, states: u32, size: u32) -> u32 {
    let mut mask = 0u32;
    while mask.count_ones() < size {
        mask |= 1 << coins.next_below(states as u64);
    }
    mask
}

fn binomial_capped(n: u32, k: u32, cap: u64) -> u64 {
    let mut acc: u64 = 1;
    for i in 0..k.min(n - k) {
        acc = acc.saturating_mul((n - i) as u64) / (i as u64 + 1);
        if acc >= cap {
            return cap;
        }
    }
    acc
}

/// CSV schema: `x,psi,mode,argmin_set` with the set serialized as
/// `|`-joined state indices.
pub fn profile_to_csv(points: &[RootProfilePoint]) -> String {
    let mut out = String::from("x,psi,mode,argmin_set\n");
    for p in points {
        let members: Vec<String> = (0..32)
            .filter(|b| p.argmin >> b & 1 == 1)
            .map(|b| b.to_string())
            .collect();
        out.push_str(&format!("{},{},{},{}\n", p.x, p.psi, p.mode, members.join("|")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_kernel::two_state_half_chain;

    #[test]
    fn half_chain_profile_at_one_half() {
        let op = two_state_half_chain();
        let points = root_profile(&op, &[0.5], ProfileMode::Exhaustive).unwrap();
        let expected = 1.0 - 0.5 * 2.0f64.sqrt();
        assert!((points[0].psi - expected).abs() < 1e-15);
        assert_eq!(points[0].argmin.count_ones(), 1);
    }

    #[test]
    fn x_above_half_uses_the_half_profile() {
        let op = two_state_half_chain();
        let points = root_profile(&op, &[0.5, 1.0], ProfileMode::Exhaustive).unwrap();
        assert_eq!(points[0].psi, points[1].psi);
    }

    #[test]
    fn unachievable_grid_value_is_rejected() {
        let op = two_state_half_chain();
        assert!(matches!(
            root_profile(&op, &[0.2], ProfileMode::Exhaustive),
            Err(EvolvingError::NoAdmissibleSubset { .. })
        ));
        assert!(matches!(
            root_profile(&op, &[0.0], ProfileMode::Exhaustive),
            Err(EvolvingError::GridOutOfRange { .. })
        ));
        assert!(matches!(
            root_profile(&op, &[1.5], ProfileMode::Exhaustive),
            Err(EvolvingError::GridOutOfRange { .. })
        ));
    }

    #[test]
    fn sampled_mode_upper_bounds_exhaustive() {
        let op = two_state_half_chain();
        let exact = root_profile(&op, &[0.5], ProfileMode::Exhaustive).unwrap();
        let sampled = root_profile(
            &op,
            &[0.5],
            ProfileMode::Sampled {
                subsets_per_size: 4,
                descent_steps: 2,
                seed: 5,
            },
        )
        .unwrap();
        assert!(sampled[0].psi >= exact[0].psi - 1e-15);
        assert_eq!(sampled[0].mode, "sampled");
    }

    #[test]
    fn csv_serializes_the_argmin_set() {
        let op = two_state_half_chain();
        let points = root_profile(&op, &[0.5], ProfileMode::Exhaustive).unwrap();
        let csv = profile_to_csv(&points);
        assert!(csv.starts_with("x,psi,mode,argmin_set\n"));
        assert!(csv.contains("exhaustive"));
    }
}
