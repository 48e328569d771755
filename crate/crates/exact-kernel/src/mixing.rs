use crate::dist::{step_dist, DistVector};
use crate::operator::TransitionOperator;
use crate::{KernelError, Result};

/// The uniform mixing criterion threshold.
pub const DEFAULT_MIXING_THRESHOLD: f64 = 0.25;
/// Iteration cap for [`mixing_time`].
pub const DEFAULT_ROUND_CAP: u64 = 100_000;

/// `max_y |p^n(x, y) |V| - 1|` after `n` applications of `op` from `x`.
pub fn uniform_distance(op: &TransitionOperator, n: u64, x: u32) -> Result<f64> {
    let mut dist = DistVector::point_mass(op.spec().clone(), x)?;
    for _ in 0..n {
        dist = step_dist(&dist, op)?;
    }
    Ok(dist.uniform_deviation())
}

/// Distances for `n = 0..=n_max` from start `x`.
pub fn distance_curve(op: &TransitionOperator, x: u32, n_max: u64) -> Result<Vec<f64>> {
    let mut dist = DistVector::point_mass(op.spec().clone(), x)?;
    let mut curve = vec![dist.uniform_deviation()];
    for _ in 0..n_max {
        dist = step_dist(&dist, op)?;
        curve.push(dist.uniform_deviation());
    }
    Ok(curve)
}

/// Least `n` with `|p^n(x, y) |V| - 1| <= threshold` for all `y`, from the
/// single start state `x = 0`.
///
/// Using one start state is the vertex-transitivity shortcut: coin patterns
/// act on the position side of the deck bijection, so relabeling cards maps
/// any start to any other without changing the kernel and the distance curve
/// is start-independent. [`mixing_time_all_starts`] cross-checks this on
/// small instances.
pub fn mixing_time(op: &TransitionOperator, threshold: f64, cap: u64) -> Result<u64> {
    mixing_time_from(op, 0, threshold, cap)
}

pub fn mixing_time_from(
    op: &TransitionOperator,
    x: u32,
    threshold: f64,
    cap: u64,
) -> Result<u64> {
    let mut dist = DistVector::point_mass(op.spec().clone(), x)?;
    for n in 0..=cap {
        if dist.uniform_deviation() <= threshold {
            return Ok(n);
        }
        dist = step_dist(&dist, op)?;
    }
    Err(KernelError::NoConvergence { cap })
}

/// Least `n` meeting the criterion simultaneously for every start state.
pub fn mixing_time_all_starts(
    op: &TransitionOperator,
    threshold: f64,
    cap: u64,
) -> Result<u64> {
    let size = op.size() as u32;
    let mut dists: Vec<DistVector> = (0..size)
        .map(|x| DistVector::point_mass(op.spec().clone(), x))
        .collect::<Result<_>>()?;
    for n in 0..=cap {
        let worst = dists
            .iter()
            .map(DistVector::uniform_deviation)
            .fold(0.0, f64::max);
        if worst <= threshold {
            return Ok(n);
        }
        for dist in &mut dists {
            *dist = step_dist(dist, op)?;
        }
    }
    Err(KernelError::NoConvergence { cap })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::OperatorCaps;
    use crate::space::StateSpaceSpec;
    use shuffle_core::Schedule;

    #[test]
    fn point_mass_distance_is_v_minus_one() {
        let spec = StateSpaceSpec::full_permutations(2).unwrap();
        let op =
            TransitionOperator::build(spec, &Schedule::ThorpRound, &OperatorCaps::default())
                .unwrap();
        assert_eq!(uniform_distance(&op, 0, 0).unwrap(), 23.0);
    }

    #[test]
    fn d1_full_chain_mixes_in_one_step() {
        let spec = StateSpaceSpec::full_permutations(1).unwrap();
        let op =
            TransitionOperator::build(spec, &Schedule::ThorpRound, &OperatorCaps::default())
                .unwrap();
        assert_eq!(uniform_distance(&op, 1, 0).unwrap(), 0.0);
        assert_eq!(mixing_time(&op, 0.25, 100).unwrap(), 1);
    }

    #[test]
    fn single_card_d2_round_is_uniform_in_one_round() {
        // K_1 then K_2 randomizes both coordinates of one card's position
        let spec = StateSpaceSpec::single_card(2).unwrap();
        let op =
            TransitionOperator::build(spec, &Schedule::ThorpRound, &OperatorCaps::default())
                .unwrap();
        assert_eq!(mixing_time(&op, 0.25, 100).unwrap(), 1);
        assert_eq!(uniform_distance(&op, 1, 3).unwrap(), 0.0);
    }

    #[test]
    fn non_convergence_hits_the_cap() {
        // the shift alone is a permutation and never mixes
        let spec = StateSpaceSpec::single_card(2).unwrap();
        let op = TransitionOperator::single_step(
            spec,
            shuffle_core::StepOp::RotateLeft,
            &OperatorCaps::default(),
        )
        .unwrap();
        assert!(matches!(
            mixing_time(&op, 0.25, 10),
            Err(KernelError::NoConvergence { cap: 10 })
        ));
    }
}
