use shuffle_core::Schedule;

use crate::matrix::DenseMatrix;
use crate::operator::{OperatorCaps, TransitionOperator};
use crate::space::StateSpaceSpec;
use crate::{KernelError, Result};

/// Worst-case relative deviation from uniformity of the k-subset projection
/// chain after `rounds` rounds:
/// `lambda = max over |S| = |S'| = k of |C(2^d, k) p^rounds(S, S') - 1|`.
pub fn lambda_k(d: u32, k: u32, rounds: u64, schedule: &Schedule, caps: &OperatorCaps) -> Result<f64> {
    Ok(*lambda_sequence(d, k, rounds, schedule, caps)?
        .last()
        .expect("sequence covers rounds 0..=rounds"))
}

/// `lambda` after each of `0..=rounds` rounds of `schedule`.
pub fn lambda_sequence(
    d: u32,
    k: u32,
    rounds: u64,
    schedule: &Schedule,
    caps: &OperatorCaps,
) -> Result<Vec<f64>> {
    let spec = StateSpaceSpec::k_subset(d, k)?;
    if spec.size() == 1 {
        // only the full set: exactly uniform at every time
        return Ok(vec![0.0; rounds as usize + 1]);
    }
    let op = TransitionOperator::build(spec, schedule, caps)?;
    let round = op.to_dense();
    let n = round.size();
    let mut power = DenseMatrix::identity(n);
    let mut seq = Vec::with_capacity(rounds as usize + 1);
    seq.push(lambda_of(&power));
    for _ in 0..rounds {
        power = power.mul(&round);
        seq.push(lambda_of(&power));
    }
    Ok(seq)
}

/// Smallest round count with `lambda <= threshold`, plus the value there.
pub fn smallest_round_below(
    d: u32,
    k: u32,
    schedule: &Schedule,
    threshold: f64,
    round_cap: u64,
    caps: &OperatorCaps,
) -> Result<(u64, f64)> {
    let spec = StateSpaceSpec::k_subset(d, k)?;
    if spec.size() == 1 {
        return Ok((0, 0.0));
    }
    let op = TransitionOperator::build(spec, schedule, caps)?;
    let round = op.to_dense();
    let mut power = DenseMatrix::identity(round.size());
    for m in 0..=round_cap {
        let lambda = lambda_of(&power);
        if lambda <= threshold {
            return Ok((m, lambda));
        }
        power = power.mul(&round);
    }
    Err(KernelError::NoConvergence { cap: round_cap })
}

fn lambda_of(power: &DenseMatrix) -> f64 {
    let n = power.size() as f64;
    let mut worst: f64 = 0.0;
    for x in 0..power.size() {
        for &p in power.row(x) {
            worst = worst.max((p * n - 1.0).abs());
        }
    }
    worst
}
