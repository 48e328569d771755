//! Mixing-time fixtures against an independent dense-matrix-power oracle,
//! plus the lambda regression values for subset projection chains.

use exact_kernel::{
    distance_curve, lambda_k, lambda_sequence, mixing_time, mixing_time_all_starts,
    smallest_round_below, uniform_distance, DenseMatrix, OperatorCaps, StateSpaceSpec,
    TransitionOperator,
};
use shuffle_core::Schedule;

fn caps() -> OperatorCaps {
    OperatorCaps::default()
}

/// Oracle path: full dense matrix powers (not sparse vector iteration).
fn oracle_curve(dense: &DenseMatrix, x: usize, n_max: u64) -> Vec<f64> {
    let n = dense.size() as f64;
    let mut curve = Vec::with_capacity(n_max as usize + 1);
    let mut power = DenseMatrix::identity(dense.size());
    for step in 0..=n_max {
        let row = power.row(x);
        let dist = row.iter().map(|&p| (p * n - 1.0).abs()).fold(0.0, f64::max);
        curve.push(dist);
        if step < n_max {
            power = power.mul(dense);
        }
    }
    curve
}

#[test]
fn d1_full_chain_mixes_in_exactly_one_step() {
    let op = TransitionOperator::build(
        StateSpaceSpec::full_permutations(1).unwrap(),
        &Schedule::ThorpRound,
        &caps(),
    )
    .unwrap();
    assert_eq!(uniform_distance(&op, 1, 0).unwrap(), 0.0);
    assert_eq!(mixing_time(&op, 0.25, 16).unwrap(), 1);
}

#[test]
fn d2_full_chain_matches_dense_oracle_and_regression_value() {
    let op = TransitionOperator::build(
        StateSpaceSpec::full_permutations(2).unwrap(),
        &Schedule::ThorpRound,
        &caps(),
    )
    .unwrap();
    let curve = distance_curve(&op, 0, 12).unwrap();
    let oracle = oracle_curve(&op.to_dense(), 0, 12);
    for (n, (a, b)) in curve.iter().zip(&oracle).enumerate() {
        assert!((a - b).abs() <= 1e-12, "curves differ at n={n}: {a} vs {b}");
    }
    // strictly decreasing until the criterion is met
    assert!(curve[0] > curve[1] && curve[1] > curve[2]);
    assert!(curve[2] <= 0.25);
    // regression fixture: the 24-state round chain mixes in 2 rounds
    let tau = mixing_time(&op, 0.25, 1000).unwrap();
    let tau_oracle = oracle
        .iter()
        .position(|&dist| dist <= 0.25)
        .expect("oracle curve crosses the threshold") as u64;
    assert_eq!(tau, tau_oracle);
    assert_eq!(tau, 2);
}

#[test]
fn d2_shortcut_agrees_with_all_starts() {
    let op = TransitionOperator::build(
        StateSpaceSpec::full_permutations(2).unwrap(),
        &Schedule::ThorpRound,
        &caps(),
    )
    .unwrap();
    assert_eq!(
        mixing_time(&op, 0.25, 1000).unwrap(),
        mixing_time_all_starts(&op, 0.25, 1000).unwrap()
    );
}

#[test]
fn single_card_d2_matches_brute_force_powers() {
    let op = TransitionOperator::build(
        StateSpaceSpec::single_card(2).unwrap(),
        &Schedule::ThorpRound,
        &caps(),
    )
    .unwrap();
    let tau = mixing_time(&op, 0.25, 100).unwrap();
    let oracle = oracle_curve(&op.to_dense(), 0, 8);
    let tau_oracle = oracle.iter().position(|&dist| dist <= 0.25).unwrap() as u64;
    assert_eq!(tau, tau_oracle);
    assert_eq!(tau, 1);
}

#[test]
fn lambda_vanishes_for_the_full_subset() {
    for m in [0u64, 1, 3] {
        assert_eq!(lambda_k(3, 8, m, &Schedule::ZigzagRound, &caps()).unwrap(), 0.0);
    }
}

#[test]
fn lambda_d2_k2_reports_a_decaying_sequence() {
    let seq = lambda_sequence(2, 2, 10, &Schedule::ZigzagRound, &caps()).unwrap();
    assert_eq!(seq[0], 5.0);
    for w in seq[1..].windows(2) {
        assert!(w[1] <= w[0] + 1e-12);
    }
    assert!(seq[10] < 1e-2);
}

#[test]
fn lambda_d3_k4_regression_fixture() {
    // 70-state subset chain under the zigzag round; value pinned from the
    // first verified run of the exact computation
    let (m, lambda) = smallest_round_below(3, 4, &Schedule::ZigzagRound, 0.25, 50, &caps()).unwrap();
    assert_eq!(m, 3);
    assert!((lambda - 0.04521751403808594).abs() <= 1e-12, "lambda = {lambda}");
    let previous = lambda_k(3, 4, 2, &Schedule::ZigzagRound, &caps()).unwrap();
    assert!(previous > 0.25, "m=2 should still be above threshold: {previous}");
}
