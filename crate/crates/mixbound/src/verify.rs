//! The `verify` subcommand: fast library-level property suites, one line of
//! output per check, exit nonzero on any failure. The heavyweight versions
//! of these checks live in the test suites; this surface exists so a
//! deployed binary can re-verify itself reproducibly from a seed.

use std::collections::BTreeSet;

use chameleon::{
    moment_bound_exact, sqrt_pair_margin, tail_bound_check, verify_identity_exact,
    verify_identity_monte_carlo,
};
use evolving_sets::{
    complement_law_matches, exact_expectations, lemma31_check, verify_duality_exact, DualityCaps,
};
use exact_kernel::{
    exact_deck_distribution, mixing_time, mixing_time_all_starts, small_chain_matrix,
    OperatorCaps, StateSpaceSpec, TransitionOperator,
};
use l2_analysis::{ball_lemma_check, peres_lemma_check, quarter_power_margin, DenseKernel, FuncVector};
use shuffle_core::{run_schedule, CoinStream, DeckState, Schedule};

use crate::bound::{mixing_bound_from_profile, ProfileBoundSpec};
use crate::constants::{constants_solver, trunccor_check};
use crate::{MixboundError, Result};

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn check(name: &str, pass: bool, detail: String) -> CheckResult {
    CheckResult {
        name: name.to_string(),
        pass,
        detail,
    }
}

/// Run one named suite (or `all`). `d` scales the shuffle instances where
/// it applies; `seed` drives every randomized check.
pub fn run_suite(suite: &str, d: u32, seed: u64) -> Result<Vec<CheckResult>> {
    let mut checks = Vec::new();
    let mut matched = false;
    if suite == "all" || suite == "shuffle" {
        checks.extend(shuffle_suite(d, seed)?);
        matched = true;
    }
    if suite == "all" || suite == "exact" {
        checks.extend(exact_suite(d)?);
        matched = true;
    }
    if suite == "all" || suite == "evolving" {
        checks.extend(evolving_suite()?);
        matched = true;
    }
    if suite == "all" || suite == "chameleon" {
        checks.extend(chameleon_suite(seed)?);
        matched = true;
    }
    if suite == "all" || suite == "l2" {
        checks.extend(l2_suite(seed)?);
        matched = true;
    }
    if suite == "all" || suite == "analytic" {
        checks.extend(analytic_suite());
        matched = true;
    }
    if suite == "all" || suite == "constants" {
        checks.extend(constants_suite());
        matched = true;
    }
    if suite == "all" || suite == "bound" {
        checks.extend(bound_suite()?);
        matched = true;
    }
    if !matched {
        return Err(MixboundError::BadFlag {
            what: "suite",
            value: suite.to_string(),
        });
    }
    Ok(checks)
}

fn shuffle_suite(d: u32, seed: u64) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let deck = DeckState::identity(d)?;
    let mut coins = CoinStream::new(seed);
    let (final_a, trace_a) = run_schedule(&deck, &Schedule::ZigzagRound, 4, &mut coins)?;
    let mut coins = CoinStream::new(seed);
    let (final_b, trace_b) = run_schedule(&deck, &Schedule::ZigzagRound, 4, &mut coins)?;
    out.push(check(
        "shuffle/replay-determinism",
        final_a == final_b && trace_a.to_lines() == trace_b.to_lines(),
        format!("4 zigzag rounds at d={d}"),
    ));
    out.push(check(
        "shuffle/bijection",
        final_a.is_bijection(),
        "occupant table stays a bijection".into(),
    ));
    let caps = OperatorCaps::default();
    let round = exact_deck_distribution(&deck, &Schedule::ThorpRound, 1, &caps);
    let classic = exact_deck_distribution(&deck, &Schedule::ClassicPass, d as u64, &caps);
    let equal = match (round, classic) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    };
    out.push(check(
        "shuffle/classic-equivalence",
        equal,
        format!("one round vs {d} classic passes, dyadic-exact"),
    ));
    Ok(out)
}

fn exact_suite(d: u32) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let caps = OperatorCaps::default();
    let spec = if d <= 3 {
        StateSpaceSpec::full_permutations(d.min(3))?
    } else {
        StateSpaceSpec::single_card(d)?
    };
    let op = TransitionOperator::build(spec, &Schedule::ThorpRound, &caps)?;
    out.push(check(
        "exact/doubly-stochastic",
        op.verify_doubly_stochastic().is_ok(),
        op.spec().label(),
    ));
    let d1 = TransitionOperator::build(
        StateSpaceSpec::full_permutations(1)?,
        &Schedule::ThorpRound,
        &caps,
    )?;
    out.push(check(
        "exact/d1-mixing",
        mixing_time(&d1, 0.25, 10)? == 1,
        "two-card chain mixes in one step".into(),
    ));
    let d2 = TransitionOperator::build(
        StateSpaceSpec::full_permutations(2)?,
        &Schedule::ThorpRound,
        &caps,
    )?;
    let shortcut = mixing_time(&d2, 0.25, 100)?;
    let exhaustive = mixing_time_all_starts(&d2, 0.25, 100)?;
    out.push(check(
        "exact/d2-mixing-fixture",
        shortcut == 2 && exhaustive == 2,
        format!("shortcut {shortcut}, all-starts {exhaustive}"),
    ));
    Ok(out)
}

fn evolving_suite() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let matrix = small_chain_matrix(10);
    let mut martingale_ok = true;
    let mut lemma_ok = true;
    let mut complement_ok = true;
    for (_, op) in &matrix {
        let states = op.size() as u32;
        for mask in 1..(1u32 << states) {
            let e = exact_expectations(mask, op)?;
            martingale_ok &= e.size_martingale_exact;
            lemma_ok &= lemma31_check(mask, op)?.pass;
            complement_ok &= complement_law_matches(mask, op)?;
        }
    }
    out.push(check(
        "evolving/size-martingale",
        martingale_ok,
        format!("exact over {} kernels", matrix.len()),
    ));
    out.push(check(
        "evolving/root-growth-bound",
        lemma_ok,
        "E sqrt ratio <= [alpha(2-alpha)]^{1/4}".into(),
    ));
    out.push(check(
        "evolving/complement-law",
        complement_ok,
        "complements evolve identically".into(),
    ));
    let mut duality_ok = true;
    for (_, op) in &matrix {
        for n in 0..=4 {
            duality_ok &= verify_duality_exact(op, n, 1e-12, &DualityCaps::default())?.pass;
        }
    }
    out.push(check(
        "evolving/duality",
        duality_ok,
        "p^n(x,y) = P_x(y in S_n) exactly".into(),
    ));
    Ok(out)
}

fn chameleon_suite(seed: u64) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let exact = verify_identity_exact(2, &[0, 1, 2], 4, 1, 1e-12)?;
    out.push(check(
        "chameleon/identity-exact",
        exact.pass,
        format!("{} groups, gap {:.2e}", exact.groups, exact.max_gap),
    ));
    let mc = verify_identity_monte_carlo(3, &[0, 1, 2, 3, 4], 6, 1, 20_000, seed)?;
    out.push(check(
        "chameleon/identity-monte-carlo",
        mc.pass,
        format!("max sigma {:.2}", mc.max_sigma),
    ));
    let a: BTreeSet<u32> = [0u32].into_iter().collect();
    let b: BTreeSet<u32> = [3u32].into_iter().collect();
    let moments = moment_bound_exact(2, &a, &b, &[0.0, 0.5, 1.0], 1e-12)?;
    out.push(check(
        "chameleon/moment-bound",
        moments.iter().all(|m| m.pass),
        "per-trajectory-group bound at d=2".into(),
    ));
    let a: BTreeSet<u32> = (0..4u32).collect();
    let b: BTreeSet<u32> = (4..8u32).collect();
    let tail = tail_bound_check(3, &a, &b, 20_000, seed)?;
    out.push(check(
        "chameleon/tail-bound",
        tail.pass,
        format!("P(Z > 7k/8) = {:.4} <= {:.4}", tail.empirical, tail.bound),
    ));
    Ok(out)
}

fn l2_suite(seed: u64) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let mut coins = CoinStream::new(seed);
    let mut peres_ok = true;
    for _ in 0..50 {
        let n = 2 + coins.next_below(7) as usize;
        let kernel = DenseKernel::random_birkhoff(n, &mut coins);
        let g = FuncVector::new((0..n).map(|_| coins.next_unit()).collect())?;
        for steps in 1..=5 {
            peres_ok &= peres_lemma_check(&kernel, &g, steps, 1e-10)?.pass;
        }
    }
    out.push(check(
        "l2/interpolation-bound",
        peres_ok,
        "random Birkhoff mixtures".into(),
    ));
    let ball = ball_lemma_check(&[(0.0, 0.75), (1.0, 0.25)], 2.0, 1e-10)?;
    out.push(check(
        "l2/deviation-bound",
        ball.pass && (ball.lhs - 3.0).abs() < 1e-12 && (ball.rhs - 4.5).abs() < 1e-12,
        "Bernoulli(1/4), p = 2 evaluates exactly".into(),
    ));
    Ok(out)
}

fn analytic_suite() -> Vec<CheckResult> {
    let sqrt_ok = (0..=10_000).all(|i| sqrt_pair_margin(i as f64 / 10_000.0) >= -1e-15);
    let quarter_ok = (0..=10_000).all(|i| quarter_power_margin(i as f64 / 10_000.0) >= -1e-15);
    let trunc = trunccor_check(20, 20);
    vec![
        check(
            "analytic/sqrt-pair",
            sqrt_ok,
            "(sqrt(1+u)+sqrt(1-u))/2 <= exp(-u^2/8)".into(),
        ),
        check(
            "analytic/quarter-power",
            quarter_ok,
            "(1-D^2)^{1/4} <= 1 - D^2/4".into(),
        ),
        check(
            "analytic/truncated-chain",
            trunc.is_empty(),
            format!("{} grid violations", trunc.len()),
        ),
    ]
}

fn constants_suite() -> Vec<CheckResult> {
    let report = constants_solver();
    vec![
        check(
            "constants/alpha",
            report.alpha_min == 64 && report.alpha_binding_d == 1,
            format!("alpha_min {} binding at d={}", report.alpha_min, report.alpha_binding_d),
        ),
        check(
            "constants/beta",
            report.beta == 657_920,
            format!("beta {}", report.beta),
        ),
        check(
            "constants/c-scan",
            report.c_min >= 1,
            format!("c_min {} binding at d={}", report.c_min, report.c_binding_d),
        ),
    ]
}

fn bound_suite() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let caps = OperatorCaps::default();
    // consistency: a verified lower-bound profile never beats the measured
    // mixing time on the d=2 single-card chain
    let op = TransitionOperator::build(
        StateSpaceSpec::single_card(2)?,
        &Schedule::ThorpRound,
        &caps,
    )?;
    let measured = mixing_time(&op, 0.25, 100)?;
    let spec = ProfileBoundSpec::new(0.5, 1.0 - 0.5 * 2.0f64.sqrt(), 4.0f64.ln())?;
    let result = mixing_bound_from_profile(&spec, 0.5)?;
    out.push(check(
        "bound/consistency-with-measured",
        result.tau_bound >= measured,
        format!("tau_bound {} >= measured {}", result.tau_bound, measured),
    ));
    let wide = mixing_bound_from_profile(&ProfileBoundSpec::new(0.2, 0.1, 30.0)?, 0.5)?;
    let tighter = mixing_bound_from_profile(&ProfileBoundSpec::new(0.4, 0.2, 30.0)?, 0.5)?;
    out.push(check(
        "bound/monotone",
        tighter.tau_bound <= wide.tau_bound,
        format!("{} <= {}", tighter.tau_bound, wide.tau_bound),
    ));
    Ok(out)
}
