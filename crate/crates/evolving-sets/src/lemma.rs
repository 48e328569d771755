use exact_kernel::TransitionOperator;

use crate::process::{check_mask_domain, exact_expectations, set_transition_profile};
use crate::{EvolvingError, Result};

/// One instance of the root-growth inequality
/// `E sqrt(|S~|/|S|) <= [alpha (2 - alpha)]^{1/4}` with
/// `alpha = ||p(S, .)||_2^2 / ||1_S||_1` (norms normalized by `1/|V|`).
#[derive(Debug, Clone)]
pub struct Lemma31Report {
    pub lhs: f64,
    pub alpha: f64,
    pub rhs: f64,
    pub delta: f64,
    /// `1 - delta^2 / 4`, the relaxed form `(1 - delta^2)^{1/4}` is below.
    pub remark_bound: f64,
    pub pass: bool,
}

pub fn lemma31_check(s: u32, op: &TransitionOperator) -> Result<Lemma31Report> {
    let states = check_mask_domain(op, 32)?;
    if s == 0 {
        return Err(EvolvingError::EmptySet);
    }
    let size = op.size() as f64;
    let profile = set_transition_profile(s, op)?;
    let l2_sq = profile.iter().map(|p| p.to_f64().powi(2)).sum::<f64>() / size;
    let l1 = s.count_ones() as f64 / size;
    let alpha = l2_sq / l1;
    let rhs = (alpha * (2.0 - alpha)).powf(0.25);
    let delta = 1.0 - alpha;
    let remark_bound = 1.0 - delta * delta / 4.0;
    let lhs = exact_expectations(s, op)?.expected_root_ratio;

    // the remark's chain: [alpha(2-alpha)]^{1/4} = (1-Delta^2)^{1/4} <= 1 - Delta^2/4
    debug_assert!((rhs - (1.0 - delta * delta).powf(0.25)).abs() < 1e-12);
    let pass = lhs <= rhs + 1e-12 && rhs <= remark_bound + 1e-12;
    let _ = states;
    Ok(Lemma31Report {
        lhs,
        alpha,
        rhs,
        delta,
        remark_bound,
        pass,
    })
}
