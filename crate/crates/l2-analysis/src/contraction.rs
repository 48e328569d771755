use crate::func::FuncVector;
use crate::kernel::DenseKernel;
use crate::{L2Error, Result};

/// Measured contraction data for one set `S` under one kernel:
/// `||K^t 1_S||_2^2 = x^{1 + epsilon}` with `x = ||1_S||_1`. Only
/// `alpha <= 1` and `delta >= 0` are asserted facts; the exponent excess is
/// a measurement, not a claimed bound.
#[derive(Debug, Clone)]
pub struct ContractionReport {
    pub set_size: usize,
    /// `x = |S| / |V|`.
    pub x: f64,
    /// `||p(S, .)||_2^2`, i.e. `||K^t 1_S||_2^2`.
    pub l2_sq: f64,
    /// `alpha = ||p(S, .)||_2^2 / ||1_S||_1`, always in (0, 1].
    pub alpha: f64,
    /// `delta = 1 - alpha`.
    pub delta: f64,
    /// `epsilon = log(||K^t 1_S||_2^2) / log(x) - 1`.
    pub epsilon: f64,
}

pub fn contraction_report(kernel: &DenseKernel, members: &[usize]) -> Result<ContractionReport> {
    let n = kernel.size();
    if members.is_empty() || members.len() >= n {
        return Err(L2Error::ImproperSubset { size: n });
    }
    let indicator = FuncVector::indicator(n, members)?;
    let x = indicator.l1();
    let l2_sq = kernel.apply_transpose(&indicator)?.l2_sq();
    let alpha = l2_sq / x;
    debug_assert!(alpha <= 1.0 + 1e-12, "alpha = {alpha}");
    let epsilon = l2_sq.ln() / x.ln() - 1.0;
    Ok(ContractionReport {
        set_size: members.len(),
        x,
        l2_sq,
        alpha,
        delta: 1.0 - alpha,
        epsilon,
    })
}
