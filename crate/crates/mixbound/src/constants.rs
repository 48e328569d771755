/// `beta = 2056 * 64 * 5`, the constant multiplying the window accounting.
pub const BETA: u64 = 2056 * 64 * 5;

/// How far the per-d inequalities are verified explicitly; beyond this the
/// margins are monotone (checked numerically at the boundary).
pub const VERIFIED_D_MAX: u32 = 1000;

/// Slack for log-space margins: the alpha constraint is an exact equality
/// at its binding point (`64^1 = 2^6`), which f64 logs resolve to ~1e-16
/// either way.
const MARGIN_EPS: f64 = 1e-9;

/// Log-space slack of `4 alpha^{-d} <= 2^{-d-1} 4^{-d}`; nonnegative means
/// the inequality holds at this `d`.
pub fn alpha_constraint_margin(alpha: u64, d: u32) -> f64 {
    let d = f64::from(d);
    let ln2 = std::f64::consts::LN_2;
    // d ln(alpha) - ln 4 - (d+1) ln 2 - d ln 4
    d * (alpha as f64).ln() - 2.0 * ln2 - (d + 1.0) * ln2 - d * 2.0 * ln2
}

/// Log-space slack of `[4 e^{-c}]^d beta ln(alpha) c d^5 <= alpha^{-d}`.
pub fn c_constraint_margin(c: u64, alpha: u64, beta: u64, d: u32) -> f64 {
    let d = f64::from(d);
    let ln_alpha = (alpha as f64).ln();
    let lhs_ln = d * (4.0f64.ln() - c as f64)
        + (beta as f64).ln()
        + ln_alpha.ln()
        + (c as f64).ln()
        + 5.0 * d.ln();
    -d * ln_alpha - lhs_ln
}

#[derive(Debug, Clone)]
pub struct ConstantsReport {
    /// Least integer alpha satisfying its inequality for every `d >= 1`.
    pub alpha_min: u64,
    /// The `d` at which the alpha constraint is tightest.
    pub alpha_binding_d: u32,
    pub beta: u64,
    /// Least integer c satisfying its inequality (at `alpha = alpha_min`).
    pub c_min: u64,
    pub c_binding_d: u32,
    pub verified_d_max: u32,
    /// `(d, alpha margin, c margin)` for the first few d, for display.
    pub margins: Vec<(u32, f64, f64)>,
}

/// Minimal integer constants for the two inequality families, by scan over
/// `d = 1..=1000` plus monotone tails: the per-d requirement on `alpha` is
/// `alpha >= 8 * 2^{3/d}` (decreasing in d), and for any `c` past `ln 256`
/// the c-margin grows linearly in `d` beyond small `d`.
pub fn constants_solver() -> ConstantsReport {
    let mut alpha_min = 2u64;
    'alpha: loop {
        for d in 1..=VERIFIED_D_MAX {
            if alpha_constraint_margin(alpha_min, d) < -MARGIN_EPS {
                alpha_min += 1;
                continue 'alpha;
            }
        }
        break;
    }
    let alpha_binding_d = (1..=VERIFIED_D_MAX)
        .min_by(|&a, &b| {
            alpha_constraint_margin(alpha_min, a)
                .partial_cmp(&alpha_constraint_margin(alpha_min, b))
                .unwrap()
        })
        .unwrap();

    let mut c_min = 1u64;
    'c: loop {
        for d in 1..=VERIFIED_D_MAX {
            if c_constraint_margin(c_min, alpha_min, BETA, d) < -MARGIN_EPS {
                c_min += 1;
                continue 'c;
            }
        }
        break;
    }
    let c_binding_d = (1..=VERIFIED_D_MAX)
        .min_by(|&a, &b| {
            c_constraint_margin(c_min, alpha_min, BETA, a)
                .partial_cmp(&c_constraint_margin(c_min, alpha_min, BETA, b))
                .unwrap()
        })
        .unwrap();

    let margins = (1..=10)
        .map(|d| {
            (
                d,
                alpha_constraint_margin(alpha_min, d),
                c_constraint_margin(c_min, alpha_min, BETA, d),
            )
        })
        .collect();
    ConstantsReport {
        alpha_min,
        alpha_binding_d,
        beta: BETA,
        c_min,
        c_binding_d,
        verified_d_max: VERIFIED_D_MAX,
        margins,
    }
}

/// A violated point of the arithmetic chain
/// `(1 + e^{-2kd})^{2^{d - d*}} <= exp(2^d e^{-2dk}) <= exp(exp(-k))`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncCorFailure {
    pub k: u32,
    pub d: u32,
    pub d_star: u32,
    pub lhs_ln: f64,
    pub mid_ln: f64,
    pub rhs_ln: f64,
}

/// Sweep the chain over `k in 1..=k_max`, `d in 1..=d_max`, `d* in 1..=d`,
/// in log space. Returns every violating tuple (expected: none).
pub fn trunccor_check(k_max: u32, d_max: u32) -> Vec<TruncCorFailure> {
    let mut failures = Vec::new();
    for k in 1..=k_max {
        for d in 1..=d_max {
            let kd = f64::from(k) * f64::from(d);
            let mid_ln = 2.0f64.powi(d as i32) * (-2.0 * kd).exp();
            let rhs_ln = (-f64::from(k)).exp();
            for d_star in 1..=d {
                let factor = 2.0f64.powi((d - d_star) as i32);
                let lhs_ln = factor * (-2.0 * kd).exp().ln_1p();
                if !(lhs_ln <= mid_ln + 1e-15 && mid_ln <= rhs_ln + 1e-15) {
                    failures.push(TruncCorFailure {
                        k,
                        d,
                        d_star,
                        lhs_ln,
                        mid_ln,
                        rhs_ln,
                    });
                }
            }
        }
    }
    failures
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_is_the_stated_product() {
        assert_eq!(BETA, 657_920);
    }

    #[test]
    fn alpha_requirement_is_binding_at_d_one() {
        // per-d requirement alpha >= 8 * 2^{3/d} decreases in d
        let mut prev = f64::INFINITY;
        for d in 1..=1000u32 {
            let required = 8.0 * 2.0f64.powf(3.0 / f64::from(d));
            assert!(required <= prev + 1e-12);
            prev = required;
        }
        assert!(alpha_constraint_margin(64, 1) >= -MARGIN_EPS);
        assert!(alpha_constraint_margin(63, 1) < -1e-3);
    }

    #[test]
    fn solver_reproduces_the_known_minima() {
        let report = constants_solver();
        assert_eq!(report.alpha_min, 64);
        assert_eq!(report.alpha_binding_d, 1);
        assert_eq!(report.beta, 657_920);
        // value pinned from the first verified integer scan
        assert_eq!(report.c_min, 24);
        for d in 1..=1000 {
            assert!(alpha_constraint_margin(report.alpha_min, d) >= -MARGIN_EPS);
            assert!(c_constraint_margin(report.c_min, report.alpha_min, BETA, d) >= -MARGIN_EPS);
        }
        assert!((1..=1000)
            .any(|d| c_constraint_margin(report.c_min - 1, report.alpha_min, BETA, d) < -1e-3));
        // tails: both margins keep growing at the verified boundary, so the
        // inequalities hold for every d beyond it
        assert!(
            alpha_constraint_margin(report.alpha_min, 1000)
                > alpha_constraint_margin(report.alpha_min, 999)
        );
        assert!(
            c_constraint_margin(report.c_min, report.alpha_min, BETA, 1000)
                > c_constraint_margin(report.c_min, report.alpha_min, BETA, 999)
        );
    }

    #[test]
    fn trunccor_example_point() {
        // (1 + e^{-2})^2 = 1.288986... <= exp(e^{-1}) = 1.444667...
        let lhs = (1.0 + (-2.0f64).exp()).powi(2);
        let rhs = (-1.0f64).exp().exp();
        assert!((lhs - 1.2889862053619598).abs() < 1e-12);
        assert!((rhs - 1.444667861009766).abs() < 1e-12);
        assert!(lhs <= rhs);
    }

    #[test]
    fn trunccor_grid_is_clean() {
        assert!(trunccor_check(20, 20).is_empty());
    }
}
