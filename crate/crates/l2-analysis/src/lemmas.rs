use crate::func::FuncVector;
use crate::kernel::DenseKernel;
use crate::{L2Error, Result};

/// Interpolation bound `||K^t g||_2^2 <= <g,g>^{1-1/n} <K_hat^n g, g>^{1/n}`
/// for doubly stochastic `K`, `g: V -> [0,1]`, `K_hat = K K^t`.
#[derive(Debug, Clone)]
pub struct PeresReport {
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
}

pub fn peres_lemma_check(
    kernel: &DenseKernel,
    g: &FuncVector,
    n: u32,
    tolerance: f64,
) -> Result<PeresReport> {
    if n < 1 {
        return Err(L2Error::BadExponent { p: n as f64 });
    }
    let lhs = kernel.apply_transpose(g)?.l2_sq();
    let gg = g.inner(g)?;
    let mut iter = g.clone();
    for _ in 0..n {
        iter = kernel.k_hat_apply(&iter)?;
    }
    let k_hat_term = iter.inner(g)?.max(0.0);
    let inv = 1.0 / n as f64;
    let rhs = gg.powf(1.0 - inv) * k_hat_term.powf(inv);
    Ok(PeresReport {
        lhs,
        rhs,
        pass: lhs <= rhs + tolerance,
    })
}

/// Small-mean deviation bound for `X in [0,1]` with `E X = mu <= 1/2`:
/// `E(X^p)/mu^p - 1 <= (mu^{1-p} - 1) E|X - mu| / mu`.
#[derive(Debug, Clone)]
pub struct BallReport {
    pub mu: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
}

/// `support` is a finite distribution as `(value, probability)` pairs.
pub fn ball_lemma_check(support: &[(f64, f64)], p: f64, tolerance: f64) -> Result<BallReport> {
    if p <= 1.0 {
        return Err(L2Error::BadExponent { p });
    }
    let mut total = 0.0;
    for &(value, prob) in support {
        if !(0.0..=1.0).contains(&value) {
            return Err(L2Error::BadDistribution(format!("value {value} outside [0,1]")));
        }
        if prob < 0.0 {
            return Err(L2Error::BadDistribution(format!("negative probability {prob}")));
        }
        total += prob;
    }
    if (total - 1.0).abs() > 1e-9 {
        return Err(L2Error::BadDistribution(format!("mass {total} != 1")));
    }
    let mu: f64 = support.iter().map(|&(v, q)| v * q).sum();
    if mu > 0.5 + 1e-12 {
        return Err(L2Error::MeanTooLarge { mu });
    }
    if mu == 0.0 {
        return Err(L2Error::BadDistribution("mean zero: ratio undefined".into()));
    }
    let moment_p: f64 = support.iter().map(|&(v, q)| v.powf(p) * q).sum();
    let abs_dev: f64 = support.iter().map(|&(v, q)| (v - mu).abs() * q).sum();
    let lhs = moment_p / mu.powf(p) - 1.0;
    let rhs = (mu.powf(1.0 - p) - 1.0) * abs_dev / mu;
    Ok(BallReport {
        mu,
        lhs,
        rhs,
        pass: lhs <= rhs + tolerance,
    })
}

/// Margin of `(1 - delta^2)^{1/4} <= 1 - delta^2 / 4` at one grid point;
/// nonnegative everywhere on `[0, 1]`.
pub fn quarter_power_margin(delta: f64) -> f64 {
    (1.0 - delta * delta / 4.0) - (1.0 - delta * delta).max(0.0).powf(0.25)
}

/// One line of a sweep report.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub instance: String,
    pub lhs: f64,
    pub rhs: f64,
}

/// Sweep export: `instance,lhs,rhs,margin,pass`, one row per checked
/// inequality instance, pass meaning `lhs <= rhs + tolerance`.
pub fn sweep_to_csv(rows: &[SweepRow], tolerance: f64) -> String {
    let mut out = String::from("instance,lhs,rhs,margin,pass\n");
    for row in rows {
        let margin = row.rhs - row.lhs;
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            row.instance,
            row.lhs,
            row.rhs,
            margin,
            row.lhs <= row.rhs + tolerance
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use shuffle_core::CoinStream;

    #[test]
    fn permutation_kernel_attains_equality() {
        let k = DenseKernel::permutation(&[2, 0, 1, 3]).unwrap();
        let g = FuncVector::new(vec![0.2, 0.9, 0.4, 0.0]).unwrap();
        for n in 1..=5 {
            let report = peres_lemma_check(&k, &g, n, 1e-12).unwrap();
            assert!(report.pass);
            assert!(
                (report.lhs - report.rhs).abs() < 1e-12,
                "n={n}: {} vs {}",
                report.lhs,
                report.rhs
            );
        }
    }

    #[test]
    fn n_equals_one_is_an_identity() {
        let mut coins = CoinStream::new(55);
        for _ in 0..20 {
            let k = DenseKernel::random_birkhoff(5, &mut coins);
            let g = FuncVector::new((0..5).map(|_| coins.next_unit()).collect()).unwrap();
            let report = peres_lemma_check(&k, &g, 1, 1e-12).unwrap();
            assert!((report.lhs - report.rhs).abs() < 1e-12);
        }
    }

    #[test]
    fn bernoulli_quarter_case_is_exact() {
        // X Bernoulli(1/4), p = 2: lhs = 3, E|X-mu| = 3/8, rhs = 4.5
        let report =
            ball_lemma_check(&[(0.0, 0.75), (1.0, 0.25)], 2.0, 1e-10).unwrap();
        assert!((report.lhs - 3.0).abs() < 1e-12);
        assert!((report.rhs - 4.5).abs() < 1e-12);
        assert!(report.pass);
    }

    #[test]
    fn point_mass_has_zero_gap() {
        let report = ball_lemma_check(&[(0.3, 1.0)], 1.7, 1e-10).unwrap();
        assert!(report.lhs.abs() < 1e-12);
        assert!(report.rhs.abs() < 1e-12);
        assert!(report.pass);
    }

    #[test]
    fn large_mean_is_rejected() {
        assert!(matches!(
            ball_lemma_check(&[(1.0, 0.6), (0.0, 0.4)], 2.0, 1e-10),
            Err(L2Error::MeanTooLarge { .. })
        ));
    }

    #[test]
    fn quarter_power_margin_nonnegative_on_grid() {
        for i in 0..=10_000 {
            let delta = i as f64 / 10_000.0;
            assert!(quarter_power_margin(delta) >= -1e-15, "delta = {delta}");
        }
    }
}
