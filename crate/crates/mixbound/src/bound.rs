use crate::{MixboundError, Result};

/// A verified lower bound on a root profile:
/// `psi(x) >= max(1 - x^a, b)`, over a state space with `log |V| = log_v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileBoundSpec {
    pub a: f64,
    pub b: f64,
    pub log_v: f64,
}

impl ProfileBoundSpec {
    pub fn new(a: f64, b: f64, log_v: f64) -> Result<Self> {
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !positive(a) || !positive(b) || b >= 1.0 || !positive(log_v) {
            return Err(MixboundError::BadBoundSpec(format!(
                "need a > 0, b in (0,1), log_v > 0; got a={a}, b={b}, log_v={log_v}"
            )));
        }
        Ok(ProfileBoundSpec { a, b, log_v })
    }
}

/// Mixing-time bound from the profile iteration.
///
/// The dominated sequence starts at `Z_0 = sqrt(|V|)` and contracts by
/// `f(z) = min(f1, f2)` per round, `f1(z) = z^{1-a}`, `f2(z) = z (1 - b)`;
/// the chain mixes within `2 n` rounds once `E Z_n <= 1/2`. The counts here
/// iterate that exact minimum in log space; the classical closed forms
/// (`f1` until 4, then `f2` geometric) are reported alongside for
/// comparison and are always finite, while the exact iteration errors out
/// at [`ITERATION_CAP`] for astronomically slow parameter choices.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundResult {
    /// Exact-iteration steps until the iterate drops to 4.
    pub n1: u64,
    /// Further exact-iteration steps until the threshold (default 1/2).
    pub n2: u64,
    /// `2 (n1 + n2)`.
    pub tau_bound: u64,
    /// Closed-form phase counts: `ceil(ln(ln Z0 / ln 4) / a)` and
    /// `ceil(ln 8 / b)`-style over-estimates. Kept in f64: for slowly
    /// contracting profiles they exceed any integer width.
    pub n1_closed: f64,
    pub n2_closed: f64,
    pub tau_closed: f64,
}

pub const ITERATION_CAP: u64 = 20_000_000;

pub fn mixing_bound_from_profile(spec: &ProfileBoundSpec, threshold: f64) -> Result<BoundResult> {
    let spec = ProfileBoundSpec::new(spec.a, spec.b, spec.log_v)?;
    if !threshold.is_finite() || threshold <= 0.0 {
        return Err(MixboundError::BadBoundSpec(format!(
            "threshold must be positive, got {threshold}"
        )));
    }
    let ln_target = threshold.ln();
    let ln_four = 4.0f64.ln();
    let shrink = (1.0 - spec.b).ln();

    let mut ln_z = spec.log_v / 2.0;
    let mut steps = 0u64;
    let mut first_at_four = if ln_z <= ln_four { Some(0) } else { None };
    while ln_z > ln_target {
        ln_z = ((1.0 - spec.a) * ln_z).min(ln_z + shrink);
        steps += 1;
        if first_at_four.is_none() && ln_z <= ln_four {
            first_at_four = Some(steps);
        }
        if steps >= ITERATION_CAP {
            return Err(MixboundError::IterationCap { cap: ITERATION_CAP });
        }
    }
    let n1 = first_at_four.unwrap_or(steps);
    let n2 = steps - n1;

    let (n1_closed, n2_closed) = closed_form_counts(&spec, threshold);
    Ok(BoundResult {
        n1,
        n2,
        tau_bound: 2 * (n1 + n2),
        n1_closed,
        n2_closed,
        tau_closed: 2.0 * (n1_closed + n2_closed),
    })
}

/// The phase-split closed-form over-estimates: `f1` alone until the iterate
/// reaches 4 (using `(1-a)^n <= e^{-an}`), then the geometric `f2` tail.
/// Always finite, however slowly the profile contracts.
pub fn closed_form_counts(spec: &ProfileBoundSpec, threshold: f64) -> (f64, f64) {
    let ln_four = 4.0f64.ln();
    let ln_z0 = spec.log_v / 2.0;
    let n1 = if ln_z0 <= ln_four {
        0.0
    } else {
        ((ln_z0 / ln_four).ln() / spec.a).ceil()
    };
    let n2 = ((4.0f64 / threshold).ln() / spec.b).ceil();
    (n1, n2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f1_phase_exponent_arithmetic() {
        // a = 1/2: two f1 iterations send 16 to 16^{1/4} = 2
        let z: f64 = 16.0;
        let after = z.powf(0.25);
        assert!((after - 2.0).abs() < 1e-12);
    }

    #[test]
    fn f2_phase_is_geometric() {
        // f2^m(4) = 4 (1-b)^m <= 1/2 first at m = ceil(ln 8 / -ln(1-b))
        let b: f64 = 0.1;
        let m = (8.0f64.ln() / -(1.0f64 - b).ln()).ceil() as u64;
        let mut z = 4.0;
        for _ in 0..m - 1 {
            z *= 1.0 - b;
            assert!(z > 0.5);
        }
        z *= 1.0 - b;
        assert!(z <= 0.5);
    }

    #[test]
    fn iteration_reaches_the_threshold() {
        let spec = ProfileBoundSpec::new(0.5, 0.29289321881345254, 4.0f64.ln()).unwrap();
        let result = mixing_bound_from_profile(&spec, 0.5).unwrap();
        // ln z0 = ln 2: z = 2 -> 1.414 -> 1.0 -> 0.707 -> 0.5
        assert_eq!(result.n1 + result.n2, 4);
        assert_eq!(result.tau_bound, 8);
    }

    #[test]
    fn invalid_specs_are_rejected() {
        assert!(ProfileBoundSpec::new(0.0, 0.5, 1.0).is_err());
        assert!(ProfileBoundSpec::new(0.5, 1.0, 1.0).is_err());
        assert!(ProfileBoundSpec::new(0.5, 0.5, 0.0).is_err());
    }

    #[test]
    fn monotone_in_both_profile_parameters() {
        let base = ProfileBoundSpec::new(0.2, 0.1, 30.0).unwrap();
        let tau = mixing_bound_from_profile(&base, 0.5).unwrap().tau_bound;
        for (a, b) in [(0.3, 0.1), (0.2, 0.2), (0.4, 0.3)] {
            let spec = ProfileBoundSpec::new(a, b, 30.0).unwrap();
            let other = mixing_bound_from_profile(&spec, 0.5).unwrap().tau_bound;
            assert!(other <= tau, "tau rose from {tau} to {other} at a={a}, b={b}");
        }
        let bigger_space = ProfileBoundSpec::new(0.2, 0.1, 60.0).unwrap();
        assert!(mixing_bound_from_profile(&bigger_space, 0.5).unwrap().tau_bound >= tau);
    }
}
