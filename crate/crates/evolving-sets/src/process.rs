use exact_kernel::{Dyadic, TransitionOperator};

use crate::{EvolvingError, Result};

pub(crate) fn check_mask_domain(op: &TransitionOperator, max: u64) -> Result<u32> {
    let size = op.size();
    if size > max {
        return Err(EvolvingError::TooManyStates { size, max });
    }
    Ok(size as u32)
}

/// Exact dyadic values of `p(S, y) = sum_{x in S} p(x, y)` for every `y`.
pub(crate) fn set_transition_profile(s: u32, op: &TransitionOperator) -> Result<Vec<Dyadic>> {
    let n = check_mask_domain(op, 32)?;
    let mut profile = vec![Dyadic::ZERO; n as usize];
    for x in 0..n {
        if s >> x & 1 == 1 {
            for &(y, p) in op.row(x) {
                profile[y as usize] = profile[y as usize].checked_add(&p)?;
            }
        }
    }
    Ok(profile)
}

/// The exact one-step law of the evolving-set process from `s`: at most
/// `|V| + 1` atoms, one per distinct value of `p(S, .)`, each carrying the
/// dyadic length of its `U`-interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneStepLaw {
    /// `(next set, probability)`, every probability positive.
    pub atoms: Vec<(u32, Dyadic)>,
}

impl OneStepLaw {
    pub fn total_mass(&self) -> Result<Dyadic> {
        let mut sum = Dyadic::ZERO;
        for (_, p) in &self.atoms {
            sum = sum.checked_add(p)?;
        }
        Ok(sum)
    }
}

pub fn one_step_law(s: u32, op: &TransitionOperator) -> Result<OneStepLaw> {
    let n = check_mask_domain(op, 32)?;
    let profile = set_transition_profile(s, op)?;
    // distinct positive values ascending: U in (v_{i-1}, v_i] yields
    // {y : p(S,y) >= v_i}
    let mut values: Vec<Dyadic> = profile.iter().copied().filter(|v| !v.is_zero()).collect();
    values.sort();
    values.dedup();
    let mut atoms = Vec::with_capacity(values.len() + 1);
    let mut prev = Dyadic::ZERO;
    for &v in &values {
        let mut mask = 0u32;
        for y in 0..n {
            if profile[y as usize] >= v {
                mask |= 1 << y;
            }
        }
        atoms.push((mask, v.checked_sub(&prev)?));
        prev = v;
    }
    if !prev.is_one() {
        // residual interval (v_max, 1] lands on the empty set
        atoms.push((0, Dyadic::ONE.checked_sub(&prev)?));
    }
    atoms.retain(|(_, p)| !p.is_zero());
    Ok(OneStepLaw { atoms })
}

/// One sampled step: `S~ = { y : p(S, y) >= u }`. Monotone in `u` (smaller
/// `u` gives a larger set).
pub fn es_step(s: u32, op: &TransitionOperator, u: f64) -> Result<u32> {
    let n = check_mask_domain(op, 32)?;
    let profile = set_transition_profile(s, op)?;
    let mut mask = 0u32;
    for y in 0..n {
        if profile[y as usize].to_f64() >= u {
            mask |= 1 << y;
        }
    }
    Ok(mask)
}

/// Exact one-step expectations from `s`.
#[derive(Debug, Clone, PartialEq)]
pub struct StepExpectations {
    pub set_size: u32,
    /// `E |S~|`, exact (dyadic entries are binary floats).
    pub expected_size: f64,
    /// Whether `E |S~| = |S|` holds as exact integer arithmetic.
    pub size_martingale_exact: bool,
    /// `E sqrt(|S~| / |S|)`.
    pub expected_root_ratio: f64,
    /// `1 - E sqrt(|S~| / |S|)`.
    pub psi: f64,
}

/// Integrate `|S~|` and `sqrt(|S~|/|S|)` over the `U`-intervals between
/// consecutive values of `p(S, .)`.
pub fn exact_expectations(s: u32, op: &TransitionOperator) -> Result<StepExpectations> {
    if s == 0 {
        return Err(EvolvingError::EmptySet);
    }
    let law = one_step_law(s, op)?;
    let set_size = s.count_ones();

    // integer-exact martingale check at the common denominator
    let common = law
        .atoms
        .iter()
        .map(|(_, p)| p.log2_denominator())
        .max()
        .unwrap_or(0);
    let mut size_sum: u128 = 0;
    for &(mask, p) in &law.atoms {
        size_sum += p.numerator_at(common)? * u128::from(mask.count_ones());
    }
    let size_martingale_exact = size_sum == u128::from(set_size) << common;

    let mut expected_size = 0.0;
    let mut expected_root_ratio = 0.0;
    for &(mask, p) in &law.atoms {
        let w = p.to_f64();
        let next_size = mask.count_ones() as f64;
        expected_size += w * next_size;
        expected_root_ratio += w * (next_size / set_size as f64).sqrt();
    }
    Ok(StepExpectations {
        set_size,
        expected_size,
        size_martingale_exact,
        expected_root_ratio,
        psi: 1.0 - expected_root_ratio,
    })
}
