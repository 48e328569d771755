use std::collections::HashMap;

use shuffle_core::{
    direction_mask, kj_edge_lowers, rotate_left, DeckState, Schedule, StepOp,
};

use crate::dyadic::Dyadic;
use crate::operator::{OperatorCaps, TransitionOperator};
use crate::space::StateSpaceSpec;
use crate::{KernelError, Result};

/// A probability vector over an enumerated state space.
#[derive(Debug, Clone, PartialEq)]
pub struct DistVector {
    spec: StateSpaceSpec,
    probs: Vec<f64>,
}

impl DistVector {
    pub fn uniform(spec: StateSpaceSpec) -> Self {
        let n = spec.size() as usize;
        DistVector {
            spec,
            probs: vec![1.0 / n as f64; n],
        }
    }

    pub fn point_mass(spec: StateSpaceSpec, x: u32) -> Result<Self> {
        let n = spec.size();
        if u64::from(x) >= n {
            return Err(KernelError::InvalidState {
                state: x.into(),
                size: n,
            });
        }
        let mut probs = vec![0.0; n as usize];
        probs[x as usize] = 1.0;
        Ok(DistVector { spec, probs })
    }

    pub fn from_probs(spec: StateSpaceSpec, probs: Vec<f64>) -> Result<Self> {
        if probs.len() as u64 != spec.size()
            || probs.iter().any(|&p| !(0.0..=1.0 + 1e-12).contains(&p))
            || (probs.iter().sum::<f64>() - 1.0).abs() > 1e-12
        {
            return Err(KernelError::NotDoublyStochastic {
                detail: "distribution must be nonnegative and sum to one".into(),
            });
        }
        Ok(DistVector { spec, probs })
    }

    pub fn spec(&self) -> &StateSpaceSpec {
        &self.spec
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn mass(&self) -> f64 {
        self.probs.iter().sum()
    }

    /// Max over states of `|p(x) * |V| - 1|`: distance from uniform in the
    /// uniform (relative) sense.
    pub fn uniform_deviation(&self) -> f64 {
        let n = self.probs.len() as f64;
        self.probs
            .iter()
            .map(|&p| (p * n - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

/// One exact-kernel step of a distribution: `out(y) = sum_x in(x) p(x, y)`.
pub fn step_dist(dist: &DistVector, op: &TransitionOperator) -> Result<DistVector> {
    if dist.spec != *op.spec() {
        return Err(KernelError::SpecMismatch {
            left: dist.spec.label(),
            right: op.spec().label(),
        });
    }
    let mut probs = vec![0.0f64; dist.probs.len()];
    for (x, &p) in dist.probs.iter().enumerate() {
        if p == 0.0 {
            continue;
        }
        for &(y, q) in op.row(x as u32) {
            probs[y as usize] += p * q.to_f64();
        }
    }
    Ok(DistVector {
        spec: dist.spec.clone(),
        probs,
    })
}

/// Exact distribution over decks, keyed by occupant table.
pub type DeckDistribution = HashMap<Vec<u32>, Dyadic>;

/// Exact distribution of the deck after `rounds` rounds of `schedule`,
/// enumerating every coin outcome with dyadic weights. Feasible whenever
/// the total coin count stays small; the entry cap guards the rest.
pub fn exact_deck_distribution(
    deck: &DeckState,
    schedule: &Schedule,
    rounds: u64,
    caps: &OperatorCaps,
) -> Result<DeckDistribution> {
    let d = deck.dimension();
    let ops = schedule.step_ops(d)?;
    let mut dist: DeckDistribution = HashMap::new();
    dist.insert(deck.occupant().to_vec(), Dyadic::ONE);
    for _ in 0..rounds {
        for op in &ops {
            dist = match *op {
                StepOp::Ring { direction } => expand_ring(&dist, d, direction, caps)?,
                StepOp::RotateLeft => shift_decks(&dist, d),
            };
        }
    }
    Ok(dist)
}

fn expand_ring(
    dist: &DeckDistribution,
    d: u32,
    direction: u32,
    caps: &OperatorCaps,
) -> Result<DeckDistribution> {
    let mask = direction_mask(d, direction)? as usize;
    let lowers: Vec<usize> = kj_edge_lowers(d, direction)?.map(|x| x as usize).collect();
    let e = lowers.len() as u32;
    let weight = Dyadic::half_pow(e);
    let mut next: DeckDistribution = HashMap::new();
    for (occ, p) in dist {
        let w = p.checked_mul(&weight)?;
        for pattern in 0..(1u64 << e) {
            let mut swapped = occ.clone();
            for (bit, &low) in lowers.iter().enumerate() {
                if pattern >> bit & 1 == 1 {
                    swapped.swap(low, low | mask);
                }
            }
            let slot = next.entry(swapped).or_insert(Dyadic::ZERO);
            *slot = slot.checked_add(&w)?;
        }
        if next.len() as u64 > caps.max_entries {
            return Err(KernelError::CapExceeded {
                spec: format!("deck-distribution(d={d})"),
                entries: next.len() as u64,
                cap: caps.max_entries,
            });
        }
    }
    Ok(next)
}

fn shift_decks(dist: &DeckDistribution, d: u32) -> DeckDistribution {
    dist.iter()
        .map(|(occ, &p)| {
            let mut next = vec![0u32; occ.len()];
            for (pos, &card) in occ.iter().enumerate() {
                next[rotate_left(pos as u32, d) as usize] = card;
            }
            (next, p)
        })
        .collect()
}
