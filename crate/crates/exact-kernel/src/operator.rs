use std::collections::BTreeMap;

use shuffle_core::{direction_mask, kj_edge_lowers, rotate_left, Schedule, StepOp};

use crate::dyadic::Dyadic;
use crate::space::StateSpaceSpec;
use crate::{KernelError, Result};

/// Resource limits for operator construction.
#[derive(Debug, Clone, Copy)]
pub struct OperatorCaps {
    /// Total row entries allowed across the operator (including
    /// intermediates of a schedule composition).
    pub max_entries: u64,
}

impl Default for OperatorCaps {
    fn default() -> Self {
        // |V| x branching budget
        OperatorCaps { max_entries: 100_000_000 }
    }
}

type Row = Vec<(u32, Dyadic)>;

/// A doubly stochastic kernel over an enumerated state space, with exact
/// dyadic row entries. Rows are sparse and sorted by target state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionOperator {
    spec: StateSpaceSpec,
    rows: Vec<Row>,
}

impl TransitionOperator {
    /// Compose one round of `schedule` into an exact operator.
    ///
    /// Each ringing step contributes `2^{2^{d-1}}` equally likely swap
    /// patterns; the schedule multiplies the per-step operators together.
    pub fn build(
        spec: StateSpaceSpec,
        schedule: &Schedule,
        caps: &OperatorCaps,
    ) -> Result<TransitionOperator> {
        let d = spec.dimension().ok_or_else(|| KernelError::UnsupportedSpec {
            spec: spec.label(),
            reason: "custom spaces carry no shuffle schedule".into(),
        })?;
        let ops = schedule.step_ops(d)?;
        let mut acc: Option<TransitionOperator> = None;
        for op in &ops {
            let step = TransitionOperator::single_step(spec.clone(), *op, caps)?;
            acc = Some(match acc {
                None => step,
                Some(prev) => prev.compose(&step, caps)?,
            });
        }
        let built = acc.expect("schedules expand to at least one step");
        built.verify_doubly_stochastic()?;
        Ok(built)
    }

    /// Operator of a single primitive step.
    pub fn single_step(
        spec: StateSpaceSpec,
        op: StepOp,
        caps: &OperatorCaps,
    ) -> Result<TransitionOperator> {
        let size = spec.size();
        let rows = match (&spec, op) {
            (StateSpaceSpec::SingleCard { d }, StepOp::Ring { direction }) => {
                let mask = direction_mask(*d, direction)?;
                (0..size as u32)
                    .map(|x| {
                        let mut row = vec![(x, Dyadic::half_pow(1)), (x ^ mask, Dyadic::half_pow(1))];
                        row.sort_by_key(|&(y, _)| y);
                        row
                    })
                    .collect()
            }
            (StateSpaceSpec::SingleCard { d }, StepOp::RotateLeft) => (0..size as u32)
                .map(|x| vec![(rotate_left(x, *d), Dyadic::ONE)])
                .collect(),
            (StateSpaceSpec::KSubset { d, k }, StepOp::Ring { direction }) => {
                subset_ring_rows(&spec, *d, *k, direction)?
            }
            (StateSpaceSpec::KSubset { d, k }, StepOp::RotateLeft) => (0..size)
                .map(|rank| {
                    let mask = spec.decode_subset(rank, *k);
                    let mut rotated = 0u64;
                    for pos in 0..(1u32 << d) {
                        if mask >> pos & 1 == 1 {
                            rotated |= 1u64 << rotate_left(pos, *d);
                        }
                    }
                    vec![(spec.encode_subset(rotated) as u32, Dyadic::ONE)]
                })
                .collect(),
            (StateSpaceSpec::FullPermutations { d }, step) => {
                permutation_step_rows(&spec, *d, step, caps)?
            }
            (StateSpaceSpec::Custom { .. }, _) => {
                return Err(KernelError::UnsupportedSpec {
                    spec: spec.label(),
                    reason: "custom spaces carry no shuffle schedule".into(),
                })
            }
        };
        let built = TransitionOperator { spec, rows };
        built.check_entry_cap(caps)?;
        Ok(built)
    }

    /// Kernel from explicit dyadic rows; validates double stochasticity.
    pub fn from_rows(spec: StateSpaceSpec, rows: Vec<Vec<(u32, Dyadic)>>) -> Result<Self> {
        if rows.len() as u64 != spec.size() {
            return Err(KernelError::NotDoublyStochastic {
                detail: format!("{} rows for {} states", rows.len(), spec.size()),
            });
        }
        let mut sorted = rows;
        for row in &mut sorted {
            row.sort_by_key(|&(y, _)| y);
            row.retain(|(_, p)| !p.is_zero());
        }
        let op = TransitionOperator { spec, rows: sorted };
        op.verify_doubly_stochastic()?;
        Ok(op)
    }

    pub fn spec(&self) -> &StateSpaceSpec {
        &self.spec
    }

    pub fn size(&self) -> u64 {
        self.spec.size()
    }

    pub fn row(&self, x: u32) -> &[(u32, Dyadic)] {
        &self.rows[x as usize]
    }

    pub fn entry_count(&self) -> u64 {
        self.rows.iter().map(|r| r.len() as u64).sum()
    }

    /// Exact transition probability `p(x, y)`.
    pub fn prob(&self, x: u32, y: u32) -> Dyadic {
        self.rows[x as usize]
            .binary_search_by_key(&y, |&(state, _)| state)
            .map(|i| self.rows[x as usize][i].1)
            .unwrap_or(Dyadic::ZERO)
    }

    /// `self` then `other`, exactly.
    pub fn compose(&self, other: &TransitionOperator, caps: &OperatorCaps) -> Result<Self> {
        if self.spec != other.spec {
            return Err(KernelError::SpecMismatch {
                left: self.spec.label(),
                right: other.spec.label(),
            });
        }
        let mut rows = Vec::with_capacity(self.rows.len());
        let mut entries = 0u64;
        for row in &self.rows {
            let mut acc: BTreeMap<u32, Dyadic> = BTreeMap::new();
            for &(mid, p) in row {
                for &(dst, q) in &other.rows[mid as usize] {
                    let w = p.checked_mul(&q)?;
                    let slot = acc.entry(dst).or_insert(Dyadic::ZERO);
                    *slot = slot.checked_add(&w)?;
                }
            }
            let row: Row = acc.into_iter().collect();
            entries += row.len() as u64;
            if entries > caps.max_entries {
                return Err(KernelError::CapExceeded {
                    spec: self.spec.label(),
                    entries,
                    cap: caps.max_entries,
                });
            }
            rows.push(row);
        }
        Ok(TransitionOperator {
            spec: self.spec.clone(),
            rows,
        })
    }

    /// Time reversal `K^t(x, y) = K(y, x)`.
    pub fn transpose(&self) -> TransitionOperator {
        let mut rows: Vec<Row> = vec![Vec::new(); self.rows.len()];
        for (x, row) in self.rows.iter().enumerate() {
            for &(y, p) in row {
                rows[y as usize].push((x as u32, p));
            }
        }
        for row in &mut rows {
            row.sort_by_key(|&(y, _)| y);
        }
        TransitionOperator {
            spec: self.spec.clone(),
            rows,
        }
    }

    /// Every row and every column must sum to exactly one.
    pub fn verify_doubly_stochastic(&self) -> Result<()> {
        let n = self.rows.len();
        let mut col_sums = vec![Dyadic::ZERO; n];
        for (x, row) in self.rows.iter().enumerate() {
            let mut row_sum = Dyadic::ZERO;
            for &(y, p) in row {
                row_sum = row_sum.checked_add(&p)?;
                col_sums[y as usize] = col_sums[y as usize].checked_add(&p)?;
            }
            if !row_sum.is_one() {
                return Err(KernelError::NotDoublyStochastic {
                    detail: format!("row {x} sums to {:?}", row_sum),
                });
            }
        }
        if let Some(y) = col_sums.iter().position(|s| !s.is_one()) {
            return Err(KernelError::NotDoublyStochastic {
                detail: format!("column {y} sums to {:?}", col_sums[y]),
            });
        }
        Ok(())
    }

    /// Row-major dense f64 copy (exact: dyadic entries are binary floats).
    pub fn to_dense(&self) -> crate::matrix::DenseMatrix {
        let n = self.rows.len();
        let mut data = vec![0.0f64; n * n];
        for (x, row) in self.rows.iter().enumerate() {
            for &(y, p) in row {
                data[x * n + y as usize] = p.to_f64();
            }
        }
        crate::matrix::DenseMatrix::from_raw(n, data)
    }

    fn check_entry_cap(&self, caps: &OperatorCaps) -> Result<()> {
        let entries = self.entry_count();
        if entries > caps.max_entries {
            return Err(KernelError::CapExceeded {
                spec: self.spec.label(),
                entries,
                cap: caps.max_entries,
            });
        }
        Ok(())
    }
}

/// Induced `K_j` action on k-subsets of positions: each boundary edge
/// (exactly one endpoint occupied) crosses independently on heads; interior
/// and empty edges never change the set, so their coins marginalize away.
fn subset_ring_rows(
    spec: &StateSpaceSpec,
    d: u32,
    k: u32,
    direction: u32,
) -> Result<Vec<Row>> {
    let size = spec.size();
    let mask = direction_mask(d, direction)? as u64;
    let lowers: Vec<u64> = kj_edge_lowers(d, direction)?.map(u64::from).collect();
    let mut rows = Vec::with_capacity(size as usize);
    for rank in 0..size {
        let set = spec.decode_subset(rank, k);
        let boundary: Vec<u64> = lowers
            .iter()
            .filter(|&&low| (set >> low & 1) != (set >> (low | mask)) & 1)
            .map(|&low| (1u64 << low) | (1u64 << (low | mask)))
            .collect();
        let e = boundary.len() as u32;
        let weight = Dyadic::half_pow(e);
        let mut row: Row = Vec::with_capacity(1 << e);
        for pattern in 0..(1u64 << e) {
            let mut next = set;
            for (bit, toggle) in boundary.iter().enumerate() {
                if pattern >> bit & 1 == 1 {
                    next ^= toggle;
                }
            }
            row.push((spec.encode_subset(next) as u32, weight));
        }
        row.sort_by_key(|&(y, _)| y);
        rows.push(row);
    }
    Ok(rows)
}

fn permutation_step_rows(
    spec: &StateSpaceSpec,
    d: u32,
    op: StepOp,
    caps: &OperatorCaps,
) -> Result<Vec<Row>> {
    let size = spec.size();
    let n = 1usize << d;
    let mut rows = Vec::with_capacity(size as usize);
    let mut entries = 0u64;
    match op {
        StepOp::Ring { direction } => {
            let mask = direction_mask(d, direction)? as usize;
            let lowers: Vec<usize> = kj_edge_lowers(d, direction)?.map(|x| x as usize).collect();
            let e = lowers.len() as u32;
            let weight = Dyadic::half_pow(e);
            for rank in 0..size {
                let occ = spec.decode_permutation(rank, n);
                let mut row: Row = Vec::with_capacity(1 << e);
                for pattern in 0..(1u64 << e) {
                    let mut next = occ.clone();
                    for (bit, &low) in lowers.iter().enumerate() {
                        if pattern >> bit & 1 == 1 {
                            next.swap(low, low | mask);
                        }
                    }
                    row.push((spec.encode_permutation(&next)? as u32, weight));
                }
                row.sort_by_key(|&(y, _)| y);
                entries += row.len() as u64;
                if entries > caps.max_entries {
                    return Err(KernelError::CapExceeded {
                        spec: spec.label(),
                        entries,
                        cap: caps.max_entries,
                    });
                }
                rows.push(row);
            }
        }
        StepOp::RotateLeft => {
            for rank in 0..size {
                let occ = spec.decode_permutation(rank, n);
                let mut next = vec![0u32; n];
                for (pos, &card) in occ.iter().enumerate() {
                    next[rotate_left(pos as u32, d) as usize] = card;
                }
                rows.push(vec![(spec.encode_permutation(&next)? as u32, Dyadic::ONE)]);
            }
        }
    }
    Ok(rows)
}

/// The two-state chain whose entries are all 1/2: the smallest doubly
/// stochastic kernel, used as a worked example everywhere.
pub fn two_state_half_chain() -> TransitionOperator {
    let h = Dyadic::half_pow(1);
    TransitionOperator::from_rows(
        StateSpaceSpec::custom(2),
        vec![vec![(0, h), (1, h)], vec![(0, h), (1, h)]],
    )
    .expect("half chain is doubly stochastic")
}
