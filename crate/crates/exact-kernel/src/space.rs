use std::fmt;

use crate::{KernelError, Result};

/// Maximum dimension for single-card chains (dense vectors of size `2^d`).
const MAX_CARD_DIMENSION: u32 = 20;
/// Maximum dimension for subset chains (position sets in a u64 mask).
const MAX_SUBSET_DIMENSION: u32 = 6;

/// An enumerated state space with a total bijective index <-> state codec.
///
/// Codecs: permutations are ranked by Lehmer code, subsets by colexicographic
/// combinatorial rank, and single-card states are the position index itself.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum StateSpaceSpec {
    /// All `(2^d)!` orderings of the deck; exact enumeration needs `d <= 3`.
    FullPermutations { d: u32 },
    /// The position of one tracked card: `2^d` states.
    SingleCard { d: u32 },
    /// Unordered k-subsets of the `2^d` positions: `C(2^d, k)` states.
    KSubset { d: u32, k: u32 },
    /// Externally defined states, e.g. hand-built or random test kernels.
    Custom { size: u64 },
}

impl StateSpaceSpec {
    pub fn full_permutations(d: u32) -> Result<Self> {
        if !(1..=3).contains(&d) {
            return Err(KernelError::UnsupportedSpec {
                spec: format!("full-permutations(d={d})"),
                reason: "exact permutation enumeration requires 1 <= d <= 3".into(),
            });
        }
        Ok(StateSpaceSpec::FullPermutations { d })
    }

    pub fn single_card(d: u32) -> Result<Self> {
        if !(1..=MAX_CARD_DIMENSION).contains(&d) {
            return Err(KernelError::UnsupportedSpec {
                spec: format!("single-card(d={d})"),
                reason: format!("requires 1 <= d <= {MAX_CARD_DIMENSION}"),
            });
        }
        Ok(StateSpaceSpec::SingleCard { d })
    }

    pub fn k_subset(d: u32, k: u32) -> Result<Self> {
        if !(1..=MAX_SUBSET_DIMENSION).contains(&d) || k < 1 || k > (1 << d) {
            return Err(KernelError::UnsupportedSpec {
                spec: format!("k-subset(d={d}, k={k})"),
                reason: format!(
                    "requires 1 <= d <= {MAX_SUBSET_DIMENSION} and 1 <= k <= 2^d"
                ),
            });
        }
        Ok(StateSpaceSpec::KSubset { d, k })
    }

    pub fn custom(size: u64) -> Self {
        StateSpaceSpec::Custom { size }
    }

    pub fn size(&self) -> u64 {
        match *self {
            StateSpaceSpec::FullPermutations { d } => factorial(1u64 << d),
            StateSpaceSpec::SingleCard { d } => 1u64 << d,
            StateSpaceSpec::KSubset { d, k } => binomial(1u64 << d, k as u64),
            StateSpaceSpec::Custom { size } => size,
        }
    }

    /// Hypercube dimension, when the space is tied to one.
    pub fn dimension(&self) -> Option<u32> {
        match *self {
            StateSpaceSpec::FullPermutations { d }
            | StateSpaceSpec::SingleCard { d }
            | StateSpaceSpec::KSubset { d, .. } => Some(d),
            StateSpaceSpec::Custom { .. } => None,
        }
    }

    pub fn label(&self) -> String {
        format!("{self}")
    }

    // -- permutation codec ---------------------------------------------

    /// Lehmer rank of an occupant table (position -> card).
    pub fn encode_permutation(&self, occupant: &[u32]) -> Result<u64> {
        let n = occupant.len();
        let mut rank = 0u64;
        // O(n^2) is fine at n <= 8
        for i in 0..n {
            let smaller = occupant[i + 1..]
                .iter()
                .filter(|&&c| c < occupant[i])
                .count() as u64;
            rank += smaller * factorial((n - 1 - i) as u64);
        }
        Ok(rank)
    }

    pub fn decode_permutation(&self, mut rank: u64, n: usize) -> Vec<u32> {
        let mut pool: Vec<u32> = (0..n as u32).collect();
        let mut occupant = Vec::with_capacity(n);
        for i in (0..n).rev() {
            let f = factorial(i as u64);
            let idx = (rank / f) as usize;
            rank %= f;
            occupant.push(pool.remove(idx));
        }
        occupant
    }

    // -- subset codec (colexicographic) ---------------------------------

    /// Colex rank of a position-set bitmask with exactly `k` bits.
    pub fn encode_subset(&self, mask: u64) -> u64 {
        let mut rank = 0u64;
        let mut i = 0u64;
        for pos in 0..64u64 {
            if mask >> pos & 1 == 1 {
                i += 1;
                rank += binomial(pos, i);
            }
        }
        rank
    }

    pub fn decode_subset(&self, mut rank: u64, k: u32) -> u64 {
        let mut mask = 0u64;
        for i in (1..=k as u64).rev() {
            // largest p with C(p, i) <= rank
            let mut p = i - 1;
            while binomial(p + 1, i) <= rank {
                p += 1;
            }
            rank -= binomial(p, i);
            mask |= 1u64 << p;
        }
        mask
    }
}

impl fmt::Display for StateSpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            StateSpaceSpec::FullPermutations { d } => write!(f, "full-permutations(d={d})"),
            StateSpaceSpec::SingleCard { d } => write!(f, "single-card(d={d})"),
            StateSpaceSpec::KSubset { d, k } => write!(f, "k-subset(d={d},k={k})"),
            StateSpaceSpec::Custom { size } => write!(f, "custom({size})"),
        }
    }
}

pub(crate) fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u128;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}
