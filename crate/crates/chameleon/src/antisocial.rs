use std::collections::BTreeSet;

use shuffle_core::{direction_mask, CoinStream, DeckState, RunTrace};

use crate::{ChameleonError, Result};

/// How `mixes` searches the splits of `S`: exhaustively for small sets,
/// by random splits beyond that.
#[derive(Debug, Clone, Copy)]
pub struct SplitSearch {
    pub exhaustive_limit: u32,
    pub sampled_splits: u32,
    pub seed: u64,
}

impl Default for SplitSearch {
    fn default() -> Self {
        SplitSearch {
            exhaustive_limit: 20,
            sampled_splits: 4096,
            seed: 0,
        }
    }
}

/// `Z(A, B, j)` per round `j`: replay the trace from `initial` and count the
/// cards of `A` that at no ringing step of the round sat across a ringing
/// edge from a card of `B`. Every edge of the step's direction rings, so
/// adjacency at the moment of ringing decides contact; swaps then follow the
/// recorded coins. Only complete rounds are reported.
pub fn antisocial_counts(
    initial: &DeckState,
    a: &BTreeSet<u32>,
    b: &BTreeSet<u32>,
    trace: &RunTrace,
    steps_per_round: u64,
) -> Result<Vec<u32>> {
    if !a.is_disjoint(b) {
        return Err(ChameleonError::OverlappingSets);
    }
    let size = initial.len();
    let mut in_a = vec![false; size];
    let mut in_b = vec![false; size];
    for &card in a {
        in_a[card as usize] = true;
    }
    for &card in b {
        in_b[card as usize] = true;
    }

    let rounds = trace.rounds(steps_per_round) as usize;
    let mut counts = Vec::with_capacity(rounds);
    let mut deck = initial.clone();
    let mut social: BTreeSet<u32> = BTreeSet::new();
    let mut current_round = 0u64;
    for event in &trace.events {
        let round = event.step / steps_per_round;
        if round != current_round {
            if current_round < rounds as u64 {
                counts.push((a.len() - social.len()) as u32);
            }
            social.clear();
            current_round = round;
        }
        let mask = direction_mask(deck.dimension(), event.direction)?;
        let upper = event.lower | mask;
        let card_low = deck.card_at(event.lower);
        let card_up = deck.card_at(upper);
        if in_a[card_low as usize] && in_b[card_up as usize] {
            social.insert(card_low);
        }
        if in_a[card_up as usize] && in_b[card_low as usize] {
            social.insert(card_up);
        }
        if event.coin {
            deck.swap_positions(event.lower, upper);
        }
    }
    if (current_round as usize) < rounds {
        counts.push((a.len() - social.len()) as u32);
    }
    counts.truncate(rounds);
    Ok(counts)
}

/// `A` avoids `B` when `Z(A, B, j) > (7/8) |A|` for `window` consecutive
/// rounds whose window ends within the trace. A trace shorter than the
/// window can never witness avoidance.
pub fn avoids(
    initial: &DeckState,
    a: &BTreeSet<u32>,
    b: &BTreeSet<u32>,
    trace: &RunTrace,
    window: u64,
    steps_per_round: u64,
) -> Result<bool> {
    if window == 0 {
        return Err(ChameleonError::BadWindow);
    }
    let counts = antisocial_counts(initial, a, b, trace, steps_per_round)?;
    let threshold = 7.0 * a.len() as f64 / 8.0;
    let mut run = 0u64;
    for &z in &counts {
        if f64::from(z) > threshold {
            run += 1;
            if run >= window {
                return Ok(true);
            }
        } else {
            run = 0;
        }
    }
    Ok(false)
}

/// `S` mixes when no split `S = A u B` with `|A| <= |S| / 2` has `A`
/// avoiding `B` over the trace.
pub fn mixes(
    initial: &DeckState,
    s: &BTreeSet<u32>,
    trace: &RunTrace,
    window: u64,
    steps_per_round: u64,
    search: &SplitSearch,
) -> Result<bool> {
    let members: Vec<u32> = s.iter().copied().collect();
    let half = members.len() / 2;
    if members.len() as u32 <= search.exhaustive_limit {
        for pattern in 1u64..(1u64 << members.len()) {
            if (pattern.count_ones() as usize) > half {
                continue;
            }
            let (a, b) = split_by_pattern(&members, pattern);
            if avoids(initial, &a, &b, trace, window, steps_per_round)? {
                return Ok(false);
            }
        }
    } else {
        let mut coins = CoinStream::new(search.seed);
        for _ in 0..search.sampled_splits {
            let size = 1 + coins.next_below(half as u64) as usize;
            let mut indices: Vec<usize> = (0..members.len()).collect();
            coins.shuffle(&mut indices);
            let mut pattern = 0u64;
            for &i in indices.iter().take(size) {
                pattern |= 1 << i;
            }
            let (a, b) = split_by_pattern(&members, pattern);
            if avoids(initial, &a, &b, trace, window, steps_per_round)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn split_by_pattern(members: &[u32], pattern: u64) -> (BTreeSet<u32>, BTreeSet<u32>) {
    let mut a = BTreeSet::new();
    let mut b = BTreeSet::new();
    for (i, &card) in members.iter().enumerate() {
        if pattern >> i & 1 == 1 {
            a.insert(card);
        } else {
            b.insert(card);
        }
    }
    (a, b)
}
