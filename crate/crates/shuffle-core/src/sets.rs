use std::collections::BTreeSet;

use crate::position::{direction_mask, kj_edge_lowers};
use crate::{CoinStream, DeckState, Result, ShuffleError};

/// Positions currently holding the given cards. Cardinality is preserved by
/// every shuffle step, so this projects the deck chain onto the Markov chain
/// of unordered position sets.
pub fn project_set(deck: &DeckState, cards: &BTreeSet<u32>) -> Result<BTreeSet<u32>> {
    if cards.is_empty() {
        return Err(ShuffleError::EmptyCardSet);
    }
    let size = deck.len() as u32;
    for &card in cards {
        if card >= size {
            return Err(ShuffleError::UnknownCard {
                card,
                d: deck.dimension(),
            });
        }
    }
    let inv = deck.inverse();
    Ok(cards.iter().map(|&c| inv[c as usize]).collect())
}

/// One `K_j` step of the induced dynamics on position sets.
///
/// A direction-`j` edge with exactly one endpoint in `s` moves that endpoint
/// across on heads; edges with zero or two endpoints leave `s` unchanged.
/// Every edge consumes one coin in the canonical order, so the output agrees
/// exactly with `project_set` after `apply_kj` driven by the same stream.
pub fn set_step(s: &BTreeSet<u32>, d: u32, j: u32, coins: &mut CoinStream) -> Result<BTreeSet<u32>> {
    let mask = direction_mask(d, j)?;
    let mut next = s.clone();
    for lower in kj_edge_lowers(d, j)? {
        let upper = lower | mask;
        let coin = coins.next_bit();
        if coin {
            let has_lower = s.contains(&lower);
            let has_upper = s.contains(&upper);
            if has_lower != has_upper {
                if has_lower {
                    next.remove(&lower);
                    next.insert(upper);
                } else {
                    next.remove(&upper);
                    next.insert(lower);
                }
            }
        }
    }
    Ok(next)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apply_kj;

    fn set(items: &[u32]) -> BTreeSet<u32> {
        items.iter().copied().collect()
    }

    #[test]
    fn identity_deck_projects_cards_to_their_positions() {
        let deck = DeckState::identity(2).unwrap();
        assert_eq!(project_set(&deck, &set(&[0, 1])).unwrap(), set(&[0, 1]));
    }

    #[test]
    fn full_card_set_projects_to_all_positions() {
        let deck = DeckState::identity(2).unwrap();
        let all = set(&[0, 1, 2, 3]);
        assert_eq!(project_set(&deck, &all).unwrap(), all);
    }

    #[test]
    fn unknown_card_rejected() {
        let deck = DeckState::identity(1).unwrap();
        assert!(project_set(&deck, &set(&[9])).is_err());
        assert!(project_set(&deck, &set(&[])).is_err());
    }

    #[test]
    fn full_position_set_is_fixed() {
        let all = set(&[0, 1, 2, 3]);
        let mut coins = CoinStream::new(17);
        for _ in 0..10 {
            assert_eq!(set_step(&all, 2, 1, &mut coins).unwrap(), all);
        }
    }

    #[test]
    fn cardinality_preserved() {
        let s = set(&[0, 3, 5]);
        let mut coins = CoinStream::new(9);
        for j in 1..=3 {
            let next = set_step(&s, 3, j, &mut coins).unwrap();
            assert_eq!(next.len(), s.len());
        }
    }

    #[test]
    fn forced_move_crosses_the_edge() {
        // heads on edge {00,10} moves the singleton across; scan for a seed
        // whose first coin is heads and second is tails
        let mut seed = 0u64;
        loop {
            let mut probe = CoinStream::new(seed);
            if probe.next_bit() && !probe.next_bit() {
                break;
            }
            seed += 1;
        }
        let mut coins = CoinStream::new(seed);
        let next = set_step(&set(&[0]), 2, 1, &mut coins).unwrap();
        assert_eq!(next, set(&[2]));
    }

    #[test]
    fn set_step_commutes_with_projection() {
        // shared coin trace: set_step(project_set(deck)) == project_set(apply_kj(deck))
        for trial in 0..1000u64 {
            let mut setup = CoinStream::for_trial(2024, trial);
            let mut occ: Vec<u32> = (0..8).collect();
            setup.shuffle(&mut occ);
            let deck = DeckState::from_occupant(3, occ).unwrap();
            let mut cards = BTreeSet::new();
            while cards.len() < 3 {
                cards.insert(setup.next_below(8) as u32);
            }
            let j = setup.next_below(3) as u32 + 1;

            let step_seed = setup.next_u64();
            let mut coins_deck = CoinStream::new(step_seed);
            let mut coins_set = CoinStream::new(step_seed);

            let projected = project_set(&deck, &cards).unwrap();
            let stepped_set = set_step(&projected, 3, j, &mut coins_set).unwrap();
            let stepped_deck = apply_kj(&deck, j, &mut coins_deck).unwrap();
            assert_eq!(stepped_set, project_set(&stepped_deck, &cards).unwrap());
        }
    }
}
