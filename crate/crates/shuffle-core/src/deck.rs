use crate::position::check_dimension;
use crate::{Result, ShuffleError};

/// The state of the deck: a bijection from hypercube positions to card ids.
///
/// `occupant[p]` is the card at position `p`; both directions are queryable
/// (cards are `0..2^d`, a pure relabeling of one-based card labels).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DeckState {
    d: u32,
    occupant: Vec<u32>,
}

impl DeckState {
    /// Deck with card `i` at position `i`.
    pub fn identity(d: u32) -> Result<Self> {
        check_dimension(d)?;
        Ok(DeckState {
            d,
            occupant: (0..1u32 << d).collect(),
        })
    }

    pub fn from_occupant(d: u32, occupant: Vec<u32>) -> Result<Self> {
        check_dimension(d)?;
        let size = 1usize << d;
        if occupant.len() != size || !is_bijection(&occupant) {
            return Err(ShuffleError::NotABijection { d });
        }
        Ok(DeckState { d, occupant })
    }

    pub fn dimension(&self) -> u32 {
        self.d
    }

    /// Number of cards, `2^d`.
    pub fn len(&self) -> usize {
        self.occupant.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn card_at(&self, position: u32) -> u32 {
        self.occupant[position as usize]
    }

    pub fn occupant(&self) -> &[u32] {
        &self.occupant
    }

    pub fn position_of(&self, card: u32) -> Result<u32> {
        self.occupant
            .iter()
            .position(|&c| c == card)
            .map(|p| p as u32)
            .ok_or(ShuffleError::UnknownCard { card, d: self.d })
    }

    /// Inverse table: `inverse()[card] = position`.
    pub fn inverse(&self) -> Vec<u32> {
        let mut inv = vec![0u32; self.occupant.len()];
        for (pos, &card) in self.occupant.iter().enumerate() {
            inv[card as usize] = pos as u32;
        }
        inv
    }

    pub fn is_bijection(&self) -> bool {
        is_bijection(&self.occupant)
    }

    /// Swap the occupants of two positions (what a ringing edge does on
    /// heads). Bijections are closed under swaps.
    pub fn swap_positions(&mut self, a: u32, b: u32) {
        self.occupant.swap(a as usize, b as usize);
    }

    pub(crate) fn occupant_mut(&mut self) -> &mut [u32] {
        &mut self.occupant
    }

    pub(crate) fn replace_occupant(&mut self, occupant: Vec<u32>) {
        debug_assert_eq!(occupant.len(), self.occupant.len());
        self.occupant = occupant;
    }
}

fn is_bijection(occupant: &[u32]) -> bool {
    let n = occupant.len();
    let mut seen = vec![false; n];
    for &c in occupant {
        let c = c as usize;
        if c >= n || seen[c] {
            return false;
        }
        seen[c] = true;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_bijection() {
        let deck = DeckState::identity(3).unwrap();
        assert!(deck.is_bijection());
        assert_eq!(deck.len(), 8);
        assert_eq!(deck.card_at(5), 5);
        assert_eq!(deck.position_of(5).unwrap(), 5);
    }

    #[test]
    fn duplicate_entries_rejected() {
        assert_eq!(
            DeckState::from_occupant(1, vec![0, 0]),
            Err(ShuffleError::NotABijection { d: 1 })
        );
    }

    #[test]
    fn unknown_card_rejected() {
        let deck = DeckState::identity(1).unwrap();
        assert!(deck.position_of(7).is_err());
    }

    #[test]
    fn inverse_roundtrips() {
        let deck = DeckState::from_occupant(2, vec![2, 0, 3, 1]).unwrap();
        let inv = deck.inverse();
        for card in 0..4u32 {
            assert_eq!(deck.card_at(inv[card as usize]), card);
        }
    }
}
