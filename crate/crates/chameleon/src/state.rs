use shuffle_core::{direction_mask, kj_edge_lowers, zigzag_direction, CoinStream, DeckState};

use crate::{ChameleonError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Color {
    Red,
    White,
    Pink,
    Black,
}

/// Deck positions plus per-card colors and the de-pinking schedule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChameleonState {
    deck: DeckState,
    colors: Vec<Color>, // indexed by card id
    b: u32,
    depink_period: u32, // rounds between collective re-colorings
    step: u64,          // ringing steps done (2d per round)
}

impl ChameleonState {
    /// Start from the identity deck with `cards[..b-1]` white, the last card
    /// red, and everything else black. Needs `b > 2^{d-1}` distinct cards.
    pub fn init(d: u32, depink_period: u32, cards: &[u32]) -> Result<Self> {
        let deck = DeckState::identity(d)?;
        let size = deck.len() as u32;
        let b = cards.len() as u32;
        if b <= size / 2 {
            return Err(ChameleonError::TooFewNonblack { b, min: size / 2 });
        }
        if depink_period == 0 {
            return Err(ChameleonError::BadPeriod);
        }
        let mut colors = vec![Color::Black; size as usize];
        for (i, &card) in cards.iter().enumerate() {
            if card >= size || colors[card as usize] != Color::Black {
                return Err(ChameleonError::BadCardList);
            }
            colors[card as usize] = if i + 1 == cards.len() {
                Color::Red
            } else {
                Color::White
            };
        }
        Ok(ChameleonState {
            deck,
            colors,
            b,
            depink_period,
            step: 0,
        })
    }

    pub fn dimension(&self) -> u32 {
        self.deck.dimension()
    }

    pub fn deck(&self) -> &DeckState {
        &self.deck
    }

    pub fn color_of(&self, card: u32) -> Color {
        self.colors[card as usize]
    }

    pub fn nonblack(&self) -> u32 {
        self.b
    }

    pub fn depink_period(&self) -> u32 {
        self.depink_period
    }

    pub fn steps_done(&self) -> u64 {
        self.step
    }

    pub fn rounds_done(&self) -> u64 {
        self.step / (2 * self.dimension() as u64)
    }

    pub fn count(&self, color: Color) -> u32 {
        self.colors.iter().filter(|&&c| c == color).count() as u32
    }

    /// Mask of positions currently holding nonblack cards (the W observable).
    pub fn nonblack_position_mask(&self) -> u64 {
        let mut mask = 0u64;
        for (pos, &card) in self.deck.occupant().iter().enumerate() {
            if self.colors[card as usize] != Color::Black {
                mask |= 1u64 << pos;
            }
        }
        mask
    }

    /// Red paint at position `x`: 1 for red, 1/2 for pink, 0 otherwise.
    pub fn rho(&self, x: u32) -> f64 {
        match self.colors[self.deck.card_at(x) as usize] {
            Color::Red => 1.0,
            Color::Pink => 0.5,
            _ => 0.0,
        }
    }

    /// Total red paint `sum_x rho(x) = #red + #pink / 2`. Pinkening trades
    /// one red and one white for two pinks, so this is constant between
    /// de-pinkings and jumps by half the pink count at them.
    pub fn red_mass(&self) -> f64 {
        self.count(Color::Red) as f64 + self.count(Color::Pink) as f64 / 2.0
    }

    /// Folded red mass `min(Z, k - Z)` with `k` the nonblack count.
    pub fn red_mass_sharp(&self) -> f64 {
        let z = self.red_mass();
        z.min(self.b as f64 - z)
    }

    /// Cards currently red, or currently white, whichever the folded mass
    /// tracks (red side when `Z <= k/2`).
    pub fn smaller_side(&self) -> Vec<u32> {
        let target = if self.red_mass() <= self.b as f64 / 2.0 {
            Color::Red
        } else {
            Color::White
        };
        (0..self.colors.len() as u32)
            .filter(|&c| self.colors[c as usize] == target)
            .collect()
    }

    /// One ringing step of the zigzag schedule with explicit coins. Every
    /// direction-j edge rings: a red-white contact pinkens both endpoints
    /// whatever the coin, then the coin decides the swap. Edge order is the
    /// canonical ascending-lower order shared with the plain shuffles.
    pub fn ring_step_with(&mut self, mut coin: impl FnMut() -> bool) -> Result<()> {
        let d = self.dimension();
        let j = zigzag_direction(d, self.step);
        let mask = direction_mask(d, j)?;
        for lower in kj_edge_lowers(d, j)? {
            let upper = lower | mask;
            let card_low = self.deck.card_at(lower);
            let card_up = self.deck.card_at(upper);
            let pair = (
                self.colors[card_low as usize],
                self.colors[card_up as usize],
            );
            if matches!(pair, (Color::Red, Color::White) | (Color::White, Color::Red)) {
                self.colors[card_low as usize] = Color::Pink;
                self.colors[card_up as usize] = Color::Pink;
            }
            if coin() {
                self.deck.swap_positions(lower, upper);
            }
        }
        self.step += 1;
        Ok(())
    }

    pub fn ring_step(&mut self, coins: &mut CoinStream) -> Result<()> {
        self.ring_step_with(|| coins.next_bit())
    }

    /// Collectively re-color all pink cards red (`to_red`) or white.
    pub fn depink(&mut self, to_red: bool) {
        let target = if to_red { Color::Red } else { Color::White };
        for color in &mut self.colors {
            if *color == Color::Pink {
                *color = target;
            }
        }
    }

    /// Whether a de-pinking is due right now (a round boundary at a multiple
    /// of the period, with at least one round done).
    pub fn depink_due(&self) -> bool {
        let steps_per_round = 2 * self.dimension() as u64;
        self.step > 0
            && self.step.is_multiple_of(steps_per_round)
            && self.rounds_done().is_multiple_of(self.depink_period.into())
    }

    /// Advance `n_steps` ringing steps, de-pinking on stream coins at every
    /// due round boundary. De-pink coins are drawn from the same stream, in
    /// order, so runs replay exactly.
    pub fn advance_steps(&mut self, n_steps: u64, coins: &mut CoinStream) -> Result<()> {
        for _ in 0..n_steps {
            self.ring_step(coins)?;
            if self.depink_due() {
                let to_red = coins.next_bit();
                self.depink(to_red);
            }
        }
        Ok(())
    }

    /// Advance whole rounds.
    pub fn advance_rounds(&mut self, rounds: u64, coins: &mut CoinStream) -> Result<()> {
        self.advance_steps(rounds * 2 * self.dimension() as u64, coins)
    }
}
