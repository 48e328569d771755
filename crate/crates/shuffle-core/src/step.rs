use crate::position::{direction_mask, kj_edge_lowers, rotate_left};
use crate::schedule::{Schedule, StepOp};
use crate::trace::{EdgeEvent, RunTrace};
use crate::{CoinStream, DeckState, Result};

/// Apply the kernel `K_j`: every direction-`j` edge rings, swapping its two
/// occupants on heads. One coin per edge, drawn in ascending order of the
/// edge's lower endpoint.
pub fn apply_kj(deck: &DeckState, j: u32, coins: &mut CoinStream) -> Result<DeckState> {
    let mut next = deck.clone();
    ring_direction(&mut next, j, coins, None)?;
    Ok(next)
}

/// [`apply_kj`], recording every edge's coin into `events` at step index `step`.
pub fn apply_kj_traced(
    deck: &DeckState,
    j: u32,
    coins: &mut CoinStream,
    step: u64,
    events: &mut Vec<EdgeEvent>,
) -> Result<DeckState> {
    let mut next = deck.clone();
    ring_direction(&mut next, j, coins, Some((step, events)))?;
    Ok(next)
}

fn ring_direction(
    deck: &mut DeckState,
    j: u32,
    coins: &mut CoinStream,
    mut sink: Option<(u64, &mut Vec<EdgeEvent>)>,
) -> Result<()> {
    let d = deck.dimension();
    let mask = direction_mask(d, j)?;
    let occ = deck.occupant_mut();
    for lower in kj_edge_lowers(d, j)? {
        let coin = coins.next_bit();
        if let Some((step, events)) = sink.as_mut() {
            events.push(EdgeEvent {
                step: *step,
                direction: j,
                lower,
                coin,
            });
        }
        if coin {
            occ.swap(lower as usize, (lower | mask) as usize);
        }
    }
    Ok(())
}

/// One step of the Thorp shuffle at time `n`: applies `K_{(n mod d) + 1}`.
pub fn thorp_step(deck: &DeckState, n: u64, coins: &mut CoinStream) -> Result<DeckState> {
    let d = deck.dimension();
    apply_kj(deck, (n % d as u64) as u32 + 1, coins)
}

/// The deterministic shift stage of the classic shuffle: the card at
/// `(x_1, .., x_d)` moves to `(x_2, .., x_d, x_1)`.
pub fn rotate_deck(deck: &DeckState) -> DeckState {
    let d = deck.dimension();
    let mut occ = vec![0u32; deck.len()];
    for (pos, &card) in deck.occupant().iter().enumerate() {
        occ[rotate_left(pos as u32, d) as usize] = card;
    }
    let mut next = deck.clone();
    next.replace_occupant(occ);
    next
}

/// One pass of the classic two-pile description: ring every direction-1
/// edge, then shift. At `d = 1` the shift is the identity, so a pass is one
/// `K_1` step.
pub fn classic_thorp_pass(deck: &DeckState, coins: &mut CoinStream) -> Result<DeckState> {
    Ok(rotate_deck(&apply_kj(deck, 1, coins)?))
}

/// Run `rounds` rounds of `schedule`, returning the final deck and the full
/// edge trace. The result is a deterministic function of
/// `(deck, schedule, rounds, coins.seed())`; step indices count ringing
/// steps only (shift stages draw no coins).
pub fn run_schedule(
    deck: &DeckState,
    schedule: &Schedule,
    rounds: u64,
    coins: &mut CoinStream,
) -> Result<(DeckState, RunTrace)> {
    let d = deck.dimension();
    let ops = schedule.step_ops(d)?;
    let mut trace = RunTrace::new(d, coins.seed());
    let mut current = deck.clone();
    let mut step = 0u64;
    for _ in 0..rounds {
        for op in &ops {
            match op {
                StepOp::Ring { direction } => {
                    current = apply_kj_traced(&current, *direction, coins, step, &mut trace.events)?;
                    step += 1;
                }
                StepOp::RotateLeft => current = rotate_deck(&current),
            }
        }
    }
    debug_assert!(current.is_bijection());
    Ok((current, trace))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Apply K_j with an explicit swap pattern (one bool per edge in
    /// canonical order). Used where a test needs forced coins.
    fn force_kj(deck: &DeckState, j: u32, pattern: &[bool]) -> DeckState {
        let d = deck.dimension();
        let mask = direction_mask(d, j).unwrap();
        let mut occ = deck.occupant().to_vec();
        for (lower, &coin) in kj_edge_lowers(d, j).unwrap().zip(pattern.iter()) {
            if coin {
                occ.swap(lower as usize, (lower | mask) as usize);
            }
        }
        DeckState::from_occupant(d, occ).unwrap()
    }

    #[test]
    fn tails_everywhere_leaves_deck_unchanged() {
        let deck = DeckState::identity(2).unwrap();
        assert_eq!(force_kj(&deck, 1, &[false, false]), deck);
    }

    #[test]
    fn single_forced_swap_across_direction_1() {
        // positions 00,01,10,11; heads on edge {00,10}, tails on {01,11}
        let deck = DeckState::identity(2).unwrap();
        let next = force_kj(&deck, 1, &[true, false]);
        assert_eq!(next.occupant(), &[2, 1, 0, 3]);
    }

    #[test]
    fn one_k1_step_is_uniform_over_four_decks() {
        // enumerate the 2^{2^{d-1}} = 4 coin patterns of one K_1 step at d=2
        let deck = DeckState::identity(2).unwrap();
        let mut seen = std::collections::HashMap::new();
        for bits in 0..4u32 {
            let pattern = [bits & 1 != 0, bits & 2 != 0];
            let next = force_kj(&deck, 1, &pattern);
            *seen.entry(next.occupant().to_vec()).or_insert(0u32) += 1;
        }
        assert_eq!(seen.len(), 4);
        assert!(seen.values().all(|&count| count == 1));
    }

    #[test]
    fn thorp_step_cycles_directions() {
        // the kernel applied at time n is K_{(n mod d)+1}; compare with a
        // direct apply_kj from the same stream state
        let deck = DeckState::identity(3).unwrap();
        for (n, expected_j) in [(0u64, 1u32), (3, 1), (4, 2), (5, 3), (7, 2)] {
            let mut a = CoinStream::new(11 + n);
            let mut b = a.clone();
            assert_eq!(
                thorp_step(&deck, n, &mut a).unwrap(),
                apply_kj(&deck, expected_j, &mut b).unwrap()
            );
        }
    }

    #[test]
    fn classic_pass_at_d1_equals_one_k1_step() {
        let deck = DeckState::identity(1).unwrap();
        let mut a = CoinStream::new(5);
        let mut b = a.clone();
        assert_eq!(
            classic_thorp_pass(&deck, &mut a).unwrap(),
            apply_kj(&deck, 1, &mut b).unwrap()
        );
    }

    #[test]
    fn shift_moves_card_from_100_to_001() {
        let deck = DeckState::identity(3).unwrap();
        let card = deck.card_at(0b100);
        let shifted = rotate_deck(&deck);
        assert_eq!(shifted.card_at(0b001), card);
    }

    #[test]
    fn heads_everywhere_twice_is_identity() {
        // K_j is its own inverse under a repeated swap pattern
        let deck = DeckState::identity(3).unwrap();
        for j in 1..=3 {
            let pattern = [true; 4];
            let once = force_kj(&deck, j, &pattern);
            let twice = force_kj(&once, j, &pattern);
            assert_eq!(twice, deck);
        }
    }

    #[test]
    fn zero_rounds_returns_input() {
        let deck = DeckState::identity(2).unwrap();
        let mut coins = CoinStream::new(0);
        let (out, trace) = run_schedule(&deck, &Schedule::ZigzagRound, 0, &mut coins).unwrap();
        assert_eq!(out, deck);
        assert!(trace.events.is_empty());
    }

    #[test]
    fn run_schedule_replays_bit_for_bit() {
        let deck = DeckState::identity(3).unwrap();
        let mut coins = CoinStream::new(77);
        let (out1, trace1) = run_schedule(&deck, &Schedule::ZigzagRound, 4, &mut coins).unwrap();
        let mut coins = CoinStream::new(77);
        let (out2, trace2) = run_schedule(&deck, &Schedule::ZigzagRound, 4, &mut coins).unwrap();
        assert_eq!(out1, out2);
        assert_eq!(trace1.to_lines(), trace2.to_lines());
    }

    #[test]
    fn trace_counts_match_schedule() {
        let deck = DeckState::identity(2).unwrap();
        let mut coins = CoinStream::new(3);
        let (_, trace) = run_schedule(&deck, &Schedule::ZigzagRound, 3, &mut coins).unwrap();
        // 3 rounds x 4 steps x 2 edges
        assert_eq!(trace.events.len(), 24);
        assert_eq!(trace.steps(), 12);
        assert_eq!(trace.rounds(4), 3);
    }

    #[test]
    fn invalid_direction_is_contract_violation() {
        let deck = DeckState::identity(2).unwrap();
        let mut coins = CoinStream::new(0);
        assert!(apply_kj(&deck, 0, &mut coins).is_err());
        assert!(apply_kj(&deck, 3, &mut coins).is_err());
    }
}
