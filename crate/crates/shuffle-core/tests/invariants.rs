//! Whole-crate invariants: bijection preservation, replay determinism, and
//! trace round-trips across schedules and seeds.

use proptest::prelude::*;
use shuffle_core::{
    apply_kj, run_schedule, CoinStream, DeckState, RunTrace, Schedule,
};

fn arb_schedule() -> impl Strategy<Value = Schedule> {
    prop_oneof![
        Just(Schedule::ThorpRound),
        Just(Schedule::ZigzagRound),
        Just(Schedule::ClassicPass),
        (1u32..=3).prop_map(|d_star| Schedule::TruncatedRound { d_star }),
        (0u64..10).prop_map(|n| Schedule::SingleStep { n }),
    ]
}

proptest! {
    #[test]
    fn every_step_preserves_the_bijection(seed in any::<u64>(), d in 1u32..=4, j_raw in 0u32..4) {
        let j = j_raw % d + 1;
        let deck = DeckState::identity(d).unwrap();
        let mut coins = CoinStream::new(seed);
        let next = apply_kj(&deck, j, &mut coins).unwrap();
        prop_assert!(next.is_bijection());
        prop_assert_eq!(coins.counter(), 1 << (d - 1));
    }

    #[test]
    fn schedules_preserve_the_bijection(seed in any::<u64>(), schedule in arb_schedule(), rounds in 0u64..4) {
        let deck = DeckState::identity(3).unwrap();
        let mut coins = CoinStream::new(seed);
        let (out, _) = run_schedule(&deck, &schedule, rounds, &mut coins).unwrap();
        prop_assert!(out.is_bijection());
    }

    #[test]
    fn identical_seeds_replay_identical_traces(seed in any::<u64>(), rounds in 1u64..4) {
        let deck = DeckState::identity(3).unwrap();
        let runs: Vec<String> = (0..2)
            .map(|_| {
                let mut coins = CoinStream::new(seed);
                let (_, trace) = run_schedule(&deck, &Schedule::ZigzagRound, rounds, &mut coins).unwrap();
                trace.to_lines()
            })
            .collect();
        prop_assert_eq!(&runs[0], &runs[1]);
        let parsed = RunTrace::parse(&runs[0]).unwrap();
        prop_assert_eq!(parsed.to_lines(), runs[0].clone());
    }
}

#[test]
fn truncated_round_at_full_depth_matches_thorp_round() {
    let deck = DeckState::identity(3).unwrap();
    let mut a = CoinStream::new(404);
    let mut b = CoinStream::new(404);
    let (out_trunc, _) =
        run_schedule(&deck, &Schedule::TruncatedRound { d_star: 3 }, 5, &mut a).unwrap();
    let (out_thorp, _) = run_schedule(&deck, &Schedule::ThorpRound, 5, &mut b).unwrap();
    assert_eq!(out_trunc, out_thorp);
}

#[test]
fn zigzag_round_at_d1_is_two_k1_steps() {
    let deck = DeckState::identity(1).unwrap();
    let mut a = CoinStream::new(8);
    let mut b = CoinStream::new(8);
    let (out_zigzag, trace) = run_schedule(&deck, &Schedule::ZigzagRound, 1, &mut a).unwrap();
    let once = apply_kj(&deck, 1, &mut b).unwrap();
    let twice = apply_kj(&once, 1, &mut b).unwrap();
    assert_eq!(out_zigzag, twice);
    assert_eq!(trace.steps(), 2);
}
