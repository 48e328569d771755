use crate::position::check_dimension;
use crate::{Result, ShuffleError};

/// One primitive move of a schedule: ring every direction-`j` edge, or apply
/// the deterministic cyclic bit shift of the classic shuffle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepOp {
    Ring { direction: u32 },
    RotateLeft,
}

/// Named step sequences. One "round" of a schedule is one pass through
/// [`Schedule::step_ops`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Schedule {
    /// `K_1 .. K_d` (d ringing steps).
    ThorpRound,
    /// `K_1 .. K_d K_d .. K_1` (2d ringing steps): a round and its reversal.
    ZigzagRound,
    /// Partial round `K_1 .. K_{d_star}`.
    TruncatedRound { d_star: u32 },
    /// One `K_1` followed by the cyclic left bit shift.
    ClassicPass,
    /// The single kernel the Thorp shuffle applies at time `n`.
    SingleStep { n: u64 },
}

impl Schedule {
    /// Expand one round of the schedule into primitive steps.
    pub fn step_ops(&self, d: u32) -> Result<Vec<StepOp>> {
        check_dimension(d)?;
        match *self {
            Schedule::ThorpRound => Ok((1..=d).map(|j| StepOp::Ring { direction: j }).collect()),
            Schedule::ZigzagRound => Ok((1..=d)
                .chain((1..=d).rev())
                .map(|j| StepOp::Ring { direction: j })
                .collect()),
            Schedule::TruncatedRound { d_star } => {
                if d_star < 1 || d_star > d {
                    return Err(ShuffleError::InvalidTruncation { d_star, d });
                }
                Ok((1..=d_star).map(|j| StepOp::Ring { direction: j }).collect())
            }
            Schedule::ClassicPass => Ok(vec![StepOp::Ring { direction: 1 }, StepOp::RotateLeft]),
            Schedule::SingleStep { n } => Ok(vec![StepOp::Ring {
                direction: (n % d as u64) as u32 + 1,
            }]),
        }
    }

    /// Ringing steps per round (shift stages excluded).
    pub fn ring_steps_per_round(&self, d: u32) -> Result<u64> {
        Ok(self
            .step_ops(d)?
            .iter()
            .filter(|op| matches!(op, StepOp::Ring { .. }))
            .count() as u64)
    }

    pub fn label(&self) -> String {
        match *self {
            Schedule::ThorpRound => "thorp-round".into(),
            Schedule::ZigzagRound => "zigzag-round".into(),
            Schedule::TruncatedRound { d_star } => format!("truncated-round:{d_star}"),
            Schedule::ClassicPass => "classic-pass".into(),
            Schedule::SingleStep { n } => format!("single-step:{n}"),
        }
    }
}

/// Direction rung by the zigzag shuffle at ringing step `step` (0-based):
/// within each block of `2d` steps the directions are `1..d` then `d..1`.
pub fn zigzag_direction(d: u32, step: u64) -> u32 {
    let r = (step % (2 * d as u64)) as u32;
    if r < d {
        r + 1
    } else {
        2 * d - r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thorp_round_cycles_directions() {
        let ops = Schedule::ThorpRound.step_ops(3).unwrap();
        let dirs: Vec<u32> = ops
            .iter()
            .map(|op| match op {
                StepOp::Ring { direction } => *direction,
                _ => panic!(),
            })
            .collect();
        assert_eq!(dirs, vec![1, 2, 3]);
    }

    #[test]
    fn zigzag_round_reverses() {
        let ops = Schedule::ZigzagRound.step_ops(2).unwrap();
        assert_eq!(ops.len(), 4);
        assert_eq!(ops[0], StepOp::Ring { direction: 1 });
        assert_eq!(ops[1], StepOp::Ring { direction: 2 });
        assert_eq!(ops[2], StepOp::Ring { direction: 2 });
        assert_eq!(ops[3], StepOp::Ring { direction: 1 });
    }

    #[test]
    fn zigzag_at_d1_is_two_k1_steps() {
        let ops = Schedule::ZigzagRound.step_ops(1).unwrap();
        assert_eq!(
            ops,
            vec![StepOp::Ring { direction: 1 }, StepOp::Ring { direction: 1 }]
        );
    }

    #[test]
    fn truncated_full_depth_equals_thorp_round() {
        assert_eq!(
            Schedule::TruncatedRound { d_star: 3 }.step_ops(3).unwrap(),
            Schedule::ThorpRound.step_ops(3).unwrap()
        );
    }

    #[test]
    fn truncation_depth_validated() {
        assert!(Schedule::TruncatedRound { d_star: 0 }.step_ops(3).is_err());
        assert!(Schedule::TruncatedRound { d_star: 4 }.step_ops(3).is_err());
    }

    #[test]
    fn zigzag_direction_matches_schedule() {
        let d = 3;
        let ops = Schedule::ZigzagRound.step_ops(d).unwrap();
        for (i, op) in ops.iter().enumerate() {
            let StepOp::Ring { direction } = op else { panic!() };
            assert_eq!(zigzag_direction(d, i as u64), *direction);
            assert_eq!(zigzag_direction(d, i as u64 + 2 * d as u64), *direction);
        }
    }
}
