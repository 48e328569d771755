use crate::{Result, ShuffleError};

/// One ringing edge: at ringing step `step`, the direction-`direction` edge
/// with the given lower endpoint drew `coin` (true = heads = swap).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeEvent {
    pub step: u64,
    pub direction: u32,
    pub lower: u32,
    pub coin: bool,
}

/// Full coin log of a run: bit-exact across runs with the same seed.
///
/// The line format is one header (`# trace d=.. seed=..`) followed by one
/// tab-separated record `step  direction  lower  coin` per ringing edge, in
/// draw order. Downstream consumers (chameleon replays, antisocial counts)
/// reconstruct the whole run from this log plus the initial deck.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunTrace {
    pub d: u32,
    pub seed: u64,
    pub events: Vec<EdgeEvent>,
}

impl RunTrace {
    pub fn new(d: u32, seed: u64) -> Self {
        RunTrace {
            d,
            seed,
            events: Vec::new(),
        }
    }

    /// Number of ringing steps covered (one more than the highest step index).
    pub fn steps(&self) -> u64 {
        self.events.last().map_or(0, |e| e.step + 1)
    }

    /// Number of complete rounds when a round is `steps_per_round` ringing steps.
    pub fn rounds(&self, steps_per_round: u64) -> u64 {
        self.steps() / steps_per_round
    }

    pub fn to_lines(&self) -> String {
        let mut out = format!("# trace d={} seed={}\n", self.d, self.seed);
        for e in &self.events {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\n",
                e.step,
                e.direction,
                e.lower,
                u8::from(e.coin)
            ));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or_else(|| ShuffleError::MalformedTrace {
            line: 0,
            reason: "empty trace".into(),
        })?;
        let (d, seed) = parse_header(header)?;
        let mut events = Vec::new();
        for (idx, line) in lines {
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split('\t');
            let mut field = |name: &str| {
                parts.next().ok_or_else(|| ShuffleError::MalformedTrace {
                    line: idx,
                    reason: format!("missing field {name}"),
                })
            };
            let step = parse_num(field("step")?, idx)?;
            let direction = parse_num(field("direction")?, idx)? as u32;
            let lower = parse_num(field("lower")?, idx)? as u32;
            let coin = match field("coin")? {
                "0" => false,
                "1" => true,
                other => {
                    return Err(ShuffleError::MalformedTrace {
                        line: idx,
                        reason: format!("coin must be 0 or 1, got {other}"),
                    })
                }
            };
            events.push(EdgeEvent {
                step,
                direction,
                lower,
                coin,
            });
        }
        Ok(RunTrace { d, seed, events })
    }
}

fn parse_header(header: &str) -> Result<(u32, u64)> {
    let err = |reason: &str| ShuffleError::MalformedTrace {
        line: 0,
        reason: reason.into(),
    };
    let mut d = None;
    let mut seed = None;
    for token in header.trim_start_matches('#').split_whitespace() {
        if let Some(v) = token.strip_prefix("d=") {
            d = v.parse::<u32>().ok();
        } else if let Some(v) = token.strip_prefix("seed=") {
            seed = v.parse::<u64>().ok();
        }
    }
    match (d, seed) {
        (Some(d), Some(seed)) => Ok((d, seed)),
        _ => Err(err("header must contain d= and seed=")),
    }
}

fn parse_num(text: &str, line: usize) -> Result<u64> {
    text.parse::<u64>().map_err(|_| ShuffleError::MalformedTrace {
        line,
        reason: format!("not a number: {text}"),
    })
}
