use std::str::FromStr;

use serde::{Deserialize, Serialize};
use shuffle_core::Schedule;

use crate::{MixboundError, Result};

/// Which enumerated chain a subcommand works on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChainKind {
    Full,
    Card,
    Subset { k: u32 },
}

impl FromStr for ChainKind {
    type Err = MixboundError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(ChainKind::Full),
            "card" => Ok(ChainKind::Card),
            other => match other.strip_prefix("subset:").and_then(|k| k.parse().ok()) {
                Some(k) => Ok(ChainKind::Subset { k }),
                None => Err(MixboundError::BadFlag {
                    what: "chain",
                    value: other.to_string(),
                }),
            },
        }
    }
}

impl std::fmt::Display for ChainKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ChainKind::Full => write!(f, "full"),
            ChainKind::Card => write!(f, "card"),
            ChainKind::Subset { k } => write!(f, "subset:{k}"),
        }
    }
}

/// Schedule selector as it appears on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScheduleKind {
    Thorp,
    Zigzag,
    Truncated { d_star: u32 },
    Classic,
}

impl ScheduleKind {
    pub fn to_schedule(self) -> Schedule {
        match self {
            ScheduleKind::Thorp => Schedule::ThorpRound,
            ScheduleKind::Zigzag => Schedule::ZigzagRound,
            ScheduleKind::Truncated { d_star } => Schedule::TruncatedRound { d_star },
            ScheduleKind::Classic => Schedule::ClassicPass,
        }
    }
}

impl FromStr for ScheduleKind {
    type Err = MixboundError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "thorp" => Ok(ScheduleKind::Thorp),
            "zigzag" => Ok(ScheduleKind::Zigzag),
            "classic" => Ok(ScheduleKind::Classic),
            other => match other
                .strip_prefix("truncated:")
                .and_then(|v| v.parse().ok())
            {
                Some(d_star) => Ok(ScheduleKind::Truncated { d_star }),
                None => Err(MixboundError::BadFlag {
                    what: "schedule",
                    value: other.to_string(),
                }),
            },
        }
    }
}

impl std::fmt::Display for ScheduleKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScheduleKind::Thorp => write!(f, "thorp"),
            ScheduleKind::Zigzag => write!(f, "zigzag"),
            ScheduleKind::Truncated { d_star } => write!(f, "truncated:{d_star}"),
            ScheduleKind::Classic => write!(f, "classic"),
        }
    }
}

/// Everything a run needs; every artifact embeds its resolved copy so the
/// run reproduces byte for byte. Config files carry the same shape (any
/// subset of fields); command-line flags override file values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    pub subcommand: String,
    pub d: u32,
    pub chain: ChainKind,
    pub schedule: ScheduleKind,
    pub rounds: u64,
    pub trials: u64,
    pub seed: u64,
    /// De-pink period in rounds (the chameleon's T).
    pub depink_period: u32,
    /// Nonblack card count for chameleon runs.
    pub nonblack: u32,
    /// Ringing-step count for identity checks.
    pub steps: u64,
    /// Profile-bound parameters.
    pub a: f64,
    pub b: f64,
    pub log_v: f64,
    pub threshold: f64,
    /// Subset size for lambda reports.
    pub k: u32,
    pub report: String,
    pub suite: String,
    pub grid: Vec<f64>,
    pub profile_mode: String,
    pub out: Option<String>,
    pub format: String,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            subcommand: String::new(),
            d: 2,
            chain: ChainKind::Card,
            schedule: ScheduleKind::Thorp,
            rounds: 8,
            trials: 10_000,
            seed: 0,
            depink_period: 8, // 4d at the default d
            nonblack: 3,
            steps: 4,
            a: 0.5,
            b: 0.25,
            log_v: 4.0f64.ln(),
            threshold: 0.5,
            k: 2,
            report: "mixing".into(),
            suite: "all".into(),
            grid: vec![0.25, 0.5],
            profile_mode: "exhaustive".into(),
            out: None,
            format: "csv".into(),
        }
    }
}

impl RunConfig {
    pub fn from_json(path: &str, text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| MixboundError::BadConfigFile {
            path: path.to_string(),
            detail: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_and_schedule_parse() {
        assert_eq!("full".parse::<ChainKind>().unwrap(), ChainKind::Full);
        assert_eq!(
            "subset:4".parse::<ChainKind>().unwrap(),
            ChainKind::Subset { k: 4 }
        );
        assert!("subset:x".parse::<ChainKind>().is_err());
        assert_eq!(
            "truncated:2".parse::<ScheduleKind>().unwrap(),
            ScheduleKind::Truncated { d_star: 2 }
        );
        assert!("diag".parse::<ScheduleKind>().is_err());
    }

    #[test]
    fn config_roundtrips_through_json() {
        let config = RunConfig {
            subcommand: "exact".into(),
            seed: 99,
            ..RunConfig::default()
        };
        let text = config.to_json();
        let back = RunConfig::from_json("inline", &text).unwrap();
        assert_eq!(back, config);
    }

    #[test]
    fn partial_config_files_fill_defaults() {
        let config = RunConfig::from_json("inline", r#"{"seed": 7, "d": 3}"#).unwrap();
        assert_eq!(config.seed, 7);
        assert_eq!(config.d, 3);
        assert_eq!(config.format, "csv");
    }
}
