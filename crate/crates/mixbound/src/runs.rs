use serde_json::json;

use chameleon::run_with_round_log;
use evolving_sets::{root_profile, verify_duality_exact, DualityCaps, ProfileMode};
use exact_kernel::{
    curve_to_csv, curve_to_json, distance_curve, lambda_sequence, mixing_time, DEFAULT_ROUND_CAP,
    OperatorCaps, StateSpaceSpec, TransitionOperator,
};
use shuffle_core::{run_schedule, CoinStream, DeckState};

use crate::config::{ChainKind, RunConfig};
use crate::report::{csv_artifact, json_artifact};
use crate::{bound, constants, MixboundError, Result};

/// Build the operator selected by `--chain` and `--schedule`.
pub fn chain_operator(config: &RunConfig) -> Result<TransitionOperator> {
    let spec = match config.chain {
        ChainKind::Full => StateSpaceSpec::full_permutations(config.d)?,
        ChainKind::Card => StateSpaceSpec::single_card(config.d)?,
        ChainKind::Subset { k } => StateSpaceSpec::k_subset(config.d, k)?,
    };
    Ok(TransitionOperator::build(
        spec,
        &config.schedule.to_schedule(),
        &OperatorCaps::default(),
    )?)
}

pub fn run_simulate(config: &RunConfig) -> Result<String> {
    let deck = DeckState::identity(config.d)?;
    let mut coins = CoinStream::new(config.seed);
    let (final_deck, trace) = run_schedule(
        &deck,
        &config.schedule.to_schedule(),
        config.rounds,
        &mut coins,
    )?;
    Ok(if config.format == "json" {
        json_artifact(
            config,
            "simulation",
            json!({
                "final_occupant": final_deck.occupant(),
                "trace": trace.to_lines(),
            }),
        )
    } else {
        let mut body = trace.to_lines();
        body.push_str(&format!(
            "# final {}\n",
            final_deck
                .occupant()
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        ));
        csv_artifact(config, &body)
    })
}

pub fn run_exact(config: &RunConfig) -> Result<String> {
    match config.report.as_str() {
        "mixing" => {
            let op = chain_operator(config)?;
            let tau = mixing_time(&op, 0.25, DEFAULT_ROUND_CAP)?;
            let curve = distance_curve(&op, 0, tau + 2)?;
            Ok(if config.format == "json" {
                json_artifact(
                    config,
                    "mixing_report",
                    json!({"mixing_time": tau, "curve": curve_to_json(&curve)}),
                )
            } else {
                let mut body = format!("# mixing_time {tau}\n");
                body.push_str(&curve_to_csv(&curve));
                csv_artifact(config, &body)
            })
        }
        "distance" => {
            let op = chain_operator(config)?;
            let curve = distance_curve(&op, 0, config.rounds)?;
            Ok(if config.format == "json" {
                json_artifact(config, "distance_curve", curve_to_json(&curve))
            } else {
                csv_artifact(config, &curve_to_csv(&curve))
            })
        }
        "lambda" => {
            let seq = lambda_sequence(
                config.d,
                config.k,
                config.rounds,
                &config.schedule.to_schedule(),
                &OperatorCaps::default(),
            )?;
            Ok(if config.format == "json" {
                json_artifact(config, "lambda_sequence", json!({"lambda": seq}))
            } else {
                let mut body = String::from("m,lambda\n");
                for (m, v) in seq.iter().enumerate() {
                    body.push_str(&format!("{m},{v}\n"));
                }
                csv_artifact(config, &body)
            })
        }
        "operator" => {
            let op = chain_operator(config)?;
            Ok(json_artifact(
                config,
                "transition_operator",
                exact_kernel::operator_to_json(&op),
            ))
        }
        other => Err(MixboundError::BadFlag {
            what: "report",
            value: other.to_string(),
        }),
    }
}

pub fn run_evolving(config: &RunConfig) -> Result<String> {
    let op = chain_operator(config)?;
    let caps = DualityCaps::default();
    let mut rows = Vec::new();
    for n in 0..=config.steps.min(caps.max_steps) {
        rows.push(verify_duality_exact(&op, n, 1e-12, &caps)?);
    }
    Ok(if config.format == "json" {
        json_artifact(
            config,
            "duality_report",
            json!({
                "per_step": rows
                    .iter()
                    .map(|r| json!({
                        "n": r.steps,
                        "max_gap": r.max_gap,
                        "worst_pair": [r.worst_pair.0, r.worst_pair.1],
                        "matrix_side": r.matrix_side,
                        "set_side": r.set_side,
                        "pass": r.pass,
                    }))
                    .collect::<Vec<_>>(),
            }),
        )
    } else {
        let mut body = String::from("n,max_gap,matrix_side,set_side,pass\n");
        for r in rows {
            body.push_str(&format!(
                "{},{},{},{},{}\n",
                r.steps, r.max_gap, r.matrix_side, r.set_side, r.pass
            ));
        }
        csv_artifact(config, &body)
    })
}

pub fn run_chameleon(config: &RunConfig) -> Result<String> {
    if config.report == "decay" {
        let points = chameleon::red_decay_trace(
            config.d,
            config.nonblack,
            config.depink_period,
            config.rounds,
            config.trials,
            config.seed,
        )?;
        return Ok(if config.format == "json" {
            json_artifact(
                config,
                "red_decay",
                json!({
                    "checkpoints": points
                        .iter()
                        .map(|p| json!({
                            "checkpoint": p.checkpoint,
                            "mean_sqrt_sharp": p.mean_sqrt_sharp,
                            "se": p.se,
                            "pinkening_bound_fraction": p.pinkening_bound_fraction,
                            "decay_ratio": p.decay_ratio,
                        }))
                        .collect::<Vec<_>>(),
                }),
            )
        } else {
            let mut body =
                String::from("checkpoint,mean_sqrt_sharp,se,pinkening_bound_fraction,decay_ratio\n");
            for p in &points {
                body.push_str(&format!(
                    "{},{},{},{},{}\n",
                    p.checkpoint,
                    p.mean_sqrt_sharp,
                    p.se,
                    p.pinkening_bound_fraction,
                    p.decay_ratio.map_or(String::new(), |r| r.to_string())
                ));
            }
            csv_artifact(config, &body)
        });
    }
    let cards: Vec<u32> = (0..config.nonblack).collect();
    let (log, _) = run_with_round_log(
        config.d,
        &cards,
        config.depink_period,
        config.rounds,
        config.seed,
    )?;
    Ok(if config.format == "json" {
        let lines: Vec<String> = log.iter().map(|r| r.to_json_line()).collect();
        json_artifact(config, "chameleon_rounds", json!({"lines": lines}))
    } else {
        let mut body = String::from("round,Z,P,red,white,pink,black\n");
        for r in &log {
            body.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                r.round, r.red_mass, r.pink, r.red, r.white, r.pink, r.black
            ));
        }
        csv_artifact(config, &body)
    })
}

pub fn run_profile(config: &RunConfig) -> Result<String> {
    let op = chain_operator(config)?;
    let mode = match config.profile_mode.as_str() {
        "exhaustive" => ProfileMode::Exhaustive,
        "sampled" => ProfileMode::sampled_default(config.seed),
        other => {
            return Err(MixboundError::BadFlag {
                what: "mode",
                value: other.to_string(),
            })
        }
    };
    let points = root_profile(&op, &config.grid, mode)?;
    Ok(if config.format == "json" {
        json_artifact(
            config,
            "root_profile",
            json!({
                "points": points
                    .iter()
                    .map(|p| json!({"x": p.x, "psi": p.psi, "mode": p.mode, "argmin": p.argmin}))
                    .collect::<Vec<_>>(),
            }),
        )
    } else {
        csv_artifact(config, &evolving_sets::profile_to_csv(&points))
    })
}

pub fn run_bound(config: &RunConfig) -> Result<String> {
    let spec = bound::ProfileBoundSpec::new(config.a, config.b, config.log_v)?;
    let result = bound::mixing_bound_from_profile(&spec, config.threshold)?;
    Ok(if config.format == "json" {
        json_artifact(
            config,
            "profile_bound",
            json!({
                "n1": result.n1,
                "n2": result.n2,
                "tau_bound": result.tau_bound,
                "n1_closed": result.n1_closed,
                "n2_closed": result.n2_closed,
                "tau_closed": result.tau_closed,
            }),
        )
    } else {
        let body = format!(
            "quantity,value\nn1,{}\nn2,{}\ntau_bound,{}\nn1_closed,{}\nn2_closed,{}\ntau_closed,{}\n",
            result.n1, result.n2, result.tau_bound, result.n1_closed, result.n2_closed,
            result.tau_closed
        );
        csv_artifact(config, &body)
    })
}

pub fn run_constants(config: &RunConfig) -> Result<String> {
    let report = constants::constants_solver();
    Ok(if config.format == "json" {
        json_artifact(
            config,
            "constants",
            json!({
                "alpha_min": report.alpha_min,
                "alpha_binding_d": report.alpha_binding_d,
                "beta": report.beta,
                "c_min": report.c_min,
                "c_binding_d": report.c_binding_d,
                "verified_d_max": report.verified_d_max,
                "margins": report.margins
                    .iter()
                    .map(|(d, am, cm)| json!({"d": d, "alpha_margin": am, "c_margin": cm}))
                    .collect::<Vec<_>>(),
            }),
        )
    } else {
        let mut body = format!(
            "alpha_min,{}\nalpha_binding_d,{}\nbeta,{}\nc_min,{}\nc_binding_d,{}\nverified_d_max,{}\n",
            report.alpha_min,
            report.alpha_binding_d,
            report.beta,
            report.c_min,
            report.c_binding_d,
            report.verified_d_max
        );
        body.push_str("d,alpha_margin,c_margin\n");
        for (d, am, cm) in &report.margins {
            body.push_str(&format!("{d},{am},{cm}\n"));
        }
        csv_artifact(config, &body)
    })
}
