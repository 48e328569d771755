use serde_json::{json, Value};

use crate::operator::TransitionOperator;

/// Distance-curve CSV: `n,distance`, one row per step count.
pub fn curve_to_csv(curve: &[f64]) -> String {
    let mut out = String::from("n,distance\n");
    for (n, v) in curve.iter().enumerate() {
        out.push_str(&format!("{n},{v}\n"));
    }
    out
}

pub fn curve_to_json(curve: &[f64]) -> Value {
    json!({
        "kind": "distance_curve",
        "points": curve
            .iter()
            .enumerate()
            .map(|(n, v)| json!({"n": n, "distance": v}))
            .collect::<Vec<_>>(),
    })
}

/// Operator dump with exact entries. States are indices under the space's
/// codec (Lehmer rank for permutations, colex rank for subsets, position
/// index for single-card chains) so external tools can re-index.
pub fn operator_to_json(op: &TransitionOperator) -> Value {
    let rows: Vec<Value> = (0..op.size() as u32)
        .map(|x| {
            let entries: Vec<Value> = op
                .row(x)
                .iter()
                .map(|(y, p)| json!([y, p.numerator().to_string(), p.log2_denominator()]))
                .collect();
            json!({"state": x, "entries": entries})
        })
        .collect();
    json!({
        "kind": "transition_operator",
        "spec": op.spec().label(),
        "size": op.size(),
        "entry_format": ["target_state", "numerator", "log2_denominator"],
        "rows": rows,
    })
}
