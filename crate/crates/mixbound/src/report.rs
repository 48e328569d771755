use serde_json::{json, Value};

use crate::config::RunConfig;

/// The embedded copy drops the output path: artifact bytes must not depend
/// on where the artifact lands.
fn embeddable(config: &RunConfig) -> RunConfig {
    let mut c = config.clone();
    c.out = None;
    c
}

/// CSV artifacts open with the resolved config on a comment line, so any
/// file regenerates byte for byte from its own header.
pub fn csv_artifact(config: &RunConfig, body: &str) -> String {
    format!("# config {}\n{}", embeddable(config).to_json(), body)
}

/// JSON artifacts embed the config next to the payload.
pub fn json_artifact(config: &RunConfig, kind: &str, data: Value) -> String {
    let value = json!({
        "schema_version": 1,
        "kind": kind,
        "config": serde_json::to_value(embeddable(config)).expect("config serializes"),
        "data": data,
    });
    let mut text = serde_json::to_string_pretty(&value).expect("artifact serializes");
    text.push('\n');
    text
}

/// Extract the embedded config back out of either artifact flavor.
pub fn embedded_config(artifact: &str) -> Option<RunConfig> {
    if let Some(rest) = artifact.strip_prefix("# config ") {
        let line = rest.lines().next()?;
        return RunConfig::from_json("embedded", line).ok();
    }
    let value: Value = serde_json::from_str(artifact).ok()?;
    serde_json::from_value(value.get("config")?.clone()).ok()
}
