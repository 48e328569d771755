//! End-to-end behavior of the mixbound binary: exit codes, artifact
//! formats, and byte-for-byte reproducibility from the embedded config.

use std::process::{Command, Output};

fn mixbound(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mixbound"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn verify_all_exits_zero() {
    let out = mixbound(&["verify", "--suite", "all", "--d", "2", "--seed", "7"]);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "verify failed:\n{stdout}");
    assert!(stdout.lines().all(|l| l.starts_with("PASS")), "{stdout}");
    assert!(stdout.lines().count() >= 20);
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let out = mixbound(&["exact", "--bogus-flag", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("--help") || stderr.contains("unexpected"), "{stderr}");
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let out = mixbound(&["verify", "--suite", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exact_mixing_report_carries_the_fixture() {
    let out = mixbound(&[
        "exact", "--d", "2", "--chain", "full", "--report", "mixing", "--format", "csv",
    ]);
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.starts_with("# config "), "{stdout}");
    assert!(stdout.contains("# mixing_time 2"), "{stdout}");
    assert!(stdout.contains("n,distance"), "{stdout}");
}

#[test]
fn bound_accepts_the_logv_alias() {
    let out = mixbound(&["bound", "--a", "0.5", "--b", "0.1", "--logV", "10"]);
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("tau_bound"), "{stdout}");
}

#[test]
fn lambda_report_runs_on_the_subset_chain() {
    let out = mixbound(&[
        "exact", "--d", "3", "--k", "4", "--schedule", "zigzag", "--report", "lambda",
        "--rounds", "4", "--format", "json",
    ]);
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    let value: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(value["kind"], "lambda_sequence");
    let lambda = value["data"]["lambda"].as_array().unwrap();
    assert_eq!(lambda.len(), 5);
}

#[test]
fn artifacts_reproduce_byte_for_byte_from_their_config() {
    let dir = std::env::temp_dir().join(format!("mixbound-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let first = dir.join("run1.json");
    let second = dir.join("run2.json");
    let args = [
        "exact", "--d", "2", "--chain", "card", "--report", "distance", "--rounds", "4",
        "--seed", "99", "--format", "json",
    ];
    let out1 = mixbound(&[&args[..], &["--out", first.to_str().unwrap()]].concat());
    let out2 = mixbound(&[&args[..], &["--out", second.to_str().unwrap()]].concat());
    assert!(out1.status.success() && out2.status.success());
    let bytes1 = std::fs::read(&first).unwrap();
    let bytes2 = std::fs::read(&second).unwrap();
    assert_eq!(bytes1, bytes2, "same flags must reproduce identical bytes");

    // re-run from the embedded config alone
    let value: serde_json::Value = serde_json::from_slice(&bytes1).unwrap();
    let config_path = dir.join("config.json");
    std::fs::write(&config_path, value["config"].to_string()).unwrap();
    let third = dir.join("run3.json");
    let out3 = mixbound(&[
        "exact",
        "--config",
        config_path.to_str().unwrap(),
        "--out",
        third.to_str().unwrap(),
    ]);
    assert!(out3.status.success());
    let bytes3 = std::fs::read(&third).unwrap();
    assert_eq!(bytes3, bytes1, "embedded config must regenerate the artifact");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn operator_dump_uses_the_documented_codec() {
    let out = mixbound(&["exact", "--d", "1", "--chain", "full", "--report", "operator"]);
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    let value: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(value["data"]["size"], 2);
    assert_eq!(
        value["data"]["entry_format"],
        serde_json::json!(["target_state", "numerator", "log2_denominator"])
    );
    // the two-card chain: every entry is 1/2
    assert_eq!(value["data"]["rows"][0]["entries"][0][1], "1");
    assert_eq!(value["data"]["rows"][0]["entries"][0][2], 1);
}

#[test]
fn chameleon_emits_json_lines() {
    let out = mixbound(&[
        "chameleon", "--d", "2", "--nonblack", "3", "--T", "1", "--rounds", "3",
        "--seed", "5", "--format", "json",
    ]);
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    let value: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let lines = value["data"]["lines"].as_array().unwrap();
    assert_eq!(lines.len(), 3);
    let first: serde_json::Value =
        serde_json::from_str(lines[0].as_str().unwrap()).unwrap();
    assert!(first["Z"].is_number());
    assert!(first["colors"]["black"].is_number());
}

#[test]
fn profile_emits_the_documented_csv() {
    let out = mixbound(&[
        "profile", "--d", "2", "--chain", "card", "--grid", "0.25,0.5", "--mode",
        "exhaustive", "--format", "csv",
    ]);
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("x,psi,mode,argmin_set"), "{stdout}");
    assert!(stdout.contains("exhaustive"), "{stdout}");
}
