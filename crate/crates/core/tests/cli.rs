use std::path::Path;
use std::process::Command;

use serde_json::Value;

fn holimit(args: &[&str], out: &Path) -> (i32, Value) {
    let status = Command::new(env!("CARGO_BIN_EXE_holimit"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs");
    let code = status.status.code().expect("exit code");
    let report = std::fs::read_to_string(out.join("report.json"))
        .ok()
        .and_then(|s| serde_json::from_str(&s).ok())
        .unwrap_or(Value::Null);
    (code, report)
}

fn write_config(dir: &Path, json: &str) -> String {
    let p = dir.join("config.json");
    std::fs::write(&p, json).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn schlicht_suite_passes() {
    let dir = tempfile::tempdir().unwrap();
    let (code, report) = holimit(&["verify", "--suite", "schlicht"], dir.path());
    assert_eq!(code, 0);
    assert_eq!(report["checks"].as_array().unwrap().len(), 3);
}

#[test]
fn cauchy_suite_passes() {
    let dir = tempfile::tempdir().unwrap();
    let (code, report) = holimit(&["verify", "--suite", "cauchy"], dir.path());
    assert_eq!(code, 0);
    assert_eq!(report["command"], "verify");
}

#[test]
fn empty_suite_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), r#"{"verify": {"suites": []}}"#);
    let (code, _) = holimit(&["verify", "--config", &cfg], &dir.path().join("o"));
    assert_eq!(code, 3);
    let (code, _) = holimit(&["verify", "--suite", ""], &dir.path().join("o"));
    assert_eq!(code, 3);
}

#[test]
fn unknown_keys_and_missing_files_are_config_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), r#"{"verify": {"suits": ["cauchy"]}}"#);
    assert_eq!(holimit(&["verify", "--config", &cfg], &dir.path().join("o")).0, 3);
    let missing = dir.path().join("nope.json");
    assert_eq!(holimit(&["verify", "--config", missing.to_str().unwrap()], &dir.path().join("o")).0, 3);
    let cfg = write_config(
        dir.path(),
        &format!(r#"{{"example": {{"sequence_dir": "{}"}}, "analyze": {{"map": {{"cells": 4}}}}}}"#, dir.path().join("absent").display()),
    );
    assert_eq!(holimit(&["analyze", "--config", &cfg], &dir.path().join("o")).0, 3);
}

#[test]
fn reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), r#"{"scv": {"line_cells": 4}}"#);
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    assert_eq!(holimit(&["scv", "--config", &cfg, "--seed", "11"], &a).0, 0);
    assert_eq!(holimit(&["scv", "--config", &cfg, "--seed", "11", "--parallel", "1"], &b).0, 0);
    for f in ["report.json", "map.csv", "map.pgm"] {
        assert_eq!(std::fs::read(a.join(f)).unwrap(), std::fs::read(b.join(f)).unwrap(), "{f}");
    }
    let text = std::fs::read_to_string(a.join("report.json")).unwrap();
    assert!(text.contains("\"seed\": 11"));
    assert!(text.contains("e-"), "floats use exponent notation");
}

#[test]
fn analyze_builtin_families() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), r#"{"analyze": {"family": "constant", "family_j_max": 4, "map": {"cells": 8}}}"#);
    let (code, report) = holimit(&["analyze", "--config", &cfg], &dir.path().join("c"));
    assert_eq!(code, 0);
    assert_eq!(report["checks"][0]["measured"]["fraction"].as_f64(), Some(1.0));
    let pgm = std::fs::read_to_string(dir.path().join("c/map.pgm")).unwrap();
    assert!(pgm.starts_with("P2\n8 8\n255\n"));
    let cfg = write_config(
        dir.path(),
        r#"{"analyze": {"family": "koebe", "map": {"cells": 16, "half_width": 0.8, "tail_pairs": [[150, 200]]}}}"#,
    );
    let (code, report) = holimit(&["analyze", "--config", &cfg], &dir.path().join("k"));
    assert_eq!(code, 0);
    assert_eq!(report["checks"][0]["measured"]["fraction"].as_f64(), Some(1.0));
}

#[test]
fn example_build_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), r#"{"example": {"j_max": 1}}"#);
    let (code, report) = holimit(&["example-build", "--config", &cfg], &dir.path().join("one"));
    assert_eq!(code, 0);
    assert_eq!(report["checks"].as_array().unwrap().len(), 1);
    assert!(dir.path().join("one/sequence/manifest.json").is_file());

    let cfg = write_config(dir.path(), r#"{"example": {"j_max": 6, "degree_cap": 4}}"#);
    let (code, report) = holimit(&["example-build", "--config", &cfg], &dir.path().join("cap4"));
    assert_eq!(code, 4);
    let failed: Vec<&Value> = report["checks"].as_array().unwrap().iter().filter(|c| c["pass"] == false).collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().all(|c| c["name"] != "certificate-j1"));
}

#[test]
fn saved_sequences_feed_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), r#"{"example": {"j_max": 2, "degree_cap": 16}}"#);
    assert_eq!(holimit(&["example-build", "--config", &cfg], &dir.path().join("b")).0, 0);
    let seq_dir = dir.path().join("b/sequence");
    let cfg = write_config(
        dir.path(),
        &format!(r#"{{"example": {{"sequence_dir": "{}"}}, "analyze": {{"map": {{"cells": 6}}}}}}"#, seq_dir.display()),
    );
    let (code, report) = holimit(&["analyze", "--config", &cfg], &dir.path().join("a"));
    // Two members are far from a converged tail, so the map checks fail but
    // the input is certified.
    assert_eq!(code, 2);
    assert_eq!(report["checks"][0]["name"], "analyze-input-certified");
    assert_eq!(report["checks"][0]["pass"], true);
    assert_eq!(std::fs::read_to_string(dir.path().join("a/map.csv")).unwrap().lines().count(), 37);
}
