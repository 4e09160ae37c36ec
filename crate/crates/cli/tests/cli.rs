use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn redmod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_redmod"))
        .args(args)
        .env_remove("REDMOD_MAX_ELEMS")
        .output()
        .expect("binary runs")
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn strip_wall_time(text: &str) -> String {
    text.lines()
        .filter(|l| !l.trim_start().starts_with("\"wall_time_ms\""))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn catalog_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let out = redmod(&[
            "catalog",
            "--max-order",
            "12",
            "--claims",
            "all",
            "--t",
            "2",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let ta = fs::read_to_string(&a).unwrap();
    let tb = fs::read_to_string(&b).unwrap();
    assert!(ta.contains("\"wall_time_ms\""));
    assert_eq!(strip_wall_time(&ta), strip_wall_time(&tb));
}

#[test]
fn empty_claim_list_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("r.json");
    let out = redmod(&["catalog", "--max-order", "8", "--claims", "", "--t", "1", "--out", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc = read_json(&p);
    assert_eq!(doc["entries"].as_array().unwrap().len(), 0);
    assert_eq!(doc["summary"]["holds"], 0);
    assert_eq!(doc["summary"]["fails"], 0);
}

#[test]
fn audited_failures_do_not_fail_the_run() {
    // noeth_t_regular_iff_reduced fails on Z_4 at t = 2 but is not an
    // expected-holds claim.
    let out = redmod(&["catalog", "--max-order", "8", "--claims", "noeth_t_regular_iff_reduced,stratify", "--t", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(doc["summary"]["fails"].as_u64().unwrap() > 0);
    let expected = doc["entries"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["status"] == "fails")
        .all(|e| e["claim"] == "noeth_t_regular_iff_reduced" && e["witness"].is_object());
    assert!(expected);
}

#[test]
fn bad_arguments_exit_two() {
    assert_eq!(redmod(&["catalog", "--max-order", "8", "--claims", "nope", "--t", "1"]).status.code(), Some(2));
    assert_eq!(redmod(&["catalog", "--max-order", "8", "--claims", "all", "--t", "0"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.json");
    let out = redmod(&["check", "--spec", missing.to_str().unwrap(), "--claim", "stratify"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn budget_env_var_is_honoured() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("z16.json");
    fs::write(&spec, r#"{"components": [{"modulus": 16, "monic_poly": [0, 1]}]}"#).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_redmod"))
        .args(["gamma", "--spec", spec.to_str().unwrap(), "--a", "2"])
        .env("REDMOD_MAX_ELEMS", "8")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget is 8"));
}

#[test]
fn search_finds_z4() {
    let out = redmod(&["search", "--claim", "noeth_t_regular_iff_reduced", "--t", "2", "--max-order", "16"]);
    assert!(out.status.success());
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    let hits = doc["hits"].as_array().unwrap();
    let z4 = hits.iter().find(|h| h["instance"]["ring"] == "Z_4").expect("Z_4 is a hit");
    assert_eq!(z4["reverified"], true);
    assert_eq!(doc["discarded"], 0);

    let out = redmod(&["search", "--claim", "stratify_as_claim", "--t", "1", "--max-order", "16"]);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(doc["hits"].as_array().unwrap().is_empty());
}

#[test]
fn gamma_on_z8() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("z8.json");
    fs::write(&spec, r#"{"ring": {"components": [{"modulus": 8, "monic_poly": [0, 1]}]}, "rank": 1, "relations": []}"#).unwrap();
    let out = redmod(&["gamma", "--spec", spec.to_str().unwrap(), "--a", "2", "--t", "2"]);
    assert!(out.status.success());
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["gamma"].as_array().unwrap().len(), 8);
    assert_eq!(doc["gln"], serde_json::json!([[0], [4]]));
    assert_eq!(doc["at_reduced"], false);
}

#[test]
fn check_writes_report_and_table() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("z16.json");
    let report = dir.path().join("r.json");
    fs::write(&spec, r#"{"components": [{"modulus": 16, "monic_poly": [0, 1]}]}"#).unwrap();
    let out = redmod(&[
        "check",
        "--spec",
        spec.to_str().unwrap(),
        "--claim",
        "equivalences",
        "--a",
        "2",
        "--t",
        "2",
        "--out",
        report.to_str().unwrap(),
        "--table",
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("equivalences"));
    let doc = read_json(&report);
    for key in ["tool_version", "config", "entries", "skipped", "summary", "wall_time_ms"] {
        assert!(doc.get(key).is_some(), "missing {key}");
    }
    assert_eq!(doc["entries"][0]["status"], "holds");
}

#[test]
fn check_audits_rank_two_instance() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("m.json");
    fs::write(
        &spec,
        r#"{"ring": {"components": [{"modulus": 8, "monic_poly": [0, 1]}]}, "rank": 2, "relations": [[2, 2]], "mult_set": {"generators": [3]}}"#,
    )
    .unwrap();
    for claim in ["localization", "scalar_restriction", "sum", "functor"] {
        let out = redmod(&["check", "--spec", spec.to_str().unwrap(), "--claim", claim]);
        assert!(out.status.success(), "{claim}");
        let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
        let entries = doc["entries"].as_array().unwrap();
        assert_eq!(entries.len(), 1, "{claim}");
        let module = entries[0]["instance"]["module"].as_str().unwrap();
        assert!(module.starts_with("R^2/<(2,2)>"), "{claim}: {module}");
    }
}
