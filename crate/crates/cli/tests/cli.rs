//! End-to-end tests against the compiled binary: exit-code contract,
//! determinism, the spectrum cache, CSV artifacts, and report validity
//! against the shipped JSON schema.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::atomic::{AtomicU32, Ordering};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_walsh-forge"))
}

fn run(args: &[&str]) -> Output {
    bin()
        .args(args)
        .env_remove("WALSH_FORGE_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

static DIR_SEQ: AtomicU32 = AtomicU32::new(0);

fn scratch_dir(label: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!(
        "walsh-forge-test-{}-{label}-{}",
        std::process::id(),
        DIR_SEQ.fetch_add(1, Ordering::Relaxed)
    ));
    std::fs::create_dir_all(&dir).expect("scratch dir");
    dir
}

fn schema() -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas/report.schema.json");
    let raw = std::fs::read_to_string(path).expect("schema file ships with the repo");
    let doc: serde_json::Value = serde_json::from_str(&raw).expect("schema is valid JSON");
    jsonschema::validator_for(&doc).expect("schema compiles")
}

fn assert_valid_report(json: &str) -> serde_json::Value {
    let value: serde_json::Value = serde_json::from_str(json).expect("report is JSON");
    let validator = schema();
    let errors: Vec<String> = validator
        .iter_errors(&value)
        .map(|e| e.to_string())
        .collect();
    assert!(errors.is_empty(), "schema violations: {errors:?}");
    // pass <=> no counterexamples
    let pass = value["pass"].as_bool().unwrap();
    let total = value["total_counterexamples"].as_u64().unwrap();
    assert_eq!(pass, total == 0);
    value
}

#[test]
fn field_emits_valid_description() {
    let out = run(&["field", "--p", "3", "--n", "4"]);
    assert!(out.status.success());
    let desc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(desc["p"], 3);
    assert_eq!(desc["n"], 4);
    assert_eq!(desc["modulus_coeffs"].as_array().unwrap().len(), 5);
    assert!(stderr(&out).contains("81 elements"));
}

#[test]
fn field_rejects_even_characteristic() {
    let out = run(&["field", "--p", "2", "--n", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("odd characteristic only"));
}

#[test]
fn field_is_deterministic() {
    let a = run(&["field", "--p", "3", "--n", "4"]);
    let b = run(&["field", "--p", "3", "--n", "4"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn spectrum_verdicts() {
    let out = run(&["spectrum", "--p", "3", "--n", "4", "--f", "Tr(x^34 + x^2)"]);
    assert!(out.status.success());
    assert!(stderr(&out).contains("weakly regular bent"));

    let out = run(&["spectrum", "--p", "3", "--n", "4", "--f", "Tr(x^1)"]);
    assert!(out.status.success());
    assert!(stderr(&out).contains("not bent"));
}

#[test]
fn spectrum_parse_error_carries_position() {
    let out = run(&["spectrum", "--p", "3", "--n", "4", "--f", "Tr(x^^)"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("column 6"));
}

#[test]
fn spectrum_is_deterministic_and_parallel_agrees() {
    let args = ["spectrum", "--p", "3", "--n", "4", "--f", "Tr(x^34 + x^2)"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let parallel = run(&[
        "spectrum",
        "--p",
        "3",
        "--n",
        "4",
        "--f",
        "Tr(x^34 + x^2)",
        "--jobs",
        "4",
    ]);
    assert_eq!(a.stdout, parallel.stdout);
}

#[test]
fn spectrum_cache_round_trip() {
    let cache_dir = scratch_dir("cache");
    let run_cached = || {
        bin()
            .args(["spectrum", "--p", "3", "--n", "4", "--f", "Tr(x^34 + x^2)"])
            .env("WALSH_FORGE_CACHE_DIR", &cache_dir)
            .output()
            .expect("binary runs")
    };
    let first = run_cached();
    assert!(first.status.success());
    assert!(!stderr(&first).contains("loaded from cache"));
    let second = run_cached();
    assert!(second.status.success());
    assert!(stderr(&second).contains("loaded from cache"));
    assert_eq!(first.stdout, second.stdout);
    std::fs::remove_dir_all(cache_dir).ok();
}

#[test]
fn spectrum_accepts_field_description_file() {
    let dir = scratch_dir("field-file");
    let field_path = dir.join("field.json");
    let out = run(&[
        "field",
        "--p",
        "3",
        "--n",
        "4",
        "--out",
        field_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let from_file = run(&[
        "spectrum",
        "--field",
        field_path.to_str().unwrap(),
        "--f",
        "Tr(x^34 + x^2)",
    ]);
    assert!(from_file.status.success());
    let from_params = run(&["spectrum", "--p", "3", "--n", "4", "--f", "Tr(x^34 + x^2)"]);
    assert_eq!(from_file.stdout, from_params.stdout);
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn spectrum_budget_guard() {
    // GF(3^10) is buildable but beyond the default spectrum budget
    let out = run(&["spectrum", "--p", "3", "--n", "10", "--f", "Tr(x^2)"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("budget"));
}

#[test]
fn verify_theorem1_passes_and_validates() {
    let out = run(&["verify", "theorem1", "--p", "3", "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let report = assert_valid_report(&stdout(&out));
    assert_eq!(report["claim"], "theorem1");
    assert_eq!(report["unit_witness"]["coeffs"], serde_json::json!([-9, 0]));
    assert!(stderr(&out).contains("VERIFIED"));
}

#[test]
fn verify_fact1_lists_qualifying_set() {
    let out = run(&["verify", "fact1"]);
    assert_eq!(out.status.code(), Some(0));
    let report = assert_valid_report(&stdout(&out));
    let notes = report["notes"].as_array().unwrap();
    assert!(notes
        .iter()
        .any(|n| n.as_str().unwrap().contains("qualifying a0")));
}

#[test]
fn verify_fact1_rejects_other_parameters() {
    let out = run(&["verify", "fact1", "--p", "5", "--k", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_over_budget_is_refused() {
    let out = run(&["verify", "prop1", "--p", "3", "--k", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("budget"));
}

#[test]
fn verify_all_aggregates() {
    let out = run(&["verify", "all", "--p", "3", "--k", "1", "--jobs", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let report = assert_valid_report(&stdout(&out));
    assert_eq!(report["claim"], "all");
    let children = report["reports"].as_array().unwrap();
    assert_eq!(children.len(), 7);
    for child in children {
        assert_eq!(child["pass"], true);
    }
}

#[test]
fn verify_writes_csv_artifacts() {
    let dir = scratch_dir("csv");
    let out = run(&[
        "verify",
        "prop1",
        "--p",
        "3",
        "--k",
        "1",
        "--csv-dir",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = assert_valid_report(&stdout(&out));
    let artifacts = report["artifacts"].as_array().unwrap();
    assert_eq!(artifacts.len(), 1);
    let csv = std::fs::read_to_string(artifacts[0].as_str().unwrap()).unwrap();
    assert!(csv.starts_with("a_log,C_value\n"));
    assert_eq!(csv.lines().count(), 82);
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn verify_report_file_output() {
    let dir = scratch_dir("report");
    let report_path = dir.join("report.json");
    let out = run(&[
        "verify",
        "cor2",
        "--p",
        "3",
        "--k",
        "1",
        "--out",
        report_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = assert_valid_report(&std::fs::read_to_string(&report_path).unwrap());
    assert_eq!(report["claim"], "cor2");
    std::fs::remove_dir_all(dir).ok();
}
