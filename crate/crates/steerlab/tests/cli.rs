//! End-to-end tests of the `steerlab` binary: exit-code contract, report
//! round trip, CSV schema, and the tolerance override.

use std::io::Write;
use std::process::{Command, Stdio};

fn steerlab() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_steerlab"));
    cmd.env_remove("STEERLAB_TOL");
    cmd
}

fn run_stdin(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut child = steerlab()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = steerlab().args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

const FIXTURE: &str = r#"{"canonical": {"a": 13.9, "b": 13.9, "c1": 4.6, "c2": -13.7}}"#;

#[test]
fn analyze_fixture_from_stdin() {
    let (code, stdout, _) = run_stdin(&["analyze", "-"], FIXTURE);
    assert_eq!(code, 0);
    let rep: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(rep["flags"]["wns"], true);
    assert_eq!(rep["flags"]["sns"], false);
    assert_eq!(rep["flags"]["epr_b_to_a"], false);
    assert_eq!(rep["flags"]["entangled"], false);
    assert_eq!(rep["lambda_wns"].as_f64().unwrap(), 0.397122302);
    assert_eq!(rep["tool_version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn analyze_round_trips_through_canonical_output() {
    let (_, stdout, _) = run_stdin(&["analyze", "-"], FIXTURE);
    let rep: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let doc = serde_json::json!({ "canonical": rep["canonical"] }).to_string();
    let (code, stdout2, _) = run_stdin(&["analyze", "-"], &doc);
    assert_eq!(code, 0);
    let rep2: serde_json::Value = serde_json::from_str(&stdout2).unwrap();
    assert_eq!(rep["flags"], rep2["flags"]);
    let lw1 = rep["lambda_wns"].as_f64().unwrap();
    let lw2 = rep2["lambda_wns"].as_f64().unwrap();
    let ls1 = rep["lambda_sns"].as_f64().unwrap();
    let ls2 = rep2["lambda_sns"].as_f64().unwrap();
    assert!((lw1 - lw2).abs() <= 1e-12);
    assert!((ls1 - ls2).abs() <= 1e-12);
}

#[test]
fn analyze_vacuum_is_marginal() {
    let doc = r#"{"cm": [0.5,0,0,0, 0,0.5,0,0, 0,0,0.5,0, 0,0,0,0.5]}"#;
    let (code, stdout, _) = run_stdin(&["analyze", "-"], doc);
    assert_eq!(code, 0);
    let rep: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(rep["lambda_wns"].as_f64().unwrap(), 0.5);
    assert_eq!(rep["flags"]["wns"], false);
    assert_eq!(rep["flags"]["marginal"], true);
}

#[test]
fn analyze_tmst_input_sets_every_flag() {
    let doc = r#"{"tmst": {"na": 0.75, "nb": 0.75, "r": 1.2}}"#;
    let (code, stdout, _) = run_stdin(&["analyze", "-"], doc);
    assert_eq!(code, 0);
    let rep: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    for flag in ["wns", "sns", "epr_b_to_a", "epr_a_to_b", "entangled"] {
        assert_eq!(rep["flags"][flag], true, "{flag}");
    }
}

#[test]
fn malformed_input_exits_2() {
    let (code, _, stderr) = run_stdin(&["analyze", "-"], "{not json");
    assert_eq!(code, 2);
    assert!(stderr.contains("invalid state file"));

    let two_keys =
        r#"{"canonical": {"a":1,"b":1,"c1":0,"c2":0}, "tmst": {"na":0,"nb":0,"r":0}}"#;
    assert_eq!(run_stdin(&["analyze", "-"], two_keys).0, 2);

    let short_cm = r#"{"cm": [1, 2, 3]}"#;
    assert_eq!(run_stdin(&["analyze", "-"], short_cm).0, 2);

    let negative_tmst = r#"{"tmst": {"na": -1, "nb": 0, "r": 1}}"#;
    assert_eq!(run_stdin(&["analyze", "-"], negative_tmst).0, 2);

    let (code, _, stderr) = run(&["analyze", "/no/such/file.json"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("cannot read"));
}

#[test]
fn unphysical_state_exits_3_with_physicality_report() {
    let doc = r#"{"canonical": {"a": 1, "b": 1, "c1": 1, "c2": 1}}"#;
    let (code, stdout, stderr) = run_stdin(&["analyze", "-"], doc);
    assert_eq!(code, 3);
    let rep: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(rep["ur_satisfied"], false);
    assert!(rep["min_ur_eigenvalue"].as_f64().unwrap() < 0.0);
    assert!(stderr.contains("uncertainty relation"));
}

#[test]
fn tmst_verdicts_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("tri.csv");
    let (code, stdout, _) = run(&[
        "tmst",
        "4.5",
        "4.5",
        "1.2",
        "--triangoloid",
        csv_path.to_str().unwrap(),
        "--grid",
        "10",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("verdict: not steerable"));
    assert!(stdout.contains("vertex_lambda: 0.899774615"));

    let text = std::fs::read_to_string(&csv_path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "mu,mu_s,mu_c,mu_sc,depth");
    assert_eq!(lines.len(), 1 + 100 + 30 + 1);
    let vertex: Vec<&str> = lines.last().unwrap().split(',').collect();
    assert_eq!(vertex[1], "0");

    let (code, stdout, _) = run(&["tmst", "0.75", "0.75", "1.2"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("verdict: steerable"));
    assert!(stdout.contains("vertex_lambda: 0.224943654"));

    let (code, stdout, _) = run(&["tmst", "0", "0", "0"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("verdict: not steerable"));
}

#[test]
fn unwritable_csv_path_exits_4() {
    let (code, _, stderr) = run(&[
        "tmst",
        "0.75",
        "0.75",
        "1.2",
        "--triangoloid",
        "/nonexistent-dir/tri.csv",
        "--grid",
        "3",
    ]);
    assert_eq!(code, 4);
    assert!(stderr.contains("cannot write"));
}

#[test]
fn scan_reports_gap_and_cardinal_phase() {
    let (code, stdout, _) = run_stdin(&["scan", "-"], FIXTURE);
    assert_eq!(code, 0);
    let rep: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert!(rep["gap"].as_f64().unwrap() < 2e-4);
    assert!(rep["gap"].as_f64().unwrap() >= -1e-6);
    assert_eq!(rep["monotone_in_mus"], true);
    assert_eq!(
        rep["analytic_lambda_wns"].as_f64().unwrap(),
        0.397122302
    );
    // best phase within one grid step of {0, pi}
    let phi = rep["best_measurement"]["phi"].as_f64().unwrap();
    let tau = std::f64::consts::TAU;
    let step = tau / rep["grid"]["n_phi"].as_f64().unwrap();
    let d0 = phi.min(tau - phi);
    let dpi = (phi - std::f64::consts::PI).abs();
    assert!(d0 <= step + 1e-12 || dpi <= step + 1e-12);
}

#[test]
fn scan_of_product_state_has_zero_gap() {
    let doc = r#"{"canonical": {"a": 1, "b": 1, "c1": 0, "c2": 0}}"#;
    let (code, stdout, _) = run_stdin(&["scan", "-", "--grid", "3,8,4"], doc);
    assert_eq!(code, 0);
    let rep: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(rep["gap"].as_f64().unwrap(), 0.0);
    assert_eq!(rep["best_lambda"].as_f64().unwrap(), 1.0);
}

#[test]
fn scan_rejects_bad_grid() {
    let (code, _, stderr) = run_stdin(&["scan", "-", "--grid", "5,40"], FIXTURE);
    assert_eq!(code, 2);
    assert!(stderr.contains("--grid"));
}

#[test]
fn audit_is_clean_and_deterministic() {
    let (code, stdout, _) = run(&["audit", "--seed", "7", "--count", "500"]);
    assert_eq!(code, 0);
    assert!(stdout.trim_end().ends_with("0 violations"));
    let (code2, stdout2, _) = run(&["audit", "--seed", "7", "--count", "500"]);
    assert_eq!(code2, 0);
    assert_eq!(stdout, stdout2);
}

#[test]
fn corrupted_tolerance_fails_the_audit() {
    // an absurd PSD tolerance suppresses every entanglement verdict, so
    // EPR-steerable samples become hierarchy violations
    let out = steerlab()
        .args(["audit", "--seed", "7", "--count", "1000"])
        .env("STEERLAB_TOL", "1000")
        .output()
        .unwrap();
    assert_eq!(out.status.code().unwrap(), 5);
    let stdout = String::from_utf8(out.stdout).unwrap();
    let first_brace = stdout.find('{').unwrap();
    let last_brace = stdout.rfind('}').unwrap();
    let rep: serde_json::Value = serde_json::from_str(&stdout[first_brace..=last_brace]).unwrap();
    assert!(rep["hierarchy_violations"].as_u64().unwrap() >= 1);
    assert!(!rep["offenders"].as_array().unwrap().is_empty());
}

#[test]
fn invalid_tolerance_override_exits_2() {
    let out = steerlab()
        .args(["analyze", "/dev/null"])
        .env("STEERLAB_TOL", "banana")
        .output()
        .unwrap();
    assert_eq!(out.status.code().unwrap(), 2);
}

#[test]
fn tolerance_override_changes_the_verdict() {
    // a state a hair below the UR bound passes only with a looser tol
    // (nu_minus = a - c for this family, so c = 1.5 + 1e-7 undershoots
    // the bound by 1e-7 while every steering classifier stays far off)
    let doc = r#"{"canonical": {"a": 2, "b": 2, "c1": 1.5000001, "c2": 1.5000001}}"#;
    let (code, _, _) = run_stdin(&["analyze", "-"], doc);
    assert_eq!(code, 3);
    let mut child = steerlab()
        .args(["analyze", "-"])
        .env("STEERLAB_TOL", "1e-3")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(doc.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code().unwrap(), 0);
}
