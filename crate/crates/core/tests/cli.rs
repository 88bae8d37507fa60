use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn adelcap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_adelcap")).args(args).output().unwrap()
}

fn adelcap_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_adelcap"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn reports(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn num(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

#[test]
fn half_disc_fixture() {
    let out = adelcap(&["run", fixture("half_disc.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = &reports(&out)[0];
    assert_eq!(r["name"], "half_disc");
    assert_eq!(r["status"]["state"], "ok");
    assert!((num(&r["results"]["S_gamma"]) - 0.5).abs() < 1e-12);
    assert!((num(&r["results"]["gamma_CR"]) - 0.5).abs() < 1e-12);
}

#[test]
fn batch_in_order() {
    let out = adelcap(&["run", fixture("batch.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let rs = reports(&out);
    let kinds: Vec<&str> = rs.iter().map(|r| r["kind"].as_str().unwrap()).collect();
    assert_eq!(
        kinds,
        ["exponents", "green", "game", "polydisk", "pullback", "witness", "charpoly", "fm_bound", "compare"]
    );
    assert_eq!(rs[0]["results"]["m"], serde_json::json!([1, 2]));
    assert!((num(&rs[1]["results"]["lambda"]) + 1.5).abs() < 1e-12);
    assert!((num(&rs[2]["results"]["value"]) - 0.2).abs() < 1e-12);
    assert!((num(&rs[3]["results"]["S_gamma"]) - 100.0 / 9.0).abs() < 1e-12);
    assert_eq!(rs[4]["results"]["identity_pass"], true);
    assert_eq!(rs[5]["results"]["alpha"], "8");
    assert_eq!(rs[5]["results"]["verified"], true);
    assert_eq!(rs[6]["results"]["polynomial"], "t^2 - 5t + 6");
    assert!((num(&rs[7]["results"]["lower_bound"]) - 2.0).abs() < 1e-15);
    // 2^{4/4} = 2 for the set, matched by the identity candidate
    assert_eq!(rs[8]["results"]["holds"], true);
    assert_eq!(rs[8]["results"]["equal"], true);
    assert!(rs.iter().all(|r| r.get("oracle").is_none()));
}

#[test]
fn output_is_byte_stable() {
    let a = adelcap(&["run", "--with-oracle", fixture("batch.json").to_str().unwrap()]);
    let b = adelcap(&["run", "--with-oracle", fixture("batch.json").to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn numbers_carry_seventeen_digits() {
    let out = adelcap(&["run", fixture("half_disc.json").to_str().unwrap()]);
    let line = String::from_utf8(out.stdout).unwrap();
    assert!(line.contains("\"S_gamma\":5.0000000000000000e-1"), "{line}");
}

#[test]
fn oracle_block() {
    let out = adelcap(&["run", "--with-oracle", fixture("batch.json").to_str().unwrap()]);
    let rs = reports(&out);
    let green = &rs[1]["oracle"];
    assert!((num(&green["grid_max"]) + 1.5).abs() < 1e-3);
    assert!(num(&green["lambda_minus_grid"]).abs() < 2e-3);
    assert!((num(&rs[2]["oracle"]["closed_form_value"]) - 0.2).abs() < 1e-12);
    assert!(num(&rs[3]["oracle"]["relative_error"]) < 1e-12);
    assert_eq!(rs[6]["oracle"]["interpolation_agrees"], true);
}

#[test]
fn missing_field_exit_one() {
    let out = adelcap_stdin(&["run"], r#"{"kind": "green", "orbits": [[1]]}"#);
    assert_eq!(out.status.code(), Some(1));
    let r = &reports(&out)[0];
    assert_eq!(r["status"]["code"], "SchemaViolation");
    assert!(r["status"]["message"].as_str().unwrap().contains("entries"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("entries"));
}

#[test]
fn broken_document_exit_one() {
    let out = adelcap_stdin(&["run"], "{ not json");
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
}

#[test]
fn numeric_failure_exit_two() {
    let out = adelcap(&["run", fixture("indefinite.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(reports(&out)[0]["status"]["code"], "NotNegativeDefinite");
}

#[test]
fn hypothesis_failures_exit_three() {
    let out = adelcap(&["run", fixture("boundary.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(reports(&out)[0]["status"]["code"], "BoundaryOptimum");
    let out = adelcap(&["run", fixture("subcritical.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(reports(&out)[0]["status"]["code"], "NotSupercritical");
}

#[test]
fn batch_exit_code_is_first_failure() {
    let input = r#"[
        {"kind": "game", "entries": [1]},
        {"kind": "witness", "d": 1, "radii": []},
        {"kind": "green"}
    ]"#;
    let out = adelcap_stdin(&["run"], input);
    assert_eq!(out.status.code(), Some(3));
    let rs = reports(&out);
    assert_eq!(rs.len(), 3);
    assert_eq!(rs[0]["status"]["state"], "ok");
}

#[test]
fn tolerance_flag_and_overrides() {
    let input = r#"{"kind": "game", "entries": [[0, 1], [1, 0]], "tolerances": {"game_gap": 1e-6}}"#;
    let out = adelcap_stdin(&["run", "--tol", "1e-9"], input);
    assert_eq!(out.status.code(), Some(0));
    let out = adelcap_stdin(&["run", "--tol", "-1"], input);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn text_format() {
    let out = adelcap(&["run", "--format", "text", fixture("half_disc.json").to_str().unwrap()]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("half_disc [green]: ok"));
    assert!(text.contains("S_gamma = 0.5"));
}

#[test]
fn selftest_passes() {
    let out = adelcap(&["selftest"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(!String::from_utf8_lossy(&out.stdout).contains("FAIL"));
}

#[test]
fn schema_prints() {
    let out = adelcap(&["schema"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for kind in ["green", "game", "polydisk", "pullback", "fm_bound", "witness", "exponents", "charpoly", "compare"] {
        assert!(text.contains(kind), "{kind}");
    }
}
