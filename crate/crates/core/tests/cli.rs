use serde_json::Value;
use std::process::Command;

fn run(args: &[&str]) -> (i32, String) {
    let mut argv = vec!["curvkit"];
    argv.extend_from_slice(args);
    let mut out = Vec::new();
    let code = curvkit::cli::run(argv, &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let (code, out) = run(args);
    (code, serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}")))
}

fn schema() -> jsonschema::Validator {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/schema/report.schema.json")).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

#[test]
fn closed_form_and_bounds() {
    let (code, v) = run_json(&["diameter", "closed-form", "-m", "2", "-p", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["value"], 1.5);
    let (code, v) = run_json(&["bounds", "petrunin", "-m", "2"]);
    assert_eq!(code, 0);
    assert!((v["value"].as_f64().unwrap() - 1.5f64.sqrt()).abs() < 1e-15);
    let (_, v) = run_json(&["bounds", "ball", "-n", "5"]);
    assert!(v["value"]["low"].as_f64().unwrap() < v["value"]["high"].as_f64().unwrap());
    let (_, v) = run_json(&["bounds", "band", "--sc", "40", "--d", "inf"]);
    assert!((v["value"].as_f64().unwrap() - std::f64::consts::PI / 40f64.sqrt()).abs() < 1e-9);
}

#[test]
fn design_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("hex.txt");
    let p = path.to_str().unwrap();
    let (code, _) = run(&["design", "gen-circle", "-n", "6", "--out", p]);
    assert_eq!(code, 0);
    let (code, v) = run_json(&["design", "verify", "--file", p, "--degree", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["pass"], true);
    assert!(v["residual4"].as_f64().unwrap() < 1e-12);

    std::fs::write(&path, "2 3 4\n1 0\n0 one\n").unwrap();
    let (code, v) = run_json(&["design", "verify", "--file", p]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "design");
}

#[test]
fn text_format_renders_the_same_fields() {
    let (code, text) = run(&["--format", "text", "immersion", "curvature", "--name", "clifford-torus", "--param", "N=2"]);
    assert_eq!(code, 0);
    let line = text.lines().find(|l| l.starts_with("curv_perp: ")).unwrap();
    let v: f64 = line["curv_perp: ".len()..].parse().unwrap();
    assert!((v - 2f64.sqrt()).abs() < 1e-9);
}

#[test]
fn usage_and_numeric_errors_have_distinct_codes() {
    assert_eq!(run(&["diameter", "nope"]).0, 2);
    assert_eq!(run(&["bounds", "no-such-kind"]).0, 2);
    assert_eq!(run(&["immersion", "curvature", "--name", "veronese", "--param", "m"]).0, 2);
    let (code, v) = run_json(&["diameter", "closed-form", "-m", "2", "-p", "3"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "diameter");
    let (code, v) = run_json(&["immersion", "curvature", "--name", "nothing"]);
    assert_eq!(code, 1);
    assert!(v["error"]["message"].as_str().unwrap().contains("nothing"));
    let (code, v) = run_json(&["reproduce", "--only", "no-such-claim"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "unknown_claim");
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn stochastic_commands_are_byte_reproducible() {
    let args = ["--seed", "7", "diameter", "estimate", "-m", "2", "-n", "5", "--restarts", "2"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a, b);
    let (_, v) = run_json(&args);
    assert!(v["value"].as_f64().unwrap() >= 1.5 - 1e-9);
    let other = run(&["--seed", "8", "diameter", "moment", "-m", "3", "-p", "4", "--samples", "20000"]);
    assert_eq!(other, run(&["--seed", "8", "diameter", "moment", "-m", "3", "-p", "4", "--samples", "20000"]));
}

#[test]
fn reproduce_single_claim_validates_against_schema() {
    let (code, v) = run_json(&["reproduce", "--only", "veronese-m2-ball"]);
    assert_eq!(code, 0);
    assert_eq!(v["claims"].as_array().unwrap().len(), 1);
    assert_eq!(v["claims"][0]["status"], "pass");
    assert!(schema().is_valid(&v));

    let (_, v) = run_json(&["reproduce", "--only", "bessel-j0-digits", "--only", "sc-cube-n2"]);
    let ids: Vec<&str> = v["claims"].as_array().unwrap().iter().map(|c| c["claim_id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["bessel-j0-digits", "sc-cube-n2"]);
    assert_eq!(v["claims"][0]["status"], "flagged");
    assert!(schema().is_valid(&v));
}

#[test]
fn corrupted_design_file_becomes_an_error_record() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "2 2 4\n1 0\n").unwrap();
    let (code, v) = run_json(&["reproduce", "--only", "sc-cube-n1", "--design-file", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    let rec = v["claims"].as_array().unwrap().iter().find(|c| c["claim_id"] == "design-file").unwrap();
    assert_eq!(rec["status"], "fail");
    assert!(rec["error"].as_str().is_some());
    assert_eq!(rec["computed"], Value::Null);
    assert!(schema().is_valid(&v));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_curvkit");
    let ok = Command::new(bin).args(["immersion", "list"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert!(v["immersions"].as_array().unwrap().len() >= 10);
    let usage = Command::new(bin).args(["design", "verify"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
}
