use std::process::{Command, Output};

use serde_json::Value;

fn identsep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_identsep"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn is_complex_pair(v: &Value) -> bool {
    v.as_array()
        .is_some_and(|a| a.len() == 2 && a.iter().all(Value::is_f64))
}

/// Checks one case object against the report schema.
fn validate_case(case: &Value) -> Result<(), String> {
    let obj = case.as_object().ok_or("case is not an object")?;
    obj.get("case_id").and_then(Value::as_str).ok_or("case_id")?;
    obj.get("max_abs_deviation").and_then(Value::as_f64).ok_or("max_abs_deviation")?;
    let quantities = obj.get("quantities").and_then(Value::as_array).ok_or("quantities")?;
    for q in quantities {
        q.get("name").and_then(Value::as_str).ok_or("quantity name")?;
        q.get("provenance").and_then(Value::as_str).ok_or("quantity provenance")?;
        if !is_complex_pair(&q["computed"]) || !is_complex_pair(&q["expected"]) {
            return Err(format!("complex values must be [re, im]: {q}"));
        }
    }
    let verdicts = obj.get("verdicts").and_then(Value::as_array).ok_or("verdicts")?;
    for v in verdicts {
        v.get("context").and_then(Value::as_str).ok_or("verdict context")?;
        let verdict = v.get("verdict").and_then(Value::as_str).ok_or("verdict")?;
        if verdict != "separable_wrt" && verdict != "entangled_wrt" {
            return Err(format!("bad verdict {verdict}"));
        }
    }
    Ok(())
}

#[test]
fn list_is_stable_and_complete() {
    let a = identsep(&["list"]);
    let b = identsep(&["list"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.contains("bell-particle-local"));
    assert_eq!(text.lines().count(), identsep::cases::list().len());
    assert!(text.lines().count() >= 10);
}

#[test]
fn run_leftloc_3() {
    let out = identsep(&["run", "leftloc-3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let line = text.lines().find(|l| l.contains("E_L (boson)")).unwrap();
    assert_eq!(line.matches("1.000000000000").count(), 2, "{line}");
}

#[test]
fn unknown_case_is_a_usage_error() {
    let out = identsep(&["run", "xyz"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("xyz"));
}

#[test]
fn bad_flags_are_usage_errors() {
    assert_eq!(identsep(&["run", "--tolerance", "0"]).status.code(), Some(2));
    assert_eq!(identsep(&["run", "--format", "yaml"]).status.code(), Some(2));
    assert_eq!(identsep(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn json_report_matches_schema() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = identsep(&["run", "--all", "--format", "json", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let doc: Value = serde_json::from_str(&text).unwrap();
    let cases = doc.as_array().unwrap();
    assert_eq!(cases.len(), identsep::cases::list().len());
    for case in cases {
        validate_case(case).unwrap();
        assert!(case["max_abs_deviation"].as_f64().unwrap() <= 1e-9);
    }
    let parsed = identsep::report::parse_json(&text).unwrap();
    assert_eq!(parsed, identsep::cases::run_all().unwrap());
}

#[test]
fn unattainable_tolerance_fails_numerically() {
    // several cases carry rounding error of order 1e-16
    let out = identsep(&["run", "--all", "--tolerance", "1e-300"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("<-- mismatch"));
}

#[test]
fn verify_default_and_impossible() {
    let ok = identsep(&["verify"]);
    assert_eq!(ok.status.code(), Some(0));
    let fail = identsep(&["verify", "--tolerance", "1e-30"]);
    assert_eq!(fail.status.code(), Some(1));
    assert!(stdout(&fail).contains("witness:"));
}

#[test]
fn verify_seed_changes_witnesses_only() {
    let run = |seed: &str| -> Vec<Value> {
        let out = identsep(&["verify", "--seed", seed, "--format", "json"]);
        assert_eq!(out.status.code(), Some(0));
        serde_json::from_slice::<Value>(&out.stdout).unwrap().as_array().unwrap().clone()
    };
    let a = run("1");
    let b = run("2");
    assert!(a.iter().zip(&b).all(|(x, y)| x["passed"] == y["passed"]));
    assert!(a.iter().zip(&b).any(|(x, y)| x["witness"] != y["witness"]));
}
