use std::process::{Command, Output};

use serde_json::Value;

fn kapteyn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kapteyn"))
        .args(args)
        .env_remove("KAPTEYN_TOL")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = kapteyn(&all);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn values(report: &Value, key: &str) -> Vec<f64> {
    report["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r[key].as_f64().unwrap())
        .collect()
}

#[test]
fn closed_eval_example() {
    let o = kapteyn(&["closed", "eval", "--id", "2.17", "--x", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    let line = stdout(&o).lines().nth(1).unwrap().to_string();
    assert_eq!(line.split_whitespace().nth(1), Some("4.0"));
    let r = json(&["closed", "eval", "--id", "2.17", "--x", "0.5"]);
    assert_eq!(values(&r, "value"), vec![4.0]);
    assert_eq!(r["command"], "closed eval");
}

#[test]
fn coefficient_verification() {
    let o = kapteyn(&["coeffs", "verify", "--id", "3.20"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.matches("PASS").count(), 9, "{out}");
    assert!(out.contains("3.20: 8/8 coefficients PASS"));
    // a misprinted table is a validation failure
    let o = kapteyn(&["coeffs", "verify", "--id", "3.49"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("3.49: 4/5 coefficients PASS"));
}

#[test]
fn sum_at_zero() {
    let r = json(&["sum", "--family", "linear", "--nu", "0", "--parity", "all", "--x", "0"]);
    assert_eq!(values(&r, "value"), vec![0.0]);
}

#[test]
fn csv_and_json_agree_digit_for_digit() {
    let args = ["sum", "--nu", "-1", "--parity", "even", "--grid", "0.1:0.9:7"];
    let mut csv_args = args.to_vec();
    csv_args.extend(["--format", "csv"]);
    let csv = stdout(&kapteyn(&csv_args));
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("x,value,error,method"));
    let csv_values: Vec<String> = lines.map(|l| l.split(',').nth(1).unwrap().to_string()).collect();
    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    let raw = stdout(&kapteyn(&json_args));
    let json_values: Vec<String> = raw
        .lines()
        .filter_map(|l| l.trim().strip_prefix("\"value\": "))
        .map(|v| v.trim_end_matches(',').to_string())
        .collect();
    assert_eq!(csv_values.len(), 7);
    assert_eq!(csv_values, json_values);
    for v in &csv_values {
        let mantissa = v.split('e').next().unwrap().replace(['-', '.'], "");
        assert_eq!(mantissa.len(), 17, "{v}");
    }
}

#[test]
fn rows_are_ordered_by_x() {
    let r = json(&["sum", "--nu", "1", "--grid", "0.9:0.1:9"]);
    let xs = values(&r, "x");
    assert_eq!(xs.len(), 9);
    assert!(xs.windows(2).all(|w| w[0] < w[1]), "{xs:?}");
}

#[test]
fn usage_errors_exit_one() {
    let cases: &[&[&str]] = &[
        &["closed", "eval", "--id", "9.99", "--x", "0.5"],
        &["closed", "eval", "--id", "2.17", "--x", "1.5"],
        &["sum", "--grid", "0:1"],
        &["sum", "--grid", "0:0.5:100001"],
        &["sum", "--x", "0.1", "--grid", "0:0.5:3"],
        &["sum"],
        &["integral", "--kind", "cot", "--variant", "param-a", "--x", "0.5"],
        &["asym", "--id", "1.00", "--x", "0.99"],
        &["radiation", "probability", "--method", "series", "--beta", "0.95"],
        &["--tol", "0", "sum", "--x", "0.1"],
        &["frobnicate"],
    ];
    for args in cases {
        let o = kapteyn(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
    assert_eq!(kapteyn(&["--help"]).status.code(), Some(0));
}

#[test]
fn tolerance_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_kapteyn"))
        .args(["sum", "--x", "0.5", "--format", "json"])
        .env("KAPTEYN_TOL", "1e-6")
        .output()
        .unwrap();
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["params"]["tol"].as_f64(), Some(1e-6));
    let r = json(&["sum", "--x", "0.5"]);
    assert_eq!(r["params"]["tol"].as_f64(), Some(1e-12));
}

#[test]
fn audit_is_deterministic_and_reports_known_misprints() {
    let run = || kapteyn(&["audit", "--format", "json"]);
    let (a, b) = (run(), run());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(2));
    let r: Value = serde_json::from_slice(&a.stdout).unwrap();
    let audit = &r["audit"];
    let failed: Vec<&str> = audit["failed"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert_eq!(
        failed,
        ["coefficients: 3.49 x^8", "coefficients: 5.06 x^8", "truncation: 3.49", "truncation: 5.06"]
    );
    assert_eq!(audit["failures"].as_u64(), Some(4));
    assert!(audit["checks"].as_u64().unwrap() > 150);
    assert!(audit["max_rel_dev"].as_f64().is_some());
}

#[test]
fn radiation_commands() {
    let r = json(&["radiation", "probability", "--method", "series", "--beta", "0.3"]);
    assert!((values(&r, "value")[0] - 9.7012e-3).abs() < 1e-7);
    let r = json(&["radiation", "quantum", "--chi", "1"]);
    let methods: Vec<&str> = r["results"].as_array().unwrap().iter().map(|v| v["method"].as_str().unwrap()).collect();
    assert_eq!(methods, ["gap:low", "gap:high"]);
    let r = json(&["radiation", "lifetime", "--gamma", "1e5", "--chi", "50", "--ratio", "2"]);
    assert!((values(&r, "value")[1] - 2f64.cbrt()).abs() < 1e-12);
    let r = json(&["radiation", "rate", "--beta", "0.3", "--omega-h", "2", "--time", "0"]);
    assert_eq!(values(&r, "value")[1], 1.0);
}

#[test]
fn integral_and_asymptotic_commands() {
    let r = json(&["integral", "--kind", "log", "--variant", "even", "--x", "0.5"]);
    assert!((values(&r, "value")[0] - 0.068_567_538_578_291).abs() < 1e-9);
    let r = json(&["asym", "--id", "3.24", "--x", "0.999"]);
    let x: f64 = 0.999;
    assert!((values(&r, "value")[0] - 3f64.sqrt() / (1.0 - x * x).sqrt()).abs() < 1e-9);
    let r = json(&["coeffs", "eval", "--id", "3.20", "--x", "0.1", "--check"]);
    assert!(values(&r, "error")[0] < 1e-9);
}
