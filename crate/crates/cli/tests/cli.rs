use std::process::{Command, Output};

use serde_json::Value;

fn gup(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gup")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn vmax_value() {
    let out = gup(&["vmax", "--alpha", "0.01", "--beta", "0.001"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["schema_version"], 1);
    assert!((doc["result"]["vmax"].as_f64().unwrap() - 38.3796).abs() < 1e-4);
}

#[test]
fn vmax_imaginary_root_is_structured_error() {
    let out = gup(&["vmax", "--alpha", "0.01", "--beta", "3e-4"]);
    assert_eq!(out.status.code(), Some(1));
    let doc = json(&out);
    assert_eq!(doc["error"]["kind"], "imaginary_root");
    assert!(doc.get("result").is_none());
}

#[test]
fn jacobi_constraints() {
    let doc = json(&gup(&["check", "jacobi"]));
    assert_eq!(doc["result"]["constraints"], serde_json::json!(["alpha1=alpha2", "beta2=2*beta1+alpha1^2"]));
    assert_eq!(doc["result"]["representation"]["b"], "b=(n+1)*alpha^2");
    assert_eq!(doc["result"]["representation"]["beta_at_n1"], "beta=2*alpha^2");
}

#[test]
fn parse_failures_exit_two() {
    assert_eq!(gup(&["vmax", "--bogus", "1"]).status.code(), Some(2));
    assert_eq!(gup(&["kernel", "ho", "--method", "magic"]).status.code(), Some(2));
    assert_eq!(gup(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn args_are_echoed() {
    let argv = ["kernel", "ho", "--method", "spectral", "--euclidean", "1.0", "--q0", "0", "--qf", "0"];
    let doc = json(&gup(&argv));
    let echoed: Vec<&str> = doc["args"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert_eq!(echoed, argv);
    assert_eq!(doc["command"], "kernel ho");
    let re = doc["result"]["amplitude"]["re"].as_f64().unwrap();
    let exact = (1.0 / (2.0 * std::f64::consts::PI * 1f64.sinh())).sqrt();
    assert!((re - exact).abs() < 1e-8);
}

#[test]
fn free_action_oracle() {
    let doc = json(&gup(&["action", "free", "--q0", "0", "--qf", "1", "--T", "1", "--oracle", "--alpha", "0.01", "--beta", "0.001"]));
    let r = &doc["result"];
    assert!((r["action"]["total"].as_f64().unwrap() - 0.5094).abs() < 1e-12);
    assert!(r["oracle"]["difference"].as_f64().unwrap().abs() < 1e-10);
}

#[test]
fn monte_carlo_is_byte_identical() {
    let argv = ["kernel", "free", "--method", "lattice", "--euclidean", "1", "--beta", "1e-4", "--samples", "20000", "--seed", "42"];
    let a = gup(&argv);
    let b = gup(&argv);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let single = Command::new(env!("CARGO_BIN_EXE_gup")).args(argv).env("GUP_THREADS", "1").output().unwrap();
    assert_eq!(a.stdout, single.stdout);
}

#[test]
fn csv_spectrum_table() {
    let out = gup(&["spectrum", "--beta", "1e-3", "--n-max", "40", "--levels", "3", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,numeric,perturbative,shift_numeric,shift_perturbative");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("0,0.5007"));
}

#[test]
fn config_file_supplies_defaults() {
    let path = std::env::temp_dir().join(format!("gup-config-{}.json", std::process::id()));
    std::fs::write(&path, r#"{"alpha": 0.01, "beta": 0.001, "mass": 2.0}"#).unwrap();
    let p = path.to_str().unwrap();
    let doc = json(&gup(&["vmax", "--config", p, "--mass", "1"]));
    assert_eq!(doc["config"]["mass"], 1.0);
    assert_eq!(doc["config"]["alpha"], 0.01);
    assert!((doc["result"]["vmax"].as_f64().unwrap() - 38.3796).abs() < 1e-4);
    std::fs::write(&path, r#"{"alpha": 0.01, "nonsense": 1}"#).unwrap();
    assert_eq!(gup(&["vmax", "--config", p]).status.code(), Some(2));
    std::fs::remove_file(&path).ok();
}

#[test]
fn caustic_is_exit_one() {
    let pi = std::f64::consts::PI.to_string();
    let out = gup(&["kernel", "ho", "--T", &pi]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["kind"], "caustic");
}

#[test]
fn spectral_route_needs_damping() {
    let out = gup(&["kernel", "ho", "--method", "spectral", "--T", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["kind"], "convergence_domain");
}
