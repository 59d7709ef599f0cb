use std::process::{Command, Output};

use serde_json::Value;

fn galimech(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_galimech")).args(args).env_remove("GALIMECH_SEED").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn noether_translations_on_free_particle() {
    let out = galimech(&["--model", "free3d", "--points", "8", "noether", "--field", "translations"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["schema"], 1);
    let charges = r["charges"].as_array().unwrap();
    assert_eq!(charges.len(), 3);
    assert!(charges.iter().all(|c| c["diagnostics"]["conserved"] == true));
    assert!(charges[0]["charge"]["expression_opposite_sign"].as_str().unwrap().contains("v1"));
}

#[test]
fn rigid_body_momentum_map() {
    let out = galimech(&["--model", "rigidbody", "--points", "8", "momentum-map", "--action", "rotations"]);
    assert_eq!(out.status.code(), Some(0));
    let entries = json(&out)["entries"].as_array().unwrap().clone();
    assert_eq!(entries.len(), 3);
    for e in entries {
        assert_eq!(e["tau"], 0.0);
        assert_eq!(e["quantisable"], true);
    }
}

#[test]
fn non_symmetry_exits_with_failure() {
    let out = galimech(&["--model", "free3d", "--points", "8", "check-symmetry", "--field", "x1^2 d1"]);
    assert_eq!(out.status.code(), Some(2));
    let r = json(&out);
    assert_eq!(r["symmetry"], "fail");
    assert!(r["conditions"].as_array().unwrap().len() >= 5);
}

#[test]
fn input_errors_exit_with_three() {
    assert_eq!(galimech(&["--model", "nope", "derive"]).status.code(), Some(3));
    assert_eq!(galimech(&["--model", "free3d", "derive", "--x", "1,2"]).status.code(), Some(3));
    assert_eq!(galimech(&["--model", "free3d", "frobnicate"]).status.code(), Some(3));
    assert_eq!(galimech(&["--model", "free3d", "--box", "1,-1", "derive"]).status.code(), Some(3));
    assert_eq!(galimech(&["--model", "free3d", "check-symmetry", "--field", "x1 d"]).status.code(), Some(3));
}

#[test]
fn simulate_writes_csv_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = galimech(&[
        "--model",
        "cyclotron",
        "--out",
        dir.path().to_str().unwrap(),
        "--points",
        "4",
        "simulate",
        "--v0",
        "1,0,0.5",
        "--T",
        "0.5",
        "--h",
        "0.01",
        "--charges",
        "axial;time",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.path().join("trajectory.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "t,x1,x2,x3,v1,v2,v3,charge_P3,charge_L3,charge_H");
    assert_eq!(lines.count(), 51);
    let report: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("simulate.json")).unwrap()).unwrap();
    for c in report["charges"].as_array().unwrap() {
        assert!(c["drift"]["max_drift"].as_f64().unwrap() < 1e-8);
    }
}

#[test]
fn reports_are_deterministic_and_seed_env_overrides() {
    let args = ["--model", "oscillator", "--seed", "5", "--points", "6", "check-symmetry", "--field", "x1 d2"];
    let a = galimech(&args);
    let b = galimech(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["seed"], 5);
    let c = Command::new(env!("CARGO_BIN_EXE_galimech")).args(args).env("GALIMECH_SEED", "9").output().unwrap();
    assert_eq!(json(&c)["seed"], 9);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn config_file_sets_field_strength() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("model.json");
    std::fs::write(&path, r#"{"catalog": "cyclotron", "params": {"b": 2.0}}"#).unwrap();
    let out = galimech(&["--config", path.to_str().unwrap(), "derive", "--v", "1,0,0"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["omega"][1][2], 2.0);
    assert_eq!(r["acceleration"][1], -2.0);
    std::fs::write(&path, r#"{"catalog": "cyclotron", "particle": {"charge": {"value": 1, "dim": [0, 1, 0]}}}"#)
        .unwrap();
    let out = galimech(&["--config", path.to_str().unwrap(), "derive"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("particle.charge"));
}
