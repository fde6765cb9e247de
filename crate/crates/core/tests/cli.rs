use std::process::{Command, Output};

use serde_json::Value;

fn mlde(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mlde"))
        .args(args)
        .env_remove("MLDE_DEFAULT_ORDER")
        .output()
        .unwrap()
}

fn json(o: &Output) -> Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn strs(v: &Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().to_string())
        .collect()
}

#[test]
fn solve_prints_series() {
    let v = json(&mlde(&[
        "solve", "--s", "6/5", "--alpha", "-1/10", "--order", "3",
    ]));
    assert_eq!(v["base_exponent"], "-1/10");
    assert_eq!(strs(&v["coeffs"]), ["1", "8", "23", "68"]);
}

#[test]
fn indicial_roots() {
    let v = json(&mlde(&["indicial", "--s", "-3/5"]));
    let mut r = strs(&v["roots"]);
    r.sort();
    assert_eq!(r, ["-1/40", "1/40", "31/40", "9/40"]);
}

#[test]
fn log_solution_and_non_root() {
    let v = json(&mlde(&[
        "solve", "--s", "6", "--alpha", "1/2", "--log", "--order", "6",
    ]));
    assert!(v["log_coeffs"].is_array());
    let bad = mlde(&["solve", "--s", "6", "--alpha", "7/10", "--log"]);
    assert_eq!(bad.status.code(), Some(3));
}

#[test]
fn apply_round_trip() {
    let out = mlde(&["solve", "--s", "2/5", "--alpha", "4/15", "--order", "12"]);
    let path = std::env::temp_dir().join(format!("mlde-cli-{}.json", std::process::id()));
    std::fs::write(&path, &out.stdout).unwrap();
    let v = json(&mlde(&[
        "apply",
        "--s",
        "2/5",
        "--series",
        path.to_str().unwrap(),
    ]));
    assert_eq!(v["annihilated"], true);
    let v = json(&mlde(&[
        "apply",
        "--s",
        "6/5",
        "--series",
        path.to_str().unwrap(),
    ]));
    assert_eq!(v["annihilated"], false);
    std::fs::remove_file(path).ok();
}

#[test]
fn classify_case_two() {
    let v = json(&mlde(&["classify", "--case", "2", "--depth", "32"]));
    assert_eq!(strs(&v["final"]), ["-3/5", "6/5", "42/5"]);
    let t = mlde(&["classify", "--case", "4", "--format", "table"]);
    assert_eq!(
        String::from_utf8_lossy(&t.stdout).trim(),
        "{-8/5, -6/5, -3/5, 2/5, 12/5, 42/5}"
    );
}

#[test]
fn characters_command() {
    let v = json(&mlde(&[
        "characters",
        "--algebra",
        "A2",
        "--order",
        "10",
        "--verify",
    ]));
    assert_eq!(v["verified"], true);
    assert_eq!(strs(&v["exponents"]), ["-1/15", "1/15", "4/15", "11/15"]);
    assert_eq!(v["characters"].as_array().unwrap().len(), 4);
    assert_eq!(
        mlde(&["characters", "--algebra", "G2"]).status.code(),
        Some(3)
    );
    assert!(
        mlde(&["characters", "--algebra", "G2", "--verify", "--order", "8"])
            .status
            .success()
    );
}

#[test]
fn catalog_commands() {
    let list = json(&mlde(&["catalog", "list"]));
    assert!(list
        .as_array()
        .unwrap()
        .iter()
        .any(|e| e["label"] == "B.f.f0"));
    let b = json(&mlde(&[
        "catalog", "build", "--label", "B.f.f0", "--order", "3",
    ]));
    assert_eq!(strs(&b["coeffs"]), ["1", "8", "23", "68"]);
    // only quarantined entries fail at s = 2/5
    assert!(mlde(&["catalog", "verify", "--s", "2/5"]).status.success());
    assert_eq!(
        mlde(&["catalog", "build", "--label", "nope"]).status.code(),
        Some(3)
    );
    let p = json(&mlde(&["catalog", "polynomial", "--name", "G3"]));
    assert_eq!(p["name"], "G3");
}

#[test]
fn forms_commands() {
    let v = json(&mlde(&["forms", "dump", "--name", "E4", "--order", "2"]));
    assert_eq!(strs(&v["coeffs"]), ["1", "240", "2160"]);
    assert!(mlde(&["forms", "verify", "--group", "a"]).status.success());
}

#[test]
fn order_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_mlde"))
        .args(["solve", "--s", "6/5", "--alpha", "-1/10"])
        .env("MLDE_DEFAULT_ORDER", "2")
        .output()
        .unwrap();
    assert_eq!(strs(&json(&o)["coeffs"]), ["1", "8", "23"]);
}

#[test]
fn deterministic_output() {
    let a = mlde(&["classify", "--all", "--parallel", "4"]);
    let b = mlde(&["classify", "--all", "--parallel", "1"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn usage_errors() {
    assert_eq!(mlde(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(mlde(&["classify", "--case", "7"]).status.code(), Some(3));
    assert_eq!(mlde(&["indicial", "--s", "x/y"]).status.code(), Some(3));
}
