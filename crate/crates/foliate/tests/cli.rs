use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn foliate(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_foliate")).args(args).env_remove("FOLIATION_JET_ORDER").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("foliate-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn reduce_writes_tree_document() {
    let path = scratch("omega1.json");
    let out = foliate(&["reduce", "--form", "(x - y) dx + x dy", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["blowups"], 1);
    assert_eq!(doc["components"].as_array().unwrap().len(), 1);
    assert_eq!(doc["components"][0]["chern"], -1);
    let s = &doc["singularities"][0];
    assert_eq!(s["class"], "saddle-node");
    assert_eq!(s["data"]["k"], 1);
    assert_eq!(s["data"]["mu"], "-1");
    assert_eq!(doc["cs_check"]["passed"], true);
}

#[test]
fn tree_document_is_byte_stable() {
    let (a, b) = (scratch("a.json"), scratch("b.json"));
    for p in [&a, &b] {
        let out = foliate(&["reduce", "--case", "omega_n n=3", "--out", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn dot_marks_dicritical_components() {
    let path = scratch("radial.dot");
    let out = foliate(&["reduce", "--case", "radial", "--dot", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let dot = std::fs::read_to_string(&path).unwrap();
    assert!(dot.starts_with("graph "));
    assert!(dot.contains("shape=box"));
}

#[test]
fn corpus_case_summary() {
    let out = foliate(&["corpus", "--case", "omega_n", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    let checks = v["results"][0]["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["name"] == "cs_check" && c["passed"] == true));
}

#[test]
fn beam_check_example() {
    let out = foliate(&["beam-check", "--case", "model_sn", "--k", "1", "--delta", "1.0472", "--rays", "100"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["violations"].as_array().unwrap().len(), 0);
    assert_eq!(v["rays"], 100);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(foliate(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(foliate(&["reduce", "--bogus"]).status.code(), Some(2));
    assert_eq!(foliate(&["reduce", "--form", "x dy", "--case", "euler"]).status.code(), Some(2));
    assert_eq!(foliate(&["reduce", "--case", "nonexistent"]).status.code(), Some(2));
    assert_eq!(foliate(&["reduce"]).status.code(), Some(2));
}

#[test]
fn analysis_errors_exit_1_with_json() {
    let out = foliate(&["classify", "--form", "dx dy"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["error"]["kind"], "parse");
    assert!(v["error"]["message"].as_str().unwrap().contains("token 2"));
    let out = foliate(&["beam-check", "--case", "linear", "--lambda=-1", "--perturbation", "x/2", "--delta", "1.2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["kind"], "analysis");
}

#[test]
fn jet_order_from_environment() {
    let bin = env!("CARGO_BIN_EXE_foliate");
    let out = Command::new(bin).args(["classify", "--case", "omega_1"]).env("FOLIATION_JET_ORDER", "3").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = Command::new(bin).args(["classify", "--case", "euler"]).env("FOLIATION_JET_ORDER", "many").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn classify_reports_weak_jet() {
    let out = foliate(&["classify", "--form", "x^2 dy - (y + x) dx"]);
    let v = json(&out);
    assert_eq!(v["class"], "saddle-node");
    assert_eq!(v["weak_jet"]["text"], "-x - x^2 - 2 x^3 - 6 x^4");
}

#[test]
fn lift_writes_csv() {
    let path = scratch("lift.csv");
    let out = foliate(&["lift", "--case", "linear lambda=-2/3", "--y0", "0.05", "--radius", "0.5", "--csv", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["status"], "complete");
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().next().unwrap(), "t,Re x,Im x,Re y,Im y");
    assert!(text.lines().count() > 10);
}

#[test]
fn holonomy_along_x_axis() {
    let out = foliate(&["holonomy", "--case", "linear", "--lambda=-2/3", "--along", "x=0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let rot = num_complex::Complex64::from_polar(1.0, -4.0 * std::f64::consts::PI / 3.0);
    for p in v["points"].as_array().unwrap() {
        let z = |k: &str| num_complex::Complex64::new(p[k][0].as_f64().unwrap(), p[k][1].as_f64().unwrap());
        assert!((z("y1") - z("y0") * rot).norm() < 1e-8);
    }
}

#[test]
fn cycles_negative_control_fails() {
    assert_eq!(foliate(&["cycles"]).status.code(), Some(0));
    let out = foliate(&["cycles", "--x-scale", "1.01"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["gamma_c"]["passed"], false);
}
