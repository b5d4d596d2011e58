use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn forge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cartan-forge")).args(args).env_remove("CARTAN_FORGE_BUDGET_MS").output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn construct_to(dir: &Path, ring: &str, n: &str) -> std::path::PathBuf {
    let path = dir.join("d.json");
    let out = forge(&["construct", "--ring", ring, "--n", n, "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    path
}

#[test]
fn construct_z217_writes_four_components() {
    let dir = tempfile::tempdir().unwrap();
    let path = construct_to(dir.path(), "Z/217", "3");
    let d = read_json(&path);
    assert_eq!(d["components"].as_array().unwrap().len(), 4);
    assert_eq!(d["provenance"]["u"], 191);
}

#[test]
fn construct_reports_obstructions() {
    let out = forge(&["construct", "--ring", "Z/9", "--n", "3"]);
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).contains("3I"));

    let out = forge(&["construct", "--ring", "Z/5", "--n", "6"]);
    assert_eq!(code(&out), 3);
    assert!(stdout(&out).contains("not a prime power"));
}

#[test]
fn verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = construct_to(dir.path(), "Z/9", "4");
    let p = path.to_str().unwrap();
    assert_eq!(code(&forge(&["verify", "--in", p])), 0);
    assert_eq!(code(&forge(&["verify", "--in", p, "--ring", "Z/9"])), 0);
    assert_eq!(code(&forge(&["verify", "--in", p, "--ring", "Z/7"])), 1);
}

#[test]
fn verify_detects_zeroed_basis_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let path = construct_to(dir.path(), "Z/7", "3");
    let mut d = read_json(&path);
    let entries = d["components"][2]["basis"][0]["entries"].as_array_mut().unwrap();
    for row in entries {
        for x in row.as_array_mut().unwrap() {
            *x = Value::from(0);
        }
    }
    std::fs::write(&path, d.to_string()).unwrap();
    let out = forge(&["--format", "json", "verify", "--in", path.to_str().unwrap()]);
    assert_eq!(code(&out), 4);
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["passed"], false);
    let named = report["witnesses"].as_array().unwrap().iter().any(|w| w["detail"].as_str().unwrap().contains("H_1"));
    assert!(named, "{report}");
}

#[test]
fn verify_rejects_nonzero_trace() {
    let dir = tempfile::tempdir().unwrap();
    let path = construct_to(dir.path(), "Z/7", "3");
    let mut d = read_json(&path);
    d["components"][0]["basis"][0]["entries"][0][0] = Value::from(1);
    std::fs::write(&path, d.to_string()).unwrap();
    let out = forge(&["verify", "--in", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("trace"));
}

#[test]
fn search_sl3_table() {
    let out = forge(&["--format", "json", "search-sl3", "--q", "5,7,11,13"]);
    assert_eq!(code(&out), 0);
    let table: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let exists: Vec<bool> = table.as_array().unwrap().iter().map(|r| r["exists"].as_bool().unwrap()).collect();
    assert_eq!(exists, [false, true, false, true]);
    assert!(table[0].get("elapsed_ms").is_some());
}

#[test]
fn oracle_lemma_and_guard() {
    let out = forge(&["oracle-lemma", "--q", "5"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("0 counterexamples"));
    assert_eq!(code(&forge(&["oracle-lemma", "--q", "101"])), 5);
}

#[test]
fn budget_env_var_stops_searches() {
    let out = Command::new(env!("CARGO_BIN_EXE_cartan-forge"))
        .args(["oracle-lemma", "--q", "7", "--shape-check"])
        .env("CARTAN_FORGE_BUDGET_MS", "0")
        .output()
        .unwrap();
    assert_eq!(code(&out), 5);
}

#[test]
fn ring_info_and_sl2_analysis() {
    let out = forge(&["--format", "json", "ring-info", "--ring", "Z/9", "--p", "3"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["primitive_root"], Value::Null);

    let out = forge(&["sl2-analysis", "--q", "7"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("consistent: true"));
    assert_eq!(code(&forge(&["sl2-analysis", "--q", "8"])), 1);
}

#[test]
fn remark_check_precondition() {
    let out = forge(&["remark-check", "--q", "5,11"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).matches("true").count(), 2);
    assert_eq!(code(&forge(&["remark-check", "--q", "7"])), 1);
}
