use std::process::{Command, Output};

use serde_json::Value;

fn lollipop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lollipop"))
        .args(args)
        .env_remove("LOLLIPOP_WIRING")
        .env_remove("LOLLIPOP_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn build_emits_json_and_dot() {
    let o = lollipop(&["build", "--n", "3"]);
    assert!(o.status.success());
    let g: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(g["n_vertices"], 12);
    assert_eq!(g["edges"].as_array().unwrap().len(), 18);

    let o = lollipop(&["build", "--n", "2", "--emit", "dot"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("graph"));
}

#[test]
fn oracle_reads_a_built_graph() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    std::fs::write(&path, lollipop(&["build", "--n", "4"]).stdout).unwrap();
    let p = path.to_str().unwrap();

    let o = lollipop(&["oracle", "cycles", "--graph", p]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("3 Hamiltonian cycles"));

    let o = lollipop(&["oracle", "lollipop", "--graph", p, "--start", "2"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    // two orientations of each of the three cycles from a fixed start
    assert_eq!(v["degree_one"], 6);
}

#[test]
fn malformed_graphs_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"n_vertices": 4, "edges": [[0, 1], [1, 2]]}"#).unwrap();
    let o = lollipop(&["oracle", "cycles", "--graph", path.to_str().unwrap()]);
    assert!(!o.status.success());
}

#[test]
fn run_writes_a_trace() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("trace.json");
    let o = lollipop(&["run", "--n", "5", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let t: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(t["steps"], 34);
    assert_eq!(t["rightmost_words"].as_array().unwrap().len(), 16);
    assert_eq!(t["rightmost_words"][0], "PQUPQ");
}

#[test]
fn exhausted_budget_is_a_failure() {
    let o = lollipop(&["run", "--n", "10", "--budget", "10"]);
    assert!(!o.status.success());
    let t: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(t["steps"], 10);
}

#[test]
fn words_and_asymptotics() {
    let o = lollipop(&["words", "--n", "6", "--emit", "count"]);
    assert_eq!(stdout(&o).trim(), "9");
    let o = lollipop(&["words", "--n", "2", "--emit", "list"]);
    assert_eq!(stdout(&o).lines().count(), 3);
    let o = lollipop(&["asymptotics", "--kmax", "30"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["c"].as_f64().unwrap() - 1.3953).abs() < 1e-3);
}

#[test]
fn verify_reports_json_and_passes() {
    let o = lollipop(&["verify", "--lemma", "init", "--n-min", "3", "--n-max", "9"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["cases"].as_array().unwrap().len(), 7);
}

#[test]
fn sweep_then_report() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("sweep.json");
    let csv = dir.path().join("sweep.csv");
    let o = lollipop(&["sweep", "--n-min", "3", "--n-max", "6", "--out", json.to_str().unwrap()]);
    assert!(o.status.success());
    let o = lollipop(&[
        "report",
        "--input",
        json.to_str().unwrap(),
        "--out",
        csv.to_str().unwrap(),
        "--format",
        "csv",
    ]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 5);
    assert_eq!(text, stdout(&lollipop(&["sweep", "--n-min", "3", "--n-max", "6"])));
}

#[test]
fn missing_wiring_snapshot_is_refused() {
    let o = lollipop(&["--wiring", "/nonexistent/wiring.json", "build", "--n", "2"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("not found"));
}

#[test]
fn search_output_is_usable_as_wiring() {
    let dir = tempfile::tempdir().unwrap();
    let snap = dir.path().join("wiring.json");
    let o = lollipop(&["search", "--max-n", "6", "--out", snap.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let o = lollipop(&["--wiring", snap.to_str().unwrap(), "run", "--n", "5"]);
    assert!(o.status.success());
    let t: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(t["steps"], 34);
}
