use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use eqcol::dimacs::serialize_dimacs;
use eqcol::Graph;
use serde_json::Value;

fn eqcol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eqcol"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write_graph(dir: &Path, name: &str, g: &Graph) -> String {
    let path = dir.join(name);
    std::fs::write(&path, serialize_dimacs(g)).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn solve_petersen() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_graph(dir.path(), "petersen.col", &Graph::petersen());
    let out = eqcol(&["solve", &p, "--d", "1", "--k", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["status"], "solved");
    let mut sizes: Vec<u64> = doc["class_sizes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_u64().unwrap())
        .collect();
    sizes.sort_unstable();
    assert_eq!(sizes, [3, 3, 4]);
}

#[test]
fn solve_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_graph(dir.path(), "g.col", &Graph::cycle(11));
    let c = dir.path().join("c.json");
    let out = eqcol(&[
        "solve",
        &p,
        "--d",
        "1",
        "--k",
        "2",
        "--out",
        c.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = eqcol(&["verify", &p, c.to_str().unwrap(), "--d", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["valid"], true);
    assert_eq!(doc["equitable"], true);
}

#[test]
fn verify_flags_a_cyclic_class() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_graph(dir.path(), "k5.col", &Graph::complete(5));
    let c = dir.path().join("c.json");
    std::fs::write(&c, r#"{"k": 2, "assignment": [0, 0, 0, 1, 1]}"#).unwrap();
    let out = eqcol(&["verify", &p, c.to_str().unwrap(), "--d", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let doc = json(&out);
    assert_eq!(doc["valid"], false);
    assert_eq!(doc["failing_classes"], serde_json::json!([0]));
}

#[test]
fn solve_reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_eqcol"))
        .args(["solve", "-", "--d", "2", "--k", "3"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(serialize_dimacs(&Graph::complete(5)).as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["status"], "solved");
}

#[test]
fn oracle_reports_infeasible() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_graph(dir.path(), "k5.col", &Graph::complete(5));
    let out = eqcol(&["oracle", &p, "--d", "1", "--k", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["feasible"], false);
}

#[test]
fn scan_small_graphs() {
    let out = eqcol(&["scan", "--conjecture", "evac", "--nmax", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["counterexamples"], serde_json::json!([]));
    assert!(doc["graphs_checked"].as_u64().unwrap() > 0);
}

#[test]
fn generate_is_seeded() {
    let args = ["generate", "--n", "30", "--delta", "4", "--seed", "7"];
    let (a, b) = (eqcol(&args), eqcol(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let g = eqcol::dimacs::parse_dimacs(std::str::from_utf8(&a.stdout).unwrap()).unwrap();
    assert_eq!(g.n(), 30);
    assert!(g.max_degree() <= 4);
}

#[test]
fn bench_emits_one_line_per_input() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_graph(dir.path(), "g.col", &Graph::cycle(9));
    let out = eqcol(&["bench", &p, &p, "--d", "1", "--k", "2", "--repeat", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 2);
    for line in text.lines() {
        serde_json::from_str::<Value>(line).unwrap();
    }
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(
        eqcol(&["solve", "/no/such/file.col"]).status.code(),
        Some(2)
    );
    assert_eq!(eqcol(&["solve", "--frobnicate"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.col");
    std::fs::write(&bad, "p edge 3 1\ne 1 9\n").unwrap();
    assert_eq!(
        eqcol(&["solve", bad.to_str().unwrap()]).status.code(),
        Some(2)
    );
    assert_eq!(eqcol(&[]).status.code(), Some(2));
}
