use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pmgraph")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn compute_reports_exact_values() {
    let out = run(&["compute", "--graph", &data("k4.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["phi"], "17/288");
    assert_eq!(v["lambda"], "25/224");
    assert_eq!(v["backend"], "rational");
}

#[test]
fn compute_with_bounds_as_csv() {
    let out = run(&["compute", "--graph", &data("banana.json"), "--bounds", "--format", "csv", "--decimals", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("banana,phi,0.037037"));
    assert!(text.contains("banana,phi_t,true,0.037037,0.037037,0.000000,true,proved,"));
}

#[test]
fn verify_passes_on_sample_graphs() {
    for name in ["k4.json", "banana.json", "polarized_tree.json"] {
        let out = run(&["verify", "--graph", &data(name)]);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", stdout(&out));
        let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(v["passed"], true);
    }
    let out = run(&["verify", "--graph", &data("k4.json"), "--backend", "float"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn family_matches_closed_forms() {
    let sixth = "1/6,1/6,1/6,1/6,1/6,1/6";
    let out = run(&["family", "--kind", "genus3-beta", "--lengths", sixth]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["report"]["phi"], "17/288");
    let out = run(&["family", "--kind", "necklace", "--vertices", "3", "--multiplicity", "2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("necklace,phi,1/12,1/12,true"));
}

#[test]
fn search_is_reproducible() {
    let args = ["search", "--genus", "2", "--samples", "60", "--seed", "7"];
    let a = run(&args);
    let b = run(&[&args[..], &["--threads", "3"]].concat());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).starts_with("graph_id,bound,applicable,lhs,rhs,margin,satisfied,basis,reason"));
}

#[test]
fn export_writes_matrices() {
    let path = std::env::temp_dir().join(format!("pmgraph-export-{}.csv", std::process::id()));
    let out = run(&[
        "export",
        "--graph",
        &data("k4.json"),
        "--matrix",
        "pinv",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(text.lines().next(), Some(",p,q,s,t"));
    assert_eq!(text.lines().nth(1), Some("p,1/32,-1/96,-1/96,-1/96"));
}

#[test]
fn input_errors_exit_with_two() {
    let dir = std::env::temp_dir();
    let bad = dir.join(format!("pmgraph-bad-{}.json", std::process::id()));
    std::fs::write(&bad, r#"{"vertices":[{"id":"p"},{"id":"r","q":2}],"edges":[{"u":"p","v":"r","len":"1"}]}"#)
        .unwrap();
    let out = run(&["compute", "--graph", bad.to_str().unwrap()]);
    std::fs::remove_file(&bad).ok();
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(err["message"].as_str().unwrap().contains("\"p\""), "{err}");

    let out = run(&["compute", "--graph", "/nonexistent/graph.json"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["search", "--genus", "3:2"]);
    assert_eq!(out.status.code(), Some(2));
}
