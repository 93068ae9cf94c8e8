use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_clustercol"))
        .args(args)
        .env_remove("CLUSTERED_COLOR_SEED")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn gen(args: &[&str]) -> String {
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    let out = run(&full, None);
    assert_eq!(out.status.code(), Some(0));
    String::from_utf8(out.stdout).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn color_pword_from_stdin() {
    let inst = gen(&["pword", "2"]);
    let out = run(&["color", "--t", "3"], Some(&inst));
    assert_eq!(out.status.code(), Some(0));
    let rep = json(&out);
    assert_eq!(rep["verdict"]["passed"], true);
    assert_eq!(rep["coloring"].as_array().unwrap().len(), 4);
}

#[test]
fn color_rejects_present_pword() {
    let inst = gen(&["pword", "3"]);
    let out = run(&["color", "--t", "3"], Some(&inst));
    assert_eq!(out.status.code(), Some(1));
    assert!(json(&out)["error"].as_str().unwrap().contains("P''_t"));
}

#[test]
fn gadget_has_no_proper_coloring() {
    let inst = gen(&["choos-gadget", "1"]);
    let v: Value = serde_json::from_str(&inst).unwrap();
    assert_eq!(v["n"], 20);
    let out = run(&["oracle", "--gamma-max", "1"], Some(&inst));
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["verdict"], "no coloring");
}

#[test]
fn audit_random_triangulation_does_not_crash() {
    let inst = gen(&["triangulation", "50", "--seed", "7"]);
    let out = run(&["audit", "--t", "5"], Some(&inst));
    let verdict = json(&out)["verdict"].as_str().unwrap().to_string();
    assert!(["pass", "hypotheses_violated"].contains(&verdict.as_str()), "{verdict}");
    assert_eq!(out.status.code(), Some(if verdict == "pass" { 0 } else { 1 }));
}

#[test]
fn verify_round_trip_and_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("oct.json");
    let report = dir.path().join("rep.json");
    std::fs::write(&inst, gen(&["octahedron"])).unwrap();
    let out = run(&["color", inst.to_str().unwrap(), "--out", report.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let out = run(&["verify", inst.to_str().unwrap(), report.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0));
    let mut rep: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    rep["coloring"][0] = Value::from(9);
    std::fs::write(&report, rep.to_string()).unwrap();
    let out = run(&["verify", inst.to_str().unwrap(), report.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["failures"][0]["kind"], "list_violation");
}

#[test]
fn detect_modes() {
    let oct = gen(&["octahedron"]);
    assert_eq!(json(&run(&["detect"], Some(&oct)))["min_free_t"], 5);
    assert_eq!(run(&["detect", "--pword", "5"], Some(&oct)).status.code(), Some(0));
    let found = run(&["detect", "--pword", "4"], Some(&oct));
    assert_eq!(found.status.code(), Some(1));
    assert_eq!(json(&found)["embedding"]["path"].as_array().unwrap().len(), 4);
    let sp = run(&["detect", "--sparsifiers", "--D", "6"], Some(&oct));
    assert!(!json(&sp)["sparsifiers"].as_array().unwrap().is_empty());
}

#[test]
fn generator_seeds() {
    let a = gen(&["triangulation", "20", "--seed", "3"]);
    assert_eq!(a, gen(&["triangulation", "20", "--seed", "3"]));
    assert_ne!(a, gen(&["triangulation", "20", "--seed", "4"]));
    let env = Command::new(env!("CARGO_BIN_EXE_clustercol"))
        .args(["gen", "triangulation", "20"])
        .env("CLUSTERED_COLOR_SEED", "3")
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(env.stdout).unwrap(), a);
}

#[test]
fn errors_exit_with_two() {
    assert_eq!(run(&["color"], Some("not json")).status.code(), Some(2));
    assert_eq!(run(&["gen", "dodecahedron"], None).status.code(), Some(2));
    assert_eq!(run(&["gen", "pword"], None).status.code(), Some(2));
}
