mod common;

use std::path::Path;
use std::process::{Command, Output};

use common::*;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_megaideal"))
        .args(args)
        .output()
        .unwrap()
}

fn path(name: &str) -> String {
    fixture_path(name).to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn validate_exit_codes() {
    let o = run(&["validate", &path("m5.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["valid"], true);

    let dir = tempfile::tempdir().unwrap();
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"name": "bad", "basis": ["a", "b", "c"], "brackets": [
            {"left": 0, "right": 1, "result": {"0": "1"}},
            {"left": 0, "right": 2, "result": {"2": "1"}},
            {"left": 1, "right": 2, "result": {"1": "1"}}]}"#,
    );
    let o = run(&["validate", &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["valid"], false);

    let garbage = write(dir.path(), "garbage.json", "{ not json");
    assert_eq!(run(&["validate", &garbage]).status.code(), Some(2));
    assert_eq!(run(&["validate", "/nonexistent/file.json"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn text_and_out() {
    let o = run(&["validate", "--text", &path("m5.json")]);
    assert_eq!(stdout(&o), "M5: dim 5, valid\n");
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = run(&["analyze", &path("m5.json"), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["exit_code"], 0);
    let text = run(&["analyze", "--text", &path("m5.json")]);
    assert!(stdout(&text).contains("a55 = 1"));
}

#[test]
fn analyze_reports() {
    let o = run(&["analyze", &path("m5.json")]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["tool"]["name"], "megaideal");
    assert_eq!(r["input_sha256"].as_str().unwrap().len(), 64);
    let spans = r["automorphisms"]["invariant_coordinate_subspaces"]
        .as_array()
        .unwrap()
        .len();
    assert_eq!(spans, 7);
    assert_eq!(r["automorphisms"]["free_parameters"].as_array().unwrap().len(), 6);

    let o = run(&["analyze", &path("sl2d.json")]);
    assert_eq!(o.status.code(), Some(3));
    let r = json(&o);
    assert!(!r["automorphisms"]["residual_equations"].as_array().unwrap().is_empty());
    assert_eq!(r["lattice"]["members"].as_array().unwrap().len(), 2);

    let again = run(&["analyze", &path("sl2d.json")]);
    assert_eq!(again.stdout, o.stdout);
}

#[test]
fn budget_exhaustion_is_incomplete() {
    let o = run(&["analyze", "--budget", "0", &path("m5.json")]);
    assert_eq!(o.status.code(), Some(3));
    let r = json(&o);
    assert!(r["issues"].as_array().unwrap().iter().any(|i| i["kind"] == "budget_exceeded"));
}

#[test]
fn extract_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m5.json");
    let o = run(&[
        "vf",
        "extract",
        &path("family.json"),
        "--fields",
        "Pt,Dt,F1,F2,G1",
        "--name",
        "M5",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&out).unwrap(), read_fixture("m5.json"));
    assert_eq!(run(&["validate", out.to_str().unwrap()]).status.code(), Some(0));

    let o = run(&["vf", "extract", &path("family.json"), "--fields", "D1,Dx,Dx2", "--name", "SL2D"]);
    assert_eq!(stdout(&o), read_fixture("sl2d.json"));

    let o = run(&["vf", "extract", &path("family.json"), "--fields", "Dx2,Gx"]);
    assert_eq!(o.status.code(), Some(3));
    let detail = json(&o);
    assert_eq!(detail["error"], "not_closed");

    let o = run(&["vf", "extract", &path("family.json"), "--fields", "Nope"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn vector_field_commands() {
    let o = run(&["vf", "bracket-table", &path("family.json"), "--fields", "Pt,F2", "--text"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "[F2, Pt] = {u: -2*t}\n");

    let o = run(&["vf", "pushforward", &path("family.json"), &path("shift_t.json"), "--fields", "Dt"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert!(r.to_string().contains("t - 3"));

    for map in ["shift_t.json", "scale_u.json", "flow_f2.json"] {
        let o = run(&[
            "vf",
            "check-map",
            &path("family.json"),
            &path(map),
            "--fields",
            "G1,F1,F2,Pt,Dt",
        ]);
        assert_eq!(o.status.code(), Some(0), "{map}");
        let r = json(&o);
        assert_eq!(r["pairs_checked"], 10);
        assert_eq!(r["passed"], true);
    }

    let dir = tempfile::tempdir().unwrap();
    let broken = write(
        dir.path(),
        "broken.json",
        r#"{"variables": ["t", "x", "u", "u_x", "f", "g"],
            "forward": {"t": "t + 1"}, "inverse": {"t": "t + 1"}}"#,
    );
    let o = run(&["vf", "check-map", &path("family.json"), &broken]);
    assert_eq!(o.status.code(), Some(2));
}
