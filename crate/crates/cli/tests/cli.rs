use std::process::{Command, Output};

use serde_json::Value;

fn badlocus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_badlocus")).args(args).output().expect("binary runs")
}

fn json_report(args: &[&str]) -> (Output, String, Value) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let mut full: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap().to_string();
    full.extend(["--json", &p]);
    let out = badlocus(&full);
    let text = std::fs::read_to_string(&path).unwrap_or_default();
    let value = serde_json::from_str(&text).unwrap_or(Value::Null);
    (out, text, value)
}

fn check<'a>(report: &'a Value, id: &str) -> &'a Value {
    report["checks"].as_array().unwrap().iter().find(|c| c["id"] == id).unwrap_or_else(|| panic!("no check {id}"))
}

#[test]
fn count_rank_two() {
    let (out, _, r) = json_report(&["count", "--p", "2", "--rank", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(r["command"], "count");
    for (id, v) in [("components", 3), ("abelian", 1), ("intersection", 1), ("through", 3)] {
        assert_eq!(check(&r, id)["computed"], v);
        assert_eq!(check(&r, id)["pass"], true);
    }
    assert!(r["runtime_ms"].is_u64());
}

#[test]
fn json_round_trips() {
    let (_, text, r) = json_report(&["intersections", "--p", "3", "--genus", "2"]);
    let again = serde_json::to_string_pretty(&r).unwrap() + "\n";
    assert_eq!(again, text);
    assert_eq!(check(&r, "euler-profile/degenerate")["computed"]["0"], 2);
    assert_eq!(check(&r, "euler-profile/nondegenerate")["computed"]["1"], 1);
}

#[test]
fn centralizer_sweeps() {
    for (p, level) in [("3", "3"), ("2", "4")] {
        let out = badlocus(&["verify-centralizers", "--p", p, "--level", level]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    }
    let out = badlocus(&["--parallel", "verify-centralizers", "--p", "3", "--level", "6"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn cap_is_reported() {
    let (out, _, r) = json_report(&["verify-centralizers", "--p", "7", "--level", "7", "--cap", "100"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(r["error"].as_str().unwrap().contains("100"));
    let out = Command::new(env!("CARGO_BIN_EXE_badlocus"))
        .args(["verify-centralizers", "--p", "3", "--level", "6"])
        .env("BADLOCUS_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn singularity_verdicts() {
    let (out, _, r) = json_report(&["singularity", "--group", "free:2", "--p", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(check(&r, "good-is-smooth")["computed"], "Smooth");
    assert_eq!(check(&r, "bad-is-singular#0")["computed"], "AlgebraicSingularity");
    let out = badlocus(&["singularity", "--group", "surface:2", "--p", "2"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn cohomology_and_modular_group() {
    for args in [
        vec!["cohomology", "--group", "free:3", "--p", "2"],
        vec!["cohomology", "--group", "psl2z", "--p", "2"],
        vec!["psl2z", "--p", "3"],
        vec!["psl2z", "--p", "7"],
        vec!["example-psl2"],
    ] {
        let out = badlocus(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
    }
    let (_, _, r) = json_report(&["psl2z", "--p", "3"]);
    assert_eq!(check(&r, "verdict")["computed"], "AlgebraicSingularity");
}

#[test]
fn usage_errors() {
    for args in [
        vec!["cohomology", "--group", "torus:1", "--p", "3"],
        vec!["singularity", "--group", "free:x", "--p", "3"],
        vec!["count", "--p", "6", "--rank", "2"],
        vec!["count", "--p", "2"],
    ] {
        assert_eq!(badlocus(&args).status.code(), Some(2), "{args:?}");
    }
}
