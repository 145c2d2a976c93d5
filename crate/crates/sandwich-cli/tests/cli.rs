//! Binary-level behavior: exit codes, JSON shape, and file round trips.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use sandwich_core::{scenarios, ProblemFile, XiPolicy};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sandwich"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn problem(name: &str) -> String {
    format!("{}/problems/{}", env!("CARGO_MANIFEST_DIR"), name)
}

fn tmp(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

#[test]
fn check_exit_reflects_extendability() {
    let out = run(&["check", &problem("example-4-1.json"), "--all"]);
    assert_eq!(out.status.code(), Some(1), "no extension exists on the plane pair");

    let out = run(&["check", &problem("example-4-2.json"), "--all"]);
    assert_eq!(out.status.code(), Some(0), "the restricted pair extends");

    let out = run(&["check", &problem("example-4-2-ambient.json")]);
    assert_eq!(out.status.code(), Some(1), "the ambient pair does not");
}

#[test]
fn extend_exit_reflects_construction() {
    let out = run(&["extend", &problem("example-4-2.json")]);
    assert_eq!(out.status.code(), Some(0));

    let out = run(&["extend", &problem("example-4-2-ambient.json")]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn input_errors_exit_two() {
    let out = run(&["check", "/no/such/file.json"]);
    assert_eq!(out.status.code(), Some(2));

    let bad = tmp("malformed.json");
    fs::write(&bad, "{\"dim\": }").unwrap();
    let out = run(&["check", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("problem file"));

    let out = run(&["demo", "no-such-demo"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["extend", &problem("example-4-2.json"), "--xi-policy", "center"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["classical", "convex", &problem("classical-norm.json")]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["suite", "--count", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn shipped_problems_match_the_built_in_constructors() {
    for (file, built) in [
        ("example-4-1.json", scenarios::example_4_1()),
        ("example-4-2.json", scenarios::example_4_2()),
        ("example-4-2-ambient.json", scenarios::example_4_2_ambient()),
        ("classical-norm.json", scenarios::classical_norm_problem(3)),
    ] {
        let text = fs::read_to_string(problem(file)).unwrap();
        let parsed = ProblemFile::from_json_str(&text).unwrap();
        assert_eq!(
            parsed.canonical_json(),
            built.canonical_json(),
            "{file} drifted from its constructor"
        );
    }
}

#[test]
fn extend_writes_a_verifiable_certificate_file() {
    let out_path = tmp("cert.json");
    let out = run(&[
        "extend",
        &problem("example-4-2.json"),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));

    let cert: Value = serde_json::from_str(&fs::read_to_string(&out_path).unwrap()).unwrap();
    assert!(cert["residual"].as_f64().unwrap() < 1e-8);
    for key in ["margin_S", "margin_P", "margin_reflected"] {
        assert!(cert[key].as_f64().unwrap() >= -1e-6, "{key} negative");
    }
    let l = cert["L"].as_array().unwrap();
    assert_eq!(l.len(), 4);
    assert!((l[0].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert!(l[3].as_f64().unwrap().abs() < 1e-9, "restricted to x4 = 0");
}

#[test]
fn xi_policy_moves_the_chosen_coefficient() {
    // A half-unit prescription under the euclidean ball leaves a wide window
    // for the second coefficient, so the three policies separate.
    let file = tmp("wide-window.json");
    fs::write(
        &file,
        r#"{
            "dim": 2,
            "S": {"kind": "norm_plus_linear", "linear_part": [0.0, 0.0],
                  "matrix_part": [[1.0, 0.0], [0.0, 1.0]]},
            "P": {"kind": "linear_minus_norm", "linear_part": [0.0, 0.0],
                  "matrix_part": [[1.0, 0.0], [0.0, 1.0]]},
            "M": {"basis": [[1.0, 0.0]]},
            "f0": [0.5]
        }"#,
    )
    .unwrap();

    let mut seen = Vec::new();
    for policy in [XiPolicy::Low, XiPolicy::Midpoint, XiPolicy::High] {
        let out = run(&[
            "extend",
            file.to_str().unwrap(),
            "--xi-policy",
            policy.as_str(),
            "--json",
        ]);
        assert_eq!(out.status.code(), Some(0), "policy {}", policy.as_str());
        let report = json_of(&out);
        let l = report["certificate"]["L"].as_array().unwrap();
        assert!((l[0].as_f64().unwrap() - 0.5).abs() < 1e-9);
        seen.push(l[1].as_f64().unwrap());
    }
    assert!(seen[0] < seen[1] && seen[1] < seen[2], "low < midpoint < high: {seen:?}");
    assert!(seen[1].abs() < 1e-9, "the midpoint of a symmetric window is zero");
}

#[test]
fn explicit_order_is_respected() {
    let out = run(&[
        "extend",
        &problem("example-4-2.json"),
        "--order",
        "0,0,1,0;0,1,0,0",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = json_of(&out);
    let trace = report["certificate"]["trace"].as_array().unwrap();
    let first: Vec<f64> = trace[0]["x0"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    assert_eq!(first, vec![0.0, 0.0, 1.0, 0.0]);
}

#[test]
fn json_reports_have_the_stable_shape() {
    let out = run(&["check", &problem("example-4-1.json"), "--all", "--json"]);
    let report = json_of(&out);
    for key in ["command", "digest", "conditions", "certificate", "facts", "oracle", "suite", "wall_time_ms"] {
        assert!(report.get(key).is_some(), "missing key {key}");
    }
    assert_eq!(report["digest"].as_str().unwrap().len(), 64);
    let ids: Vec<&str> = report["conditions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert_eq!(ids, ["4.2", "4.3", "4.1"]);
}

#[test]
fn suite_smoke_with_oracle() {
    let out = run(&["suite", "--count", "4", "--dims", "2", "--oracle", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json_of(&out);
    assert_eq!(report["suite"]["passes"].as_i64(), Some(4));
    assert_eq!(report["suite"]["failures"].as_i64(), Some(0));
    let rows = report["suite"]["rows"].as_array().unwrap();
    assert!(rows.iter().any(|r| r["oracle"]["agree"] == Value::Bool(true)));
}
