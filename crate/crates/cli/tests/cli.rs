//! End-to-end tests of the binary: exit-code contract, determinism of the
//! emitted payloads, and file outputs.

use std::process::{Command, Output};

fn disconn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_disconn"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn classify_builtin_model() {
    let out = disconn(&["classify", "--model", "o2"]);
    assert_eq!(out.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    // Weights 0..5 with inversion: two labels at 0, one at each of 1..5.
    assert_eq!(parsed["labels"].as_array().unwrap().len(), 7);
}

#[test]
fn classify_fixture_model_from_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("model.json");
    std::fs::write(
        &path,
        r#"{
            "name": "s3-from-file",
            "field": {"kind": "finite", "p": 7, "k": 1},
            "fixture": "s3_a3"
        }"#,
    )
    .unwrap();
    let out = disconn(&["classify", "--model", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed["kind"], "finite-model");
    assert_eq!(parsed["labels"].as_array().unwrap().len(), 3);
}

#[test]
fn corrupted_model_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{ not json").unwrap();
    let out = disconn(&["classify", "--model", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(parsed["error"].is_string());
}

#[test]
fn poset_emits_dot_and_files() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("results");
    let out = disconn(&[
        "poset",
        "--model",
        "a1xa1_swap",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("digraph"));
    for file in ["poset.dot", "poset_report.json", "characters.csv"] {
        assert!(out_dir.join(file).exists(), "{file} missing");
    }
    // DOT output is stable under re-runs.
    let again = disconn(&["poset", "--model", "a1xa1_swap"]);
    assert_eq!(stdout(&out), stdout(&again));
}

#[test]
fn decompose_contract() {
    let out = disconn(&["decompose", "--model", "o2", "--prime", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("standard_vs_simple"));
    // p dividing the component order is an unsupported parameter.
    let out = disconn(&["decompose", "--model", "o2", "--prime", "2"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_exit_codes_and_determinism() {
    let run = |seed: &str| disconn(&["verify", "--suite", "all", "--seed", seed]);
    let a = run("0");
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    let b = run("0");
    assert_eq!(
        stdout(&a),
        stdout(&b),
        "byte-identical payloads at a fixed seed"
    );
    let c = run("1");
    assert_eq!(c.status.code(), Some(0));
    let verdicts = |s: &str| -> Vec<(String, bool)> {
        let v: serde_json::Value = serde_json::from_str(s).unwrap();
        v["checks"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| {
                (
                    c["name"].as_str().unwrap().to_string(),
                    c["passed"].as_bool().unwrap(),
                )
            })
            .collect()
    };
    assert_eq!(verdicts(&stdout(&a)), verdicts(&stdout(&c)));
}

#[test]
fn unknown_suite_exits_2() {
    let out = disconn(&["verify", "--suite", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unsupported_field_exits_3() {
    let out = disconn(&["classify", "--model", "o2", "--field", "cyclotomic(128)"]);
    assert_eq!(out.status.code(), Some(3));
}
