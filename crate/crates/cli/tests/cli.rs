use std::process::{Command, Output};

use serde_json::Value;

const SKEW: &str = "XZ, XT, YZ, YT";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_biliaison")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let o = run(&full);
    (o.status.code().unwrap(), serde_json::from_slice(&o.stdout).unwrap())
}

#[test]
fn rao_module_of_skew_lines() {
    let o = run(&["rao", "--ideal", SKEW]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("# biliaison rao | p = 32003 | order = grevlex | seed = none"));
    assert!(out.contains("degree 0: k"));
}

#[test]
fn sharp_evaluation() {
    let o = run(&["sharp", "--f", "{0:1, 2:1}", "--eval", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().nth(1), Some("2"));
    let (code, v) = json(&["sharp", "--f", "{0:1, 2:1}", "--eval", "1", "--eval", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["values"], serde_json::json!([[1, 1], [5, 2]]));
}

#[test]
fn scenario_agrees() {
    let (code, v) = json(&["scenario", "ex39"]);
    assert_eq!(code, 0);
    assert_eq!(v["ok"], Value::Bool(true));
    assert_eq!(v["result"]["all_agree"], Value::Bool(true));
    let checks = v["result"]["expected_vs_computed"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().any(|c| c["source"] == "published"));
    assert!(checks.iter().any(|c| c["source"] == "derived"));
}

#[test]
fn usage_errors_exit_two() {
    let o = run(&["rao", "--ideal", "X+"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert_eq!(run(&["rao", "--ideal", SKEW, "--window", "3..1"]).status.code(), Some(2));
    assert_eq!(run(&["scenario", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-verb"]).status.code(), Some(2));

    let (code, v) = json(&["rao", "--ideal", "X+"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "usage");
    assert!(v["error"]["message"].as_str().unwrap().contains("column 3"));
    assert_eq!(v["header"]["verb"], "rao");
}

#[test]
fn domain_errors_exit_one() {
    let o = run(&["rao", "--ideal", "X"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("domain"));

    let (code, v) = json(&["link", "--ideal", SKEW, "--forms", "X, Y"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "domain");
}

#[test]
fn seed_is_echoed() {
    let o = run(&["--seed", "7", "link", "--ideal", SKEW, "--forms", "XZ, YT"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().next().unwrap().ends_with("seed = 7"));
    let (_, v) = json(&["--seed", "7", "link", "--ideal", SKEW, "--forms", "XZ, YT"]);
    assert_eq!(v["header"]["seed"], 7);
}

#[test]
fn output_is_reproducible() {
    let args = ["--seed", "3", "scenario", "ex39"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["--json", "liaison-add", "--c1", "X, Y", "--c2", "Z, T", "--p1", "X", "--p2", "Z"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn file_input() {
    let path = std::env::temp_dir().join(format!("biliaison-cli-{}.txt", std::process::id()));
    std::fs::write(&path, SKEW).unwrap();
    let o = run(&["rao", "--file", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("degree 0: k"));
}

#[test]
fn cohomology_of_the_ring() {
    let (code, v) = json(&["cohomology", "--module", "R", "--window", "-2..3"]);
    assert_eq!(code, 0);
    let table = &v["result"];
    let rows = table["rows"].as_array().unwrap();
    // rows are h0..h3 over the window
    assert_eq!(rows[0], serde_json::json!([0, 0, 1, 4, 10, 20]));
    assert!(rows[1].as_array().unwrap().iter().all(|x| x == 0));
    assert!(rows[2].as_array().unwrap().iter().all(|x| x == 0));
}

#[test]
fn hilbert_series_of_skew_lines() {
    let o = run(&["hilbert", "--module", &format!("R/({SKEW})")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("2n + 2"), "{}", stdout(&o));
}
