use std::path::Path;
use std::process::Command;

use dhurwitz::cli::{run, CliError};
use dhurwitz::piecewise::PiecewiseError;
use serde_json::Value;

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn dh(args: &[&str]) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["dhurwitz"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap_or_else(|e| panic!("not JSON ({e}): {s}"))
}

fn compute(x: &str, extra: &[&str]) -> Output {
    let mut args = vec!["compute", "-g", "0", "-x", x];
    args.extend_from_slice(extra);
    dh(&args)
}

#[test]
fn compute_values() {
    let o = compute("7,1,-2,-3,-3", &["--no-cache"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v = json(&o.stdout);
    assert_eq!(v["value"], "294");
    assert_eq!(v["g"], 0);
    assert_eq!(v["r"], 3);
    assert_eq!(v["method"], "frobenius");

    let o = compute("1,-1", &["--no-cache"]);
    assert_eq!(json(&o.stdout)["value"], "1");

    let o = compute("2,-2", &["--no-cache", "--method", "both"]);
    assert_eq!(o.code, 0);
    assert_eq!(json(&o.stdout)["value"], "1/2");

    let o = compute("9,4,-5,-5,-3", &["--no-cache", "--method", "oracle"]);
    assert_eq!(json(&o.stdout)["value"], "540");
}

#[test]
fn negative_leading_entry_parses() {
    let o = dh(&["compute", "-g", "1", "-x", "-3,3", "--no-cache"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(json(&o.stdout)["value"], "2");
}

#[test]
fn invalid_input_exits_2() {
    let o = compute("1,1,-1", &["--no-cache"]);
    assert_eq!(o.code, 2);
    assert!(o.stdout.is_empty());
    assert_eq!(json(&o.stderr)["error"], "INVALID_INPUT");

    assert_eq!(compute("2,0,-2", &["--no-cache"]).code, 2);
    assert_eq!(dh(&["compute", "-x", "1,-1", "--method", "guess"]).code, 2);
    assert_eq!(dh(&["compute"]).code, 2);
}

#[test]
fn budget_exits_3() {
    let o = compute(
        "7,1,-2,-3,-3",
        &["--no-cache", "--method", "oracle", "--budget", "100"],
    );
    assert_eq!(o.code, 3);
    assert_eq!(json(&o.stderr)["error"], "BUDGET_EXCEEDED");
}

#[test]
fn not_polynomial_maps_to_4() {
    let e = CliError::Piecewise(PiecewiseError::NotPolynomial("x".into()));
    assert_eq!(e.code(), (4, "NOT_POLYNOMIAL"));
}

#[test]
fn fit_outputs() {
    let o = dh(&["fit", "-g", "0", "-x", "7,1,-2,-3,-3"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.contains("canonical:  6*x1^2\n"), "{}", o.stdout);
    assert!(o.stdout.contains("signature:  "));
    assert!(o.stdout.contains("validation:"));

    let o = dh(&["fit", "-g", "1", "-x", "1,-1", "--json"]);
    let v = json(&o.stdout);
    assert_eq!(v["degree"], 3);
    assert_eq!(v["canonical"], "1/12*x1^3 - 1/12*x1");
}

#[test]
fn fit_on_wall_exits_2() {
    let o = dh(&["fit", "-g", "0", "-x", "4,1,-1,-1,-3"]);
    assert_eq!(o.code, 2);
    let e = json(&o.stderr);
    assert_eq!(e["error"], "ON_WALL");
    assert!(e["message"].as_str().unwrap().contains("[2,3]"));
}

#[test]
fn fit_output_is_deterministic() {
    let a = dh(&["fit", "-g", "0", "-x", "3,1,-2,-2", "--json"]);
    let b = dh(&["fit", "-g", "0", "-x", "3,1,-2,-2", "--json"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn wallcross_example() {
    let o = dh(&[
        "wallcross",
        "-g",
        "0",
        "-x",
        "7,1,-2,-3,-3",
        "--wall",
        "2,5",
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(
        o.stdout.contains("WC display:   6*x1*x2 + 6*x1*x5\n"),
        "{}",
        o.stdout
    );
    assert!(o.stdout.contains("adjacent witness found: "));
    assert!(o.stdout.contains("match  (recorded)"));
    assert!(o.stderr.is_empty());

    let o = dh(&[
        "wallcross",
        "-g",
        "0",
        "-x",
        "7,1,-2,-3,-3",
        "--wall",
        "1,3,4",
        "--json",
    ]);
    assert_eq!(o.code, 0);
    assert!(o.stderr.contains("normalized to [2,5]"), "{}", o.stderr);
    let v = json(&o.stdout);
    assert_eq!(v["wall_crossing"]["wall"], serde_json::json!([2, 5]));
    assert_eq!(v["wall_crossing"]["display"], "6*x1*x2 + 6*x1*x5");
    assert_eq!(v["wall_crossing"]["divisible_by_wall_form"], true);
    let pf = &v["product_formula"];
    let matching: Vec<&Value> = pf["conventions"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["matches"] == true)
        .collect();
    assert_eq!(matching.len(), 1);
    assert_eq!(matching[0]["label"], pf["recorded"]);
}

#[test]
fn wallcross_without_neighbour_exits_5() {
    let o = dh(&[
        "wallcross",
        "-g",
        "0",
        "-x",
        "-1,2,-1",
        "--wall",
        "2",
        "--budget",
        "5000",
    ]);
    assert_eq!(o.code, 5, "{}", o.stderr);
    assert_eq!(json(&o.stderr)["error"], "ADJACENCY_NOT_FOUND");
}

#[test]
fn bad_wall_exits_2() {
    let o = dh(&["wallcross", "-x", "7,1,-2,-3,-3", "--wall", "1,2,3,4,5"]);
    assert_eq!(o.code, 2);
}

fn records(path: &Path) -> Vec<Value> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(json)
        .collect()
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    let c = cache.to_str().unwrap();

    let first = compute("7,1,-2,-3,-3", &["--cache", c]);
    assert_eq!(first.code, 0);
    let recs = records(&cache);
    assert_eq!(recs.len(), 1);
    assert_eq!(recs[0]["key"], "g0|7,1|-3,-3,-2");
    assert_eq!(recs[0]["value"], "294");
    assert_eq!(recs[0]["method"], "frobenius");
    assert!(recs[0]["timestamp"].is_u64());
    assert!(recs[0]["version"].is_string());

    // A relabeled vector hits the same record.
    let hit = compute("-3,1,-3,-2,7", &["--cache", c]);
    let v = json(&hit.stdout);
    assert_eq!(v["value"], "294");
    assert_eq!(v["stats"]["cached"], true);

    let verified = compute(
        "7,1,-2,-3,-3",
        &["--cache", c, "--verify", "--method", "oracle"],
    );
    assert_eq!(verified.code, 0, "{}", verified.stderr);
    let v = json(&verified.stdout);
    assert_eq!(v["value"], json(&first.stdout)["value"]);
    assert_eq!(v["stats"]["verified"], true);
    assert_eq!(records(&cache).len(), 1);
}

#[test]
fn verify_detects_a_corrupted_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    let c = cache.to_str().unwrap();
    assert_eq!(compute("4,-3,-1", &["--cache", c]).code, 0);
    let mut text = std::fs::read_to_string(&cache).unwrap();
    text.push_str(&text.replace("\"value\":\"1\"", "\"value\":\"2\""));
    std::fs::write(&cache, text).unwrap();

    let hit = compute("4,-3,-1", &["--cache", c]);
    assert_eq!(json(&hit.stdout)["value"], "2");
    let o = compute("4,-3,-1", &["--cache", c, "--verify"]);
    assert_eq!(o.code, 1);
    assert_eq!(json(&o.stderr)["error"], "VERIFY_MISMATCH");
}

#[test]
fn binary_reads_cache_path_from_env() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("env-cache.jsonl");
    let out = Command::new(env!("CARGO_BIN_EXE_dhurwitz"))
        .args(["compute", "-g", "0", "-x", "4,-3,-1"])
        .current_dir(dir.path())
        .env("HURWITZ_CACHE", &cache)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(
        json(std::str::from_utf8(&out.stdout).unwrap())["value"],
        "1"
    );
    assert_eq!(records(&cache).len(), 1);
    assert!(!dir.path().join("hurwitz-cache.jsonl").exists());

    let out = Command::new(env!("CARGO_BIN_EXE_dhurwitz"))
        .args(["compute", "-x", "1,1,-1", "--no-cache"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn selftest_passes_and_catches_mutation() {
    let o = dh(&["selftest", "--r-max", "10"]);
    assert_eq!(o.code, 0, "{}{}", o.stdout, o.stderr);
    assert!(
        o.stdout.lines().all(|l| l.starts_with("PASS")),
        "{}",
        o.stdout
    );

    let o = dh(&["selftest", "--r-max", "10", "--mutate-normalization"]);
    assert_ne!(o.code, 0);
    let report = json(o.stderr.lines().next().unwrap());
    assert!(!report["failed_checks"].as_array().unwrap().is_empty());

    assert_eq!(dh(&["selftest", "--r-max", "1"]).code, 2);
}

#[test]
fn help_goes_to_stdout() {
    let o = dh(&["--help"]);
    assert_eq!(o.code, 0);
    for cmd in ["compute", "fit", "wallcross", "selftest"] {
        assert!(o.stdout.contains(cmd));
    }
    assert!(!o.stdout.contains("mutate"));
}
