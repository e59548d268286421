use std::process::{Command, Output};

use serde_json::Value;

fn jones3(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jones3"))
        .args(args)
        .env_remove("JONES3_SEED")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn exact_mode_prints_figure_eight_polynomial() {
    let out = jones3(&["--braid", "s1 s2^-1 s1 s2^-1", "--mode", "exact", "--output", "text"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "A^8 - A^4 + 1 - A^-4 + A^-8");

    let out = jones3(&["--braid", "s1 s2^-1 s1 s2^-1", "--mode", "exact"]);
    assert_eq!(json(&out)["polynomial"], "A^8 - A^4 + 1 - A^-4 + A^-8");
}

#[test]
fn exact_mode_evaluates_when_angle_given() {
    let out = jones3(&["--braid", "s1 s2^-1 s1 s2^-1", "--mode", "exact", "--phi-frac", "1/3"]);
    let v = json(&out);
    assert!((v["result"]["re"].as_f64().unwrap() + 1.0).abs() < 1e-12);
    assert!(v["result"]["im"].as_f64().unwrap().abs() < 1e-12);
}

#[test]
fn classical_unlink_at_zero() {
    let out = jones3(&["--braid", "", "--mode", "classical", "--phi", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["re"].as_f64(), Some(4.0));
    assert_eq!(v["result"]["im"].as_f64(), Some(0.0));
    assert_eq!(v["L"], 0);
}

#[test]
fn quantum_output_is_reproducible() {
    let args = [
        "--braid", "s1 s2 s1 s2", "--mode", "quantum", "--phi", "1.0", "--eps1", "0.1", "--eps2", "0.1",
        "--seed", "42",
    ];
    let first = jones3(&args);
    assert_eq!(first.status.code(), Some(0));
    let v = json(&first);
    assert_eq!(v["n"], 185);
    assert_eq!(v["seed"], 42);
    assert_eq!(v["bound_mode"], "paper");
    assert!(v["trace_estimate"]["re_estimate"].is_number());
    assert_eq!(jones3(&args).stdout, first.stdout);
}

#[test]
fn seed_comes_from_environment_when_flag_absent() {
    let base = ["--braid", "s1 s2^-1", "--mode", "quantum", "--phi", "0.5", "--eps1", "0.1", "--eps2", "0.1"];
    let from_env = Command::new(env!("CARGO_BIN_EXE_jones3"))
        .args(base)
        .env("JONES3_SEED", "7")
        .output()
        .unwrap();
    let mut with_flag = base.to_vec();
    with_flag.extend(["--seed", "7"]);
    let explicit = jones3(&with_flag);
    assert_eq!(json(&from_env)["seed"], 7);
    assert_eq!(from_env.stdout, explicit.stdout);
}

#[test]
fn report_keys_are_stable() {
    let out = jones3(&["--braid", "1 -2 1", "--mode", "classical", "--phi", "0.7"]);
    let v = json(&out);
    for key in ["mode", "braid", "L", "writhe", "phi", "theta", "delta", "result"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["braid"], "s1 s2^-1 s1");
    assert_eq!(v["writhe"], 1);
}

#[test]
fn verify_mode_passes_on_random_word() {
    let out = jones3(&["--braid", "s1 s2^-1 s2^-1 s1 s2 s1^3 s2^-2", "--mode", "verify"]);
    assert_eq!(out.status.code(), Some(0));
    let dev = &json(&out)["oracle_deviation"];
    assert_eq!(dev["passed"], true);
    assert_eq!(dev["phis_checked"], 25);
    assert!(dev["state_sum_vs_exact"].is_number());
}

#[test]
fn braid_errors_report_token_and_position() {
    let out = jones3(&["--braid", "s1 s3", "--mode", "exact"]);
    assert_eq!(out.status.code(), Some(2));
    let err = &json(&out)["error"];
    assert_eq!(err["kind"], "unknown_generator");
    assert_eq!(err["token"], "s3");
    assert_eq!(err["position"], 3);
    assert!(!out.stderr.is_empty());
}

#[test]
fn angle_outside_region_is_a_domain_error() {
    let out = jones3(&["--braid", "s1", "--mode", "classical", "--phi", "3"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["error"]["exit_code"], 3);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["--mode", "exact"],
        vec!["--braid", "s1", "--mode", "quantum", "--eps1", "0.1", "--eps2", "0.1"],
        vec!["--braid", "s1", "--mode", "bogus"],
        vec!["--braid", "s1", "--mode", "classical", "--phi", "1", "--phi-frac", "1/3"],
    ] {
        let out = jones3(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert_eq!(json(&out)["error"]["kind"], "usage");
    }
}
