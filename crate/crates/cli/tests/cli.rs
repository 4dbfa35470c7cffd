use std::process::{Command, Output};

use gcover_core::divisor::{canonical_class, DivisorClass};
use serde_json::Value;

fn gcover(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gcover")).args(args).env_remove("GCOVER_CUTOFF").output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn kodaira_verdicts() {
    let out = gcover(&["kodaira", "--genus", "13"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["verdict"], "general_type");
    assert_eq!(v["s_max"], "9/11");
    assert_eq!(v["gamma_max"], "1/14");
    assert_eq!(v["i"], 6);
    for g in ["11", "12"] {
        assert_eq!(json(&gcover(&["kodaira", "--genus", g]))["verdict"], "inconclusive");
    }
}

#[test]
fn connected_double_covers() {
    let v = json(&gcover(&["covers", "count", "--group", "mu2", "--genus", "2", "--image", "full"]));
    assert_eq!(v["count"], 15);
    assert_eq!(v["method"], "brute_force");
}

#[test]
fn canonical_class_reparses() {
    let out = gcover(&["canonical", "--genus", "4"]);
    let v = json(&out);
    assert_eq!(v["coeffs"]["lambda"], "13/1");
    let back: DivisorClass = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(back, canonical_class(4).unwrap());
}

#[test]
fn output_is_reproducible() {
    let args = ["boundary", "list", "--genus", "7"];
    let a = gcover(&args);
    let b = gcover(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = gcover(&["--threads", "1", "boundary", "list", "--genus", "7"]);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn computation_errors_are_structured() {
    let out = gcover(&["grr", "ch1", "--rep", "R", "--genus", "13", "--degree", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["code"], "UnsupportedDegree");
    assert!(v["message"].is_string());

    let out = gcover(&["group", "info", "--group", "mu0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(gcover(&["canonical"]).status.code(), Some(2));
    assert_eq!(gcover(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(gcover(&["--cutoff", "0", "canonical", "--genus", "4"]).status.code(), Some(2));
}

#[test]
fn cutoff_from_environment() {
    let run = |method: &str| {
        Command::new(env!("CARGO_BIN_EXE_gcover"))
            .args(["covers", "count", "--genus", "3", "--method", method])
            .env("GCOVER_CUTOFF", "1000")
            .output()
            .unwrap()
    };
    let brute = run("brute-force");
    assert_eq!(brute.status.code(), Some(1));
    assert_eq!(json(&brute)["code"], "SearchTooLarge");
    let auto = json(&run("auto"));
    assert_eq!(auto["count"], 6u64.pow(5) * 33 / 16);
    assert_ne!(auto["method"], "brute_force");
}

#[test]
fn koszul_and_grr_reports() {
    let v = json(&gcover(&["koszul", "class", "--i", "2"]));
    assert_eq!(v["class"]["coeffs"]["lambda"], "28/1");
    assert_eq!(v["normalized"]["coeffs"]["delta_0_c3"], "-2/1");
    let v = json(&gcover(&["grr", "ch1", "--group", "S3", "--rep", "R", "--genus", "13"]));
    assert_eq!(v["lambda_form"]["coeffs"]["delta_0_c2"], "-1/4");
    assert_eq!(v["lambda_form"]["coeffs"]["delta_0_c3"], "-2/3");
    assert_eq!(v["lambda_form"]["coeffs"]["lambda"], "2/1");
}

#[test]
fn elliptic_tail_branch_genus() {
    let v = json(&gcover(&["elliptic-tail", "branch"]));
    assert_eq!(v["degree"], 4);
    assert_eq!(v["total_ramification"], 6);
    assert_eq!(v["genus"], 0);
    let v = json(&gcover(&["elliptic-tail", "orbits", "--image", "N", "--order", "6"]));
    assert_eq!(v["orbit_sizes"], serde_json::json!([1, 3]));
}

#[test]
fn selftest_single_criterion() {
    let out = gcover(&["selftest", "--criterion", "10"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["passed"], true);
    let out = gcover(&["selftest", "--criterion", "99"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn table_output() {
    let out = gcover(&["--output", "table", "canonical", "--genus", "2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("coeffs.lambda") && l.ends_with("13/1")));
}
