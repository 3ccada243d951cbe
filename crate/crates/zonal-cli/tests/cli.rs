//! End-to-end tests of the `zonal` binary: the documented example
//! invocations, exit-code mapping, and byte-identical repeated runs.

use std::process::{Command, Output};

use serde_json::Value;

fn zonal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zonal"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn term_map(poly: &Value) -> Vec<(Vec<i64>, String, String)> {
    poly["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| {
            (
                t["exp"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .map(|e| e.as_i64().unwrap())
                    .collect(),
                t["num"].as_str().unwrap().to_string(),
                t["den"].as_str().unwrap().to_string(),
            )
        })
        .collect()
}

#[test]
fn coeffs_n2_l2_table() {
    let out = zonal(&["coeffs", "--n", "2", "--l", "2"]);
    let v = stdout_json(&out);
    let terms = term_map(&v);
    assert!(terms.contains(&(vec![2, 0], "3".into(), "8".into())));
    assert!(terms.contains(&(vec![1, 1], "1".into(), "4".into())));
    assert!(terms.contains(&(vec![0, 2], "3".into(), "8".into())));
    assert_eq!(terms.len(), 3);
}

#[test]
fn coeffs_n3_l1_table() {
    let out = zonal(&["coeffs", "--n", "3", "--l", "1"]);
    let v = stdout_json(&out);
    let terms = term_map(&v);
    assert!(terms.contains(&(vec![1, 0, 0], "1".into(), "3".into())));
    assert_eq!(terms.len(), 3);
}

#[test]
fn coeffs_invalid_n_is_usage_error() {
    let out = zonal(&["coeffs", "--n", "0", "--l", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn missing_subcommand_is_usage_error() {
    let out = zonal(&[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn mc_at_identity_is_exact() {
    let out = zonal(&[
        "mc",
        "--n",
        "3",
        "-p",
        "1",
        "-q",
        "0",
        "--x",
        "1,1,1",
        "--samples",
        "1000",
        "--seed",
        "7",
    ]);
    let v = stdout_json(&out);
    assert!((v["mean_re"].as_f64().unwrap() - 1.0).abs() <= 1e-12);
    assert!(v["mean_im"].as_f64().unwrap().abs() <= 1e-12);
    assert!(v["stderr"].as_f64().unwrap() <= 1e-12);
    assert_eq!(v["samples"].as_u64().unwrap(), 1000);
    assert_eq!(v["seed"].as_u64().unwrap(), 7);
}

#[test]
fn genfun_identity_point_value() {
    let out = zonal(&[
        "genfun", "--x", "1,1,1", "--t1", "0.5", "--t2", "0.5", "--tol", "1e-10",
    ]);
    let v = stdout_json(&out);
    assert!((v["value_re"].as_f64().unwrap() - 4.0).abs() <= 1e-9);
    assert!(v["value_im"].as_f64().unwrap().abs() <= 1e-12);
    assert!(v["nodes"].as_u64().unwrap() >= 15);
}

#[test]
fn genfun_n2_closed_form() {
    let out = zonal(&["genfun", "--x", "1,1", "--t1", "0.5"]);
    let v = stdout_json(&out);
    assert!((v["value_re"].as_f64().unwrap() - 2.0).abs() <= 1e-12);
    // t2 at N = 2 is a usage error
    let out = zonal(&["genfun", "--x", "1,1", "--t1", "0.5", "--t2", "0.1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn genfun_branch_failure_is_numerical_exit() {
    // (1 - 3t)(1 - t) < 0 at t = 0.5: principal branch cut
    let out = zonal(&["genfun", "--x", "3,1", "--t1", "0.5"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn series_contains_phi_10() {
    let out = zonal(&["series", "--pmax", "1", "--qmax", "1"]);
    let v = stdout_json(&out);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 4);
    let phi10 = rows
        .iter()
        .find(|r| r["p"] == 1 && r["q"] == 0)
        .expect("entry (1,0)");
    let terms = term_map(&phi10["polynomial"]);
    assert_eq!(terms, vec![(vec![1, 0], "1".into(), "3".into())]);
}

#[test]
fn eval_matches_legendre() {
    // Φ_2 at (e^{iθ}, e^{−iθ}) = P_2(cos θ); one angle, second filled in
    let out = zonal(&["eval", "--n", "2", "--l", "2", "--theta", "0.5"]);
    let v = stdout_json(&out);
    let u = 0.5f64.cos();
    let p2 = (3.0 * u * u - 1.0) / 2.0;
    assert!((v["value_re"].as_f64().unwrap() - p2).abs() <= 1e-14);
    assert!(v["value_im"].as_f64().unwrap().abs() <= 1e-14);
}

#[test]
fn theta_sum_validation() {
    let out = zonal(&["eval", "--n", "3", "-p", "1", "--theta", "0.3,0.3,0.3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn eigencheck_jack_and_paper_literal() {
    let out = zonal(&["eigencheck", "--n", "2", "--l", "1"]);
    let v = stdout_json(&out);
    assert_eq!(v["eigenvalue"]["num"], "1");
    assert_eq!(v["eigenvalue"]["den"], "1");

    let out = zonal(&[
        "eigencheck",
        "--n",
        "2",
        "--l",
        "1",
        "--convention",
        "paper-literal",
    ]);
    let v = stdout_json(&out);
    assert!(v.get("residual").is_some(), "expected residual, got {v}");

    let out = zonal(&["eigencheck", "-p", "1", "-q", "1"]);
    let v = stdout_json(&out);
    assert!(v.get("eigenvalue").is_some());
}

#[test]
fn repeated_runs_are_byte_identical() {
    let cases: Vec<Vec<&str>> = vec![
        vec![
            "mc",
            "--n",
            "3",
            "-p",
            "2",
            "-q",
            "1",
            "--theta",
            "0.4,0.1",
            "--samples",
            "50000",
            "--seed",
            "99",
        ],
        vec![
            "genfun", "--x", "2,0.5,1", "--t1", "0.1", "--t2", "0.2", "--tol", "1e-10",
        ],
        vec!["series", "--pmax", "2", "--qmax", "1"],
        vec!["coeffs", "--n", "4", "--l", "3"],
        vec!["eigencheck", "-p", "2", "-q", "1"],
    ];
    for args in cases {
        let a = zonal(&args);
        let b = zonal(&args);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "stdout differs for {args:?}");
    }
}

#[test]
fn verify_subset_runs_and_passes() {
    let out = zonal(&["verify", "--only", "1,2,5,9,11", "--seed", "1"]);
    let v = stdout_json(&out);
    assert_eq!(v["all_passed"], true);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 5);
    // one pass/fail line per criterion on stderr
    let err = String::from_utf8_lossy(&out.stderr);
    assert_eq!(err.lines().filter(|l| l.contains("PASS")).count(), 5);
}

#[test]
fn verify_reruns_are_byte_identical() {
    // the determinism criterion (12) plus a seeded-MC criterion slice,
    // run twice with the same seed: identical JSON bytes
    let args = ["verify", "--only", "2,5,9,12", "--seed", "5"];
    let a = zonal(&args);
    let b = zonal(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn pretty_format_uses_17_significant_digits() {
    let out = zonal(&[
        "genfun", "--x", "1,1,1", "--t1", "0.5", "--t2", "0.5", "--format", "pretty",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    // 17 significant digits = 16 digits after the point in scientific form
    assert!(
        text.lines()
            .any(|l| l.starts_with("value_re:") && l.contains('e') && l.contains('.')),
        "{text}"
    );
    let value_line = text.lines().find(|l| l.starts_with("value_re:")).unwrap();
    let mantissa = value_line
        .split(':')
        .nth(1)
        .unwrap()
        .trim()
        .split('e')
        .next()
        .unwrap();
    let digits = mantissa.split('.').nth(1).unwrap().len();
    assert_eq!(digits, 16, "{value_line}");
}

#[test]
fn csv_format_emits_rows() {
    let out = zonal(&[
        "mc",
        "--n",
        "2",
        "--l",
        "2",
        "--x",
        "2,0.5",
        "--samples",
        "10000",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.lines().any(|l| l.starts_with("mean_re,")));
    assert!(text.lines().any(|l| l.starts_with("stderr,")));
}
