//! Exit-code and output contract of the `sedf` binary.
//!
//! Codes: 0 verified/found, 1 invalid/none-found, 2 usage, parse, or
//! capacity errors.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sedf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn valid_verification_exits_zero() {
    let out = run(&["verify", "--group", "5", "--sets", "1,4;2,3"]);
    assert_eq!(code(&out), 0);
    let cert: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(cert["valid"], serde_json::json!(true));
    assert_eq!(cert["params"]["lambda"], serde_json::json!(1));
}

#[test]
fn invalid_verification_exits_one() {
    let out = run(&["verify", "--group", "5", "--sets", "1,2;3,4"]);
    assert_eq!(code(&out), 1);
    let cert: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(cert["valid"], serde_json::json!(false));
    assert!(!cert["violations"].as_array().unwrap().is_empty());
}

#[test]
fn search_found_exits_zero_and_streams_certificates() {
    let out = run(&["search", "--group", "5", "-m", "2", "-k", "2"]);
    assert_eq!(code(&out), 0);
    let lines: Vec<&str> = std::str::from_utf8(&out.stdout)
        .unwrap()
        .lines()
        .collect();
    assert_eq!(lines.len(), 4);
    for line in lines {
        let cert: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(cert["valid"], serde_json::json!(true));
    }
}

#[test]
fn search_none_found_exits_one() {
    // (9, 3, 2, 1) satisfies the counting law but no family exists.
    let out = run(&["search", "--group", "9", "-m", "3", "-k", "2"]);
    assert_eq!(code(&out), 1);
    assert!(out.stdout.is_empty());
}

#[test]
fn search_infeasible_exits_one_with_reason() {
    let out = run(&["search", "--group", "7", "-m", "3", "-k", "1"]);
    assert_eq!(code(&out), 1);
    assert!(out.stdout.is_empty());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("no families"), "stderr: {err}");
}

#[test]
fn search_node_limit_warns_on_stderr() {
    let out = run(&["search", "--group", "5", "-m", "2", "-k", "2", "--limit", "1"]);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("node limit"), "stderr: {err}");
}

#[test]
fn non_monic_modulus_exits_two() {
    let out = run(&["field", "-p", "3", "-m", "2", "--modulus", "1,0,2"]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("monic"), "stderr: {err}");
}

#[test]
fn reducible_modulus_exits_two() {
    // x^2 + 1 = (x + 1)^2 over GF(2).
    let out = run(&["field", "-p", "2", "-m", "2", "--modulus", "1,0,1"]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("reducible"), "stderr: {err}");
}

#[test]
fn modulus_degree_mismatch_exits_two() {
    let out = run(&["field", "-p", "3", "-m", "5", "--modulus", "1,0,1"]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("degree"), "stderr: {err}");
}

#[test]
fn class_order_not_dividing_exits_two() {
    let out = run(&["cyclo", "-p", "13", "-e", "5"]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("does not divide"), "stderr: {err}");
}

#[test]
fn field_capacity_exits_two() {
    // 2^21 exceeds the table capacity of 2^20 elements.
    let out = run(&["field", "-p", "2", "-m", "21"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn scan_capacity_exits_two() {
    let out = run(&["scan", "--q-max", "2000000"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn bad_set_literal_exits_two() {
    let out = run(&["verify", "--group", "5", "--sets", "1,x;2,3"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn out_of_range_rank_exits_two() {
    let out = run(&["verify", "--group", "5", "--sets", "1,7;2,3"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn conflicting_verify_modes_exit_two() {
    let out = run(&[
        "verify",
        "--cyclotomic",
        "-p",
        "5",
        "-m",
        "1",
        "-e",
        "2",
        "--group",
        "5",
        "--sets",
        "1,4;2,3",
    ]);
    assert_eq!(code(&out), 2);
    let out = run(&["verify"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn missing_required_argument_exits_two() {
    let out = run(&["field"]);
    assert_eq!(code(&out), 2);
    let out = run(&["scan"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn out_file_matches_stdout() {
    let args = ["scan", "--q-max", "13"];
    let stdout = run(&args).stdout;
    let path = std::env::temp_dir().join(format!("sedf-cli-{}.tsv", std::process::id()));
    let path_str = path.to_str().unwrap();
    let out = run(&["scan", "--q-max", "13", "--out", path_str]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), stdout);
    std::fs::remove_file(&path).ok();
}

#[test]
fn scan_tsv_header_is_stable() {
    let out = run(&["scan", "--q-max", "5"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("q\tp\tm\tmodulus\te\tf\tis_sedf\tlambda")
    );
    assert_eq!(lines.next(), Some("3\t3\t1\t0,1\t2\t1\tfalse\t-"));
}

#[test]
fn recheck_missing_file_exits_two() {
    let out = run(&["verify", "--recheck", "/nonexistent/cert.json"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn recheck_tampered_certificate_exits_one() {
    let dir = std::env::temp_dir();
    let path = dir.join(format!("sedf-cli-tampered-{}.json", std::process::id()));
    let path_str = path.to_str().unwrap();
    let out = run(&[
        "verify", "--group", "5", "--sets", "1,4;2,3", "--out", path_str,
    ]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&path).unwrap();
    let tampered = text.replace("\"lambda\":1", "\"lambda\":7");
    assert_ne!(text, tampered);
    std::fs::write(&path, tampered).unwrap();
    let out = run(&["verify", "--recheck", path_str]);
    assert_eq!(code(&out), 1);
    std::fs::remove_file(&path).ok();
}

#[test]
fn field_json_has_certificate_witnesses() {
    let out = run(&["field", "-p", "3", "-m", "5", "--modulus", "1,2,1,1,1,1", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["q"], serde_json::json!(243));
    assert_eq!(report["theta"], serde_json::json!("(01000)"));
    assert_eq!(report["theta_order"], serde_json::json!(242));
    let witnesses = report["certificate"]["witnesses"].as_array().unwrap();
    assert_eq!(witnesses.len(), 2);
    for w in witnesses {
        assert_eq!(w["is_one"], serde_json::json!(false));
    }
}

#[test]
fn cyclo_json_reports_identities() {
    let out = run(&["cyclo", "-p", "13", "-e", "2", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["e"], serde_json::json!(2));
    assert_eq!(report["f"], serde_json::json!(6));
    assert_eq!(
        report["numbers"],
        serde_json::json!([[2, 3], [3, 3]])
    );
    assert_eq!(report["identities"]["violations"], serde_json::json!([]));
}
