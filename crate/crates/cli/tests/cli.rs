//! End-to-end tests of the kzrat binary: output contracts, exit codes,
//! determinism, and JSON round-tripping.

use std::process::{Command, Output};

fn kzrat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kzrat"))
        .args(args)
        .env_remove("KZRAT_ORDER")
        .output()
        .expect("binary runs")
}

fn kzrat_env(args: &[&str], order: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kzrat"))
        .args(args)
        .env("KZRAT_ORDER", order)
        .output()
        .expect("binary runs")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 output")
}

fn parse_json(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout_str(out)).expect("valid json")
}

#[test]
fn invariant_json_pins_the_displayed_coefficients() {
    let out = kzrat(&[
        "invariant",
        "--p",
        "2",
        "--q",
        "3",
        "--order",
        "6",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v = parse_json(&out);
    assert_eq!(v["z1"]["x^2"], "-23/48");
    assert_eq!(v["z2"]["x*y"], "1/4");
    assert_eq!(v["closed"]["theta2"], "1/48");
    assert_eq!(v["strut"], "0");
    assert_eq!(v["alexander"]["t^-1"], "1");
    assert_eq!(v["alexander"]["1"], "-1");
}

#[test]
fn invariant_output_is_deterministic() {
    let args = [
        "invariant",
        "--p",
        "3",
        "--q",
        "4",
        "--order",
        "6",
        "--format",
        "json",
    ];
    let first = kzrat(&args);
    let second = kzrat(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn json_rendering_round_trips() {
    for args in [
        vec![
            "invariant",
            "--p",
            "2",
            "--q",
            "5",
            "--order",
            "4",
            "--format",
            "json",
        ],
        vec![
            "lmo", "--p", "2", "--q", "3", "--r", "7", "--format", "json",
        ],
        vec![
            "lift", "--p", "2", "--q", "3", "--r", "5", "--format", "json",
        ],
        vec!["alexander", "--p", "3", "--q", "5", "--format", "json"],
    ] {
        let out = kzrat(&args);
        assert!(out.status.success(), "{:?}", args);
        let text = stdout_str(&out);
        let v: serde_json::Value = serde_json::from_str(&text).expect("valid json");
        let mut rendered = serde_json::to_string_pretty(&v).unwrap();
        rendered.push('\n');
        assert_eq!(rendered, text, "{:?}", args);
    }
}

#[test]
fn lmo_text_reports_the_brieskorn_coefficients() {
    let out = kzrat(&["lmo", "--p", "2", "--q", "3", "--r", "5"]);
    assert!(out.status.success());
    let text = stdout_str(&out);
    assert!(text.contains("Theta2: 1/2"), "{}", text);
    assert!(text.contains("Theta3 (conjectural): -5/4"), "{}", text);
}

#[test]
fn lmo_evaluates_the_signature_term_when_given() {
    let out = kzrat(&["lmo", "--p", "2", "--q", "3", "--r", "5", "--sigma", "-1"]);
    assert!(out.status.success());
    assert!(stdout_str(&out).contains("Theta1: -1/16"));

    let symbolic = kzrat(&["lmo", "--p", "2", "--q", "3", "--r", "5"]);
    assert!(stdout_str(&symbolic).contains("sigma_r/16"));
}

#[test]
fn verify_accepts_the_unknot() {
    let out = kzrat(&["verify", "--p", "1", "--q", "5"]);
    assert!(out.status.success());
    let text = stdout_str(&out);
    assert!(text.contains("0 failures"), "{}", text);
    assert!(text.contains("unknot degeneration"), "{}", text);
}

#[test]
fn verify_covers_the_branched_checks_when_asked() {
    let out = kzrat(&["verify", "--p", "2", "--q", "3", "--r", "5", "--order", "4"]);
    assert!(out.status.success());
    let text = stdout_str(&out);
    assert!(text.contains("edge lift laws"), "{}", text);
    assert!(text.contains("0 failures"), "{}", text);
}

#[test]
fn invalid_parameters_exit_with_code_two() {
    for args in [
        vec!["verify", "--p", "2", "--q", "4"],
        vec!["invariant", "--p", "0", "--q", "3"],
        vec!["lmo", "--p", "2", "--q", "3", "--r", "3"],
    ] {
        let out = kzrat(&args);
        assert_eq!(out.status.code(), Some(2), "{:?}", args);
        let err = String::from_utf8(out.stderr.clone()).unwrap();
        assert_eq!(err.trim_end().lines().count(), 1, "{:?}: {}", args, err);
    }
}

#[test]
fn order_defaults_to_eight_and_env_overrides_it() {
    let default_run = kzrat(&["invariant", "--p", "2", "--q", "3", "--format", "json"]);
    let v = parse_json(&default_run);
    assert_eq!(v["order"], 8);
    assert!(v["z1"].get("x^8").is_some());

    let env_run = kzrat_env(
        &["invariant", "--p", "2", "--q", "3", "--format", "json"],
        "4",
    );
    let v = parse_json(&env_run);
    assert_eq!(v["order"], 4);
    assert!(v["z1"].get("x^6").is_none());

    let flag_wins = kzrat_env(
        &[
            "invariant",
            "--p",
            "2",
            "--q",
            "3",
            "--order",
            "6",
            "--format",
            "json",
        ],
        "4",
    );
    let v = parse_json(&flag_wins);
    assert_eq!(v["order"], 6);
}

#[test]
fn lift_reports_passing_scaling_checks() {
    let out = kzrat(&[
        "lift", "--p", "2", "--q", "3", "--r", "5", "--format", "json",
    ]);
    assert!(out.status.success());
    let v = parse_json(&out);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 3);
    assert!(checks.iter().all(|c| c["pass"] == true));
    let terms = v["z2_lifted"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 7);
    assert!(terms.iter().any(|t| t["coef"] == "15/8"));
}

#[test]
fn alexander_prints_the_symmetric_polynomial() {
    let out = kzrat(&["alexander", "--p", "2", "--q", "3"]);
    assert!(out.status.success());
    assert!(stdout_str(&out).contains("t^-1 - 1 + t"));
}

#[test]
fn output_flag_writes_the_same_bytes_to_a_file() {
    let path = std::env::temp_dir().join(format!("kzrat-out-{}.json", std::process::id()));
    let direct = kzrat(&["alexander", "--p", "3", "--q", "4", "--format", "json"]);
    let to_file = kzrat(&[
        "alexander",
        "--p",
        "3",
        "--q",
        "4",
        "--format",
        "json",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(to_file.status.success());
    assert!(to_file.stdout.is_empty());
    let written = std::fs::read(&path).expect("output file written");
    let _ = std::fs::remove_file(&path);
    assert_eq!(written, direct.stdout);
}
