//! Binary-level tests: exit codes, output formats, format parity, and the
//! documented worked examples.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ostrowski"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn suite_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("suites/default.jsonl")
}

#[test]
fn bound_classic_sharp_case_json() {
    let out = run(&[
        "bound", "--id", "1.1", "--M", "1", "--a", "0", "--b", "1", "--x", "0", "--f", "t",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["bound_id"], "1.1");
    assert_eq!(v["lhs"], 0.5);
    assert_eq!(v["rhs"], 0.5);
    assert_eq!(v["ratio"], 1.0);
    assert_eq!(v["seminorm"]["provenance"], "Analytic");
    assert_eq!(v["x"], 0.0);
    assert_eq!(v["a"], 0.0);
    assert_eq!(v["b"], 1.0);
}

#[test]
fn bound_failure_exits_one() {
    // halving the true constant flips the equality case to a failure
    let out = run(&[
        "bound", "--id", "1.1", "--M", "0.5", "--a", "0", "--b", "1", "--x", "0", "--f", "t",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_and_domain_errors_exit_two() {
    // clap-level usage error
    let out = run(&["bound", "--id", "1.1"]);
    assert_eq!(out.status.code(), Some(2));

    // unknown bound id
    let out = run(&["bound", "--id", "9.9", "--f", "t", "--a", "0", "--b", "1"]);
    assert_eq!(out.status.code(), Some(2));

    // expression syntax error
    let out = run(&[
        "bound", "--id", "1.1", "--M", "1", "--a", "0", "--b", "1", "--f", "ln(",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("byte 3"), "{err}");

    // domain error: log bound needs a positive interval
    let out = run(&[
        "bound", "--id", "1.3", "--norm", "1", "--a", "-1", "--b", "1", "--x", "0.5", "--f",
        "ln(t)",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn mean_prints_seventeen_significant_digits() {
    let out = run(&["mean", "--kind", "Lp", "--p", "2", "--x", "1", "--y", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let value: f64 = text.trim().parse().unwrap();
    assert!((value - (7.0f64 / 3.0).sqrt()).abs() < 1e-14);
    // mantissa carries 17 significant digits
    let mantissa = text.trim().split('e').next().unwrap();
    let digits = mantissa.chars().filter(|c| c.is_ascii_digit()).count();
    assert_eq!(digits, 17, "{text}");
}

#[test]
fn mean_rejects_bad_kind_and_missing_p() {
    assert_eq!(
        run(&["mean", "--kind", "Q", "--x", "1", "--y", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["mean", "--kind", "Lp", "--x", "1", "--y", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["mean", "--kind", "L", "--x", "-1", "--y", "2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn median_linear_weight() {
    let out = run(&["median", "--weight", "t", "--a", "0", "--b", "1"]);
    assert!(out.status.success());
    let value: f64 = stdout(&out).trim().parse().unwrap();
    assert!((value - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-10);
}

#[test]
fn sup_subcommand_mirrors_operations() {
    let out = run(&[
        "sup", "ratio", "--f", "t^2/2", "--g", "t", "--a", "1", "--b", "2",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let value = v["estimates"][0]["value"].as_f64().unwrap();
    assert!((value - 2.0).abs() < 1e-9);
    assert_eq!(v["estimates"][0]["provenance"], "Sampled");

    let out = run(&[
        "sup", "mp-split", "--f", "t^2/2", "--a", "0", "--b", "1", "--x", "0.5", "--p", "1",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!((v["estimates"][0]["value"].as_f64().unwrap() - 0.5).abs() < 1e-9);
    assert!((v["estimates"][1]["value"].as_f64().unwrap() - 1.0).abs() < 1e-9);

    // g' vanishing is a named precondition violation
    let out = run(&[
        "sup", "ratio", "--f", "t", "--g", "t^2", "--a", "-1", "--b", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_default_suite_all_pass() {
    let suite = suite_path();
    let out = run(&["verify", "--suite", suite.to_str().unwrap()]);
    assert!(out.status.success(), "default suite must pass");
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["summary"]["failed"], 0);
    assert_eq!(v["config"]["seed"], 42);
}

#[test]
fn verify_failing_suite_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.jsonl");
    std::fs::write(
        &path,
        r#"{"bound_id":"1.1","f":"t","a":0.0,"b":1.0,"x":0.0,"seminorm":{"analytic":0.5}}"#,
    )
    .unwrap();
    let out = run(&["verify", "--suite", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_report_files_json_and_csv_agree() {
    let dir = tempfile::tempdir().unwrap();
    let json_path = dir.path().join("out.json");
    let csv_path = dir.path().join("out.csv");
    let suite = suite_path();
    assert!(run(&[
        "verify",
        "--suite",
        suite.to_str().unwrap(),
        "--report",
        json_path.to_str().unwrap(),
    ])
    .status
    .success());
    assert!(run(&[
        "verify",
        "--suite",
        suite.to_str().unwrap(),
        "--report",
        csv_path.to_str().unwrap(),
    ])
    .status
    .success());

    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    let mut csv_reader = csv::Reader::from_path(&csv_path).unwrap();
    let rows: Vec<csv::StringRecord> = csv_reader.records().map(|r| r.unwrap()).collect();
    let outcomes = json["outcomes"].as_array().unwrap();
    let reports: Vec<&serde_json::Value> = outcomes
        .iter()
        .filter(|o| o.get("report").is_some())
        .map(|o| &o["report"])
        .collect();
    assert_eq!(rows.len(), reports.len());

    let headers = csv_reader.headers().unwrap().clone();
    let field = |row: &csv::StringRecord, name: &str| -> String {
        let idx = headers.iter().position(|h| h == name).unwrap();
        row[idx].to_string()
    };
    for (row, report) in rows.iter().zip(&reports) {
        assert_eq!(field(row, "bound_id"), report["bound_id"].as_str().unwrap());
        for key in ["lhs", "rhs", "slack", "ratio", "x", "a", "b"] {
            let csv_value: f64 = field(row, key).parse().unwrap();
            let json_value = report[key].as_f64().unwrap();
            assert_eq!(
                csv_value.to_bits(),
                json_value.to_bits(),
                "field {key} differs"
            );
        }
        let csv_sn: f64 = field(row, "seminorm_value").parse().unwrap();
        assert_eq!(
            csv_sn.to_bits(),
            report["seminorm"]["value"].as_f64().unwrap().to_bits()
        );
    }
}

#[test]
fn json_numbers_round_trip_without_value_change() {
    let out = run(&[
        "bound",
        "--id",
        "2.2",
        "--f",
        "sin(t)",
        "--g",
        "t",
        "--a",
        "0",
        "--b",
        "3.141592653589793",
        "--x",
        "1.0471975511965976",
        "--norm",
        "1",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    // re-serialize and re-parse: every numeric field must survive exactly
    let again: serde_json::Value =
        serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    for key in ["lhs", "rhs", "slack", "ratio", "x", "a", "b"] {
        assert_eq!(
            v[key].as_f64().unwrap().to_bits(),
            again[key].as_f64().unwrap().to_bits()
        );
    }
}

#[test]
fn sharpness_classic_reaches_ratio_one() {
    let out = run(&["sharpness", "--id", "1.1", "--n", "50", "--seed", "7"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let max_ratio = v["max_ratio"].as_f64().unwrap();
    assert!((max_ratio - 1.0).abs() < 1e-12, "{max_ratio}");
    assert_eq!(v["summary"]["failed"], 0);
}

#[test]
fn optimal_node_classic_is_midpoint() {
    let out = run(&[
        "optimal-node",
        "--id",
        "1.1",
        "--f",
        "t",
        "--norm",
        "1",
        "--a",
        "0",
        "--b",
        "1",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!((v["x_star"].as_f64().unwrap() - 0.5).abs() < 1e-6);
    assert!((v["rhs_star"].as_f64().unwrap() - 0.25).abs() < 1e-9);
}

#[test]
fn hyphen_leading_expressions_and_negative_numbers_parse() {
    let out = run(&[
        "bound", "--id", "2.13", "--f", "-cos(t)", "--norm", "1", "--a", "0.1", "--b", "1.4",
        "--x", "0.75",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let out = run(&["mean", "--kind", "E", "--x", "-3", "--y", "-1"]);
    assert!(out.status.success());
    let v: f64 = stdout(&out).trim().parse().unwrap();
    assert!((v - ((-1.0f64).exp() - (-3.0f64).exp()) / 2.0).abs() < 1e-12);
}

#[test]
fn env_seed_is_used_and_flag_overrides() {
    let suite = suite_path();
    let out = bin()
        .args(["verify", "--suite", suite.to_str().unwrap()])
        .env("OSTROWSKI_SEED", "123")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["config"]["seed"], 123);

    let out = bin()
        .args(["verify", "--suite", suite.to_str().unwrap(), "--seed", "9"])
        .env("OSTROWSKI_SEED", "123")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["config"]["seed"], 9);
}
