use std::process::{Command, Output};

use serde_json::Value;
use singular_spectra_cli::commands::AZeroRow;
use singular_spectra_cli::config::Format;
use singular_spectra_cli::table::{render_csv, render_table};
use singular_spectra_cli::{parse_config, CliError};

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_singular-spectra"))
        .args(args)
        .env_remove("SINGULAR_SPECTRA_PREC_BITS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

#[test]
fn spectrum_both_methods_csv() {
    let o = cli(&[
        "spectrum", "--nu", "0.5", "--xi", "10", "--kmax", "8", "--method", "both", "--format", "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let (header, rows) = csv_rows(&stdout(&o));
    let col = |name: &str| header.iter().position(|h| h == name).unwrap();
    assert_eq!(rows.len(), 18);
    for k in 0..=8 {
        let pair: Vec<_> = rows.iter().filter(|r| r[col("k")] == k.to_string()).collect();
        assert_eq!(pair.len(), 2);
        let lam: Vec<f64> = pair.iter().map(|r| r[col("lambda")].parse().unwrap()).collect();
        assert!((lam[0] - lam[1]).abs() <= 1e-6 * lam[0], "k = {k}: {lam:?}");
        let methods: Vec<&str> = pair.iter().map(|r| r[col("method")].as_str()).collect();
        assert_eq!(methods, ["kummer", "fd"]);
    }
    let first: f64 = rows[0][col("lambda")].parse().unwrap();
    assert!((first - 30.053_670_494_191_63).abs() < 1e-9);
}

#[test]
fn missing_xi_is_usage_error() {
    let o = cli(&["spectrum", "--nu", "0.5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--xi"));
    assert!(o.stdout.is_empty());
}

#[test]
fn invalid_parameters_exit_two() {
    assert_eq!(
        cli(&["eval", "kummer", "--a", "1", "--b", "-2", "--z", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        cli(&["spectrum", "--nu", "-1", "--xi", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        cli(&["spectrum", "--nu", "0", "--xi", "5", "--method", "fd"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        cli(&["verify", "--suite", "nonsense", "--xi", "1"]).status.code(),
        Some(2)
    );
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.conf");
    std::fs::write(
        &path,
        "# spectrum defaults\nnu = 0.5\nxi = 10\nkmax = 4\nformat = csv\n",
    )
    .unwrap();
    let p = path.to_str().unwrap();

    let o = cli(&["spectrum", "--config", p]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(csv_rows(&stdout(&o)).1.len(), 5);

    let o = cli(&["spectrum", "--config", p, "--kmax", "1"]);
    assert_eq!(csv_rows(&stdout(&o)).1.len(), 2);
}

#[test]
fn unknown_config_key_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.conf");
    std::fs::write(&path, "nu = 0.5\nzeta = 3\n").unwrap();
    let o = cli(&["spectrum", "--config", path.to_str().unwrap(), "--xi", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_bounds_json_passes() {
    let o = cli(&[
        "verify", "--suite", "bounds", "--nu", "0.5", "--xi", "20", "--kmax", "10", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["report"]["pass"], Value::Bool(true));
    for e in v["report"]["entries"].as_array().unwrap() {
        assert!(e["violations"].as_array().unwrap().is_empty());
    }
}

#[test]
fn verify_bounds_positional_suite_and_text() {
    let o = cli(&["verify", "bounds", "--nu", "0.5", "--xi", "20", "--kmax", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("bounds: PASS"));
}

#[test]
fn verify_reports_violations_with_exit_one() {
    // An envelope of zero cannot hold for any positive gap.
    let o = cli(&[
        "verify",
        "--suite",
        "azeros",
        "--nu",
        "0",
        "--xi",
        "16",
        "--envelope",
        "0",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let (header, rows) = csv_rows(&stdout(&o));
    assert_eq!(header, ["nu", "xi", "k", "bound", "lhs", "rhs"]);
    assert!(!rows.is_empty());
}

#[test]
fn azeros_csv_lie_below_minus_k() {
    let o = cli(&[
        "azeros", "--b", "1", "--xi", "40", "--count", "6", "--format", "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let (header, rows) = csv_rows(&stdout(&o));
    assert_eq!(header, ["k", "a", "kappa", "lambda", "residual", "excess"]);
    assert_eq!(rows.len(), 6);
    for (k, r) in rows.iter().enumerate() {
        let a: f64 = r[1].parse().unwrap();
        let excess: f64 = r[5].parse().unwrap();
        assert!(
            a < -(k as f64) || (a == -(k as f64) && excess > 0.0),
            "k = {k}: a = {a}"
        );
        assert!(excess > 0.0);
    }
}

#[test]
fn eval_kummer_text() {
    let o = cli(&["eval", "kummer", "--a", "-1", "--b", "2", "--z", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0.5\n");
}

#[test]
fn eval_other_functions() {
    let v = |args: &[&str]| -> f64 { stdout(&cli(args)).trim().parse().unwrap() };
    assert!((v(&["eval", "laguerre", "--n", "2", "--alpha", "0", "--r", "1"]) + 0.5).abs() < 1e-15);
    assert!((v(&["eval", "besselzero", "--nu", "0.5", "--k", "0"]) - std::f64::consts::PI).abs() < 1e-12);
    let w = v(&["eval", "whittaker", "--kappa", "0.5", "--mu", "0.25", "--z", "1"]);
    assert!(w.is_finite());
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("zeros.json");
    let o = cli(&[
        "azeros",
        "--b",
        "2",
        "--xi",
        "5",
        "--count",
        "3",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3);
}

#[test]
fn runs_are_deterministic() {
    let args = [
        "report",
        "--nu",
        "1",
        "--xi-grid",
        "4,8",
        "--kmax",
        "3",
        "--format",
        "csv",
    ];
    assert_eq!(cli(&args).stdout, cli(&args).stdout);
}

#[test]
fn env_precision_is_validated() {
    let o = Command::new(env!("CARGO_BIN_EXE_singular-spectra"))
        .args(["eval", "kummer", "--a", "1", "--b", "2", "--z", "1"])
        .env("SINGULAR_SPECTRA_PREC_BITS", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn help_is_not_an_error() {
    assert_eq!(cli(&["--help"]).status.code(), Some(0));
    assert!(matches!(
        parse_config(["singular-spectra", "--help"], None),
        Err(CliError::Help(_))
    ));
}

#[test]
fn empty_csv_keeps_header() {
    let rows: Vec<AZeroRow> = Vec::new();
    assert_eq!(render_csv(&rows).unwrap(), "k,a,kappa,lambda,residual,excess\n");
}

#[test]
fn json_round_trips_exactly() {
    let rows = vec![AZeroRow {
        k: 2,
        a: -2.0000000000764455,
        kappa: 2.5000000000764455,
        lambda: 400.0000000122313,
        residual: 3.053443144045327e-8,
        excess: 7.644531343459584e-11,
    }];
    let v: Value = serde_json::from_str(&render_table(&rows, Format::Json).unwrap()).unwrap();
    let r = &v[0];
    assert_eq!(r["a"].as_f64().unwrap(), rows[0].a);
    assert_eq!(r["excess"].as_f64().unwrap(), rows[0].excess);
    assert_eq!(r["k"].as_u64().unwrap(), 2);
}
