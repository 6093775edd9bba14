//! End-to-end tests of the command-line interface: exit codes, report
//! formats, determinism, and error surfacing.

use std::fs;
use std::process::Command;

use assert_cmd::prelude::*;
use predicates::prelude::*;

fn orthocone() -> Command {
    Command::cargo_bin("orthocone").expect("binary builds")
}

#[test]
fn gram_report_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first.csv");
    let second = dir.path().join("second.csv");
    for path in [&first, &second] {
        orthocone()
            .args([
                "gram", "--d", "2", "--beta", "0", "--gamma", "0", "--n-max", "4",
            ])
            .arg("--output")
            .arg(path)
            .assert()
            .success();
    }
    let a = fs::read(&first).unwrap();
    let b = fs::read(&second).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, b);
}

#[test]
fn seeded_commute_report_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first.csv");
    let second = dir.path().join("second.csv");
    for path in [&first, &second] {
        orthocone()
            .args(["commute", "--d", "2", "--n-max", "3", "--seed", "7"])
            .arg("--output")
            .arg(path)
            .assert()
            .success();
    }
    assert_eq!(fs::read(&first).unwrap(), fs::read(&second).unwrap());
}

#[test]
fn json_report_has_the_fixed_schema() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gram.json");
    orthocone()
        .args(["gram", "--n-max", "3", "--format", "json"])
        .arg("--output")
        .arg(&path)
        .assert()
        .success();
    let value: serde_json::Value =
        serde_json::from_slice(&fs::read(&path).unwrap()).expect("valid JSON");
    let rows = value.as_array().expect("array of rows");
    assert!(!rows.is_empty());
    for row in rows {
        let obj = row.as_object().expect("row object");
        for key in [
            "check_id",
            "n",
            "m",
            "ell",
            "params",
            "residual",
            "tolerance",
            "status",
        ] {
            assert!(obj.contains_key(key), "missing key {key}");
        }
        assert_eq!(obj["status"], "PASS");
    }
}

#[test]
fn csv_report_has_the_header_and_passes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("factor.csv");
    orthocone()
        .args(["factor", "--d", "2", "--s", "1", "--n-max", "4"])
        .arg("--output")
        .arg(&path)
        .assert()
        .success()
        .stdout(predicate::str::contains("0 failed"));
    let text = fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("check_id,n,m,ell,params,residual,tolerance,status")
    );
    assert!(lines.clone().count() >= 4);
    assert!(lines.all(|l| l.ends_with("PASS")));
}

#[test]
fn sobolev_eigencheck_reports_the_classification_pattern() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("eigencheck.csv");
    orthocone()
        .args(["eigencheck", "--d", "2", "--s", "2", "--n-max", "4"])
        .arg("--output")
        .arg(&path)
        .assert()
        .success();
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.contains("expect=eigen"));
    assert!(text.contains("expect=not-eigen"));
    assert!(text.lines().skip(1).all(|l| l.ends_with("PASS")));
}

#[test]
fn approx_table_rows_chain_tolerances() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("approx.csv");
    orthocone()
        .args(["approx-table", "--f", "exp-t", "--n", "4,8,12"])
        .arg("--output")
        .arg(&path)
        .assert()
        .success();
    let text = fs::read_to_string(&path).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 4);
    let residuals: Vec<f64> = rows
        .iter()
        .take(3)
        .map(|l| l.split(',').nth(5).unwrap().parse().unwrap())
        .collect();
    assert!(residuals[0] > residuals[1] && residuals[1] > residuals[2]);
    assert!(rows[3].starts_with("approx-consistency"));
    assert!(text.lines().skip(1).all(|l| l.ends_with("PASS")));
}

#[test]
fn degenerate_parameters_surface_the_library_error() {
    orthocone()
        .args(["eigenspace", "--d", "2", "--gamma", "-2", "--n-max", "2"])
        .assert()
        .failure()
        .stderr(predicate::str::contains("degenerate"));
}

#[test]
fn gamma_and_s_conflict() {
    orthocone()
        .args(["eigencheck", "--gamma", "0.5", "--s", "1"])
        .assert()
        .code(2);
}

#[test]
fn out_dir_env_var_sets_the_default_location() {
    let dir = tempfile::tempdir().unwrap();
    orthocone()
        .args(["gram", "--n-max", "2"])
        .env("ORTHOCONE_OUT_DIR", dir.path())
        .assert()
        .success()
        .stdout(predicate::str::contains("gram.csv"));
    assert!(dir.path().join("gram.csv").exists());
}
