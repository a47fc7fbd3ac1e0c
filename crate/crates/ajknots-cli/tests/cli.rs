use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use ajknots::annihilator::AJReport;
use serde_json::Value;

fn ajknots(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ajknots")).args(args).env_remove("AJKNOTS_CACHE_DIR").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden_dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden"))
}

#[test]
fn trefoil_second_color_row() {
    let o = ajknots(&["jones", "T(3,2)", "--n-max", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let row = out.lines().find(|l| l.starts_with("n = 2")).unwrap();
    assert!(row.contains("degrees (-18, -2) predicted (-18, -2) PASS"), "{row}");
    assert!(row.ends_with("J = t^-2 + t^-6 + t^-10 - t^-18"), "{row}");
}

#[test]
fn unknot_rows_are_quantum_integers() {
    let o = ajknots(&["--format", "json", "jones", "U", "--n-max", "3"]);
    let rows: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let values: Vec<&str> = rows.as_array().unwrap().iter().map(|r| r["value"].as_str().unwrap()).collect();
    assert_eq!(values, vec!["1", "t^2 + t^-2", "t^4 + 1 + t^-4"]);
}

#[test]
fn usage_and_parse_errors_exit_two() {
    assert_eq!(ajknots(&["jones", "T(2,3)"]).status.code(), Some(2));
    assert_eq!(ajknots(&["jones"]).status.code(), Some(2));
    assert_eq!(ajknots(&["verify", "T(3,2)"]).status.code(), Some(2));
    assert_eq!(ajknots(&["scan", "T(3,2)#T(3,2)"]).status.code(), Some(2));
    assert_eq!(
        ajknots(&["scan", "T(3,2)#T(3,2)", "--scan-degree", "1", "--m-window", "2:1"]).status.code(),
        Some(2)
    );
    assert_eq!(ajknots(&["verify", "T(3,2)#T(3,2)", "--n-max", "0"]).status.code(), Some(2));
}

#[test]
fn opposite_signs_are_out_of_scope() {
    let o = ajknots(&["verify", "T(3,2)#T(-5,2)"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("failure        classify:"));
}

#[test]
fn opposite_sign_apoly_has_note() {
    let o = ajknots(&["--format", "json", "apoly", "T(5,3)#T(-4,3)"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["cross_check"], Value::Bool(true));
    assert!(v["note"].as_str().unwrap().contains("no annihilator construction in scope"));
}

#[test]
fn verify_report_round_trips_through_json() {
    let o = ajknots(&["--format", "json", "verify", "T(3,2)#T(5,2)", "--n-max", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["ok"], Value::Bool(true));
    let report: AJReport = serde_json::from_value(v["report"].clone()).unwrap();
    assert!(report.matches);
    assert!(report.repeated_factors.is_empty());
    assert_eq!(serde_json::to_value(&report).unwrap(), v["report"]);
}

#[test]
fn golden_files_pass() {
    let o = ajknots(&["selftest", "--criteria", "1", "--golden", golden_dir().to_str().unwrap()]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    assert_eq!(out.lines().filter(|l| l.starts_with("golden ") && l.contains(" PASS")).count(), 8);
}

#[test]
fn corrupted_golden_file_is_named() {
    let dir = tempfile::tempdir().unwrap();
    let src = fs::read_to_string(golden_dir().join("apoly_trefoil.golden")).unwrap();
    fs::write(dir.path().join("apoly_trefoil.golden"), src.replace("M^6", "M^7")).unwrap();
    let o = ajknots(&["selftest", "--criteria", "1", "--golden", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("golden apoly_trefoil.golden FAIL"));
}

#[test]
fn jones_cache_is_written_and_reused() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_ajknots"))
            .args(["jones", "T(3,2)#T(5,2)", "--n-max", "4"])
            .env("AJKNOTS_CACHE_DIR", dir.path())
            .output()
            .unwrap()
    };
    let first = run();
    let cache = fs::read_to_string(dir.path().join("jones-cache.txt")).unwrap();
    assert!(cache.lines().any(|l| l == "T(3,2)#T(5,2);4"));
    let second = run();
    assert_eq!(first.stdout, second.stdout);

    // A damaged value is reported and recomputed.
    let damaged: String = cache
        .lines()
        .enumerate()
        .map(|(i, l)| if i == 1 { "t^^2\n".to_string() } else { format!("{l}\n") })
        .collect();
    fs::write(dir.path().join("jones-cache.txt"), damaged).unwrap();
    let third = run();
    assert_eq!(third.stdout, first.stdout);
    assert!(String::from_utf8(third.stderr).unwrap().contains("ignored"));
}
