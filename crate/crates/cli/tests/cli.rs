//! End-to-end tests of the `elltrilog` binary: printed values, report
//! streams, relation search and the exit-code contract.

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_elltrilog"))
        .args(args)
        .env_remove("ELLTRILOG_NEWFORM_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn empty_dir(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("elltrilog-cli-{name}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    std::fs::create_dir_all(&d).expect("create temp dir");
    d
}

#[test]
fn eval_zagier_l3_at_one_is_zeta3() {
    let o = run(&["eval", "zagier_L", "3", "1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("1.2020569031595942853997381615"), "{}", stdout(&o));
}

#[test]
fn eval_n_mahler_trilog_50_digits() {
    let o = run(&["eval", "n_mahler", "2", "128", "--route", "trilog", "--digits", "50", "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    let value = v["value"].as_str().unwrap();
    assert!(value.starts_with("4.781208180809975515828454053"), "{value}");
    assert_eq!(value.chars().filter(char::is_ascii_digit).count(), 50);
    assert_eq!(v["route_metadata"]["route"], "trilog");
}

#[test]
fn eval_d_value_json_is_decimal_string() {
    let o = run(&["eval", "d_value", "4", "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert!(v["value"].as_str().unwrap().starts_with("5.8312180806163756027676891"));
}

#[test]
fn eval_point_functions_by_name_and_coordinates() {
    let a = run(&["eval", "ell_L31", "P+Q", "--s", "-8"]);
    let b = run(&["eval", "ell_L31", "0,1/2", "--tau", "0,1"]);
    assert_eq!(code(&a), 0);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn eval_usage_errors_exit_2() {
    assert_eq!(code(&run(&["eval", "no_such_function"])), 2);
    assert_eq!(code(&run(&["eval", "zagier_L", "3"])), 2);
    assert_eq!(code(&run(&["eval", "zagier_L", "x", "1"])), 2);
    assert_eq!(code(&run(&["eval", "d_value", "4", "--digits", "10"])), 2);
    assert_eq!(code(&run(&["eval", "ell_L31", "P"])), 2);
    assert_eq!(code(&run(&["eval", "n_mahler", "2", "128", "--route", "sideways"])), 2);
}

#[test]
fn verify_two_torsion_relation_at_50_digits() {
    let o = run(&["verify", "linrel.2tors", "--digits", "50", "--json"]);
    assert_eq!(code(&o), 0);
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 5);
    for l in &lines {
        let v: serde_json::Value = serde_json::from_str(l).unwrap();
        assert_eq!(v["status"], "PASSED", "{l}");
        assert!(v["lhs"].is_string());
    }
}

#[test]
fn verify_theorem_case_with_explicit_s() {
    let o = run(&["verify", "thm1.G.neg", "--s", "-1024"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("PASS    thm1.G.neg[s=-1024]"), "{}", stdout(&o));
}

#[test]
fn verify_tables_without_files_reports_skips() {
    let dir = empty_dir("tables");
    let o = run(&["verify", "tables", "--json", "--newform-dir", dir.to_str().unwrap()]);
    let out = stdout(&o);
    let reports: Vec<serde_json::Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let skipped: Vec<_> = reports.iter().filter(|r| r["status"] == "SKIPPED").collect();
    assert!(!skipped.is_empty());
    for r in &skipped {
        assert!(r["lhs"].is_null());
        assert!(r["route_metadata"]["skipped"].as_str().unwrap().contains("level"));
    }
    // Builtin-level cells run; the printed formulas with known misprints
    // fail, so the run exits 1.
    assert!(reports.iter().any(|r| r["status"] == "PASSED"));
    let failed: Vec<&str> =
        reports.iter().filter(|r| r["status"] == "FAILED").map(|r| r["identity_id"].as_str().unwrap()).collect();
    for f in &failed {
        assert!(out.contains("erratum_form"), "failure without erratum: {f}");
    }
    assert_eq!(code(&o), if failed.is_empty() { 0 } else { 1 });
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn verify_reports_are_sorted_by_id() {
    let o = run(&["verify", "core", "--json"]);
    assert_eq!(code(&o), 0);
    let ids: Vec<String> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["identity_id"].as_str().unwrap().to_string())
        .collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
}

#[test]
fn verify_failure_exits_1() {
    let o = run(&["verify", "prop4.ii", "--s", "1458"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("FAIL"));
}

#[test]
fn verify_exit_codes_for_bad_input() {
    assert_eq!(code(&run(&["verify", "no.such.id"])), 2);
    assert_eq!(code(&run(&["verify", "tables", "--newform-dir", "/nonexistent/elltrilog"])), 3);
}

#[test]
fn search_golden_ratio() {
    let o = run(&["search", "1", "phi", "2.6180339887498948482045868343656381177203091798057628621", "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["relation"]["coefficients"], serde_json::json!([1, 1, -1]));
}

#[test]
fn search_negative_control() {
    let o = run(&["search", "1", "pi", "e", "--norm-bound", "100"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("no relation"));
}

#[test]
fn search_rediscovers_four_torsion_relation() {
    let o = run(&["search", "L31@S", "L31@R+S", "L31@2S", "--tau", "0,1.3", "--norm-bound", "32", "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["relation"]["coefficients"], serde_json::json!([8, 8, -1]));
}

#[test]
fn search_precision_too_low_is_configuration_error() {
    let o = run(&["search", "1", "pi", "e", "log2", "zeta3", "--digits", "15", "--norm-bound", "1000000"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn identical_commands_give_identical_bytes() {
    let args = ["verify", "linear", "--json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}
