use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn hdl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hdl")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write_extremal(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(format!("{name}.json"));
    let path = path.to_str().unwrap().to_owned();
    let mut full = vec!["extremal"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--degree", "128", "--out", &path]);
    let out = hdl(&full);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn every_extremal_map_analyzes_cleanly() {
    let dir = tempfile::tempdir().unwrap();
    let kinds: [(&str, &[&str]); 8] = [
        ("strip", &["strip"]),
        ("strip_at", &["strip", "--z0", "0.3:0.2", "--b", "-0.4"]),
        ("ud", &["ud", "--d", "2"]),
        ("uhat", &["uhat"]),
        ("fnu", &["fnu", "--omega", "0,0,0.5"]),
        ("fh", &["fh", "--h", "0,0,0.5", "--a", "1"]),
        ("circle", &["circle"]),
        ("duren", &["duren"]),
    ];
    for (name, args) in kinds {
        let path = write_extremal(dir.path(), name, args);
        let out = hdl(&["analyze", &path, "--samples", "1024"]);
        assert_eq!(code(&out), 0, "{name}:\n{}", stdout(&out));
    }
}

#[test]
fn analyze_json_layout_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_extremal(dir.path(), "fnu", &["fnu", "--omega", "0,0,0.5"]);
    let args = ["analyze", path.as_str(), "--json", "--samples", "1024"];
    let first = hdl(&args);
    let second = hdl(&args);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
    let report: Value = serde_json::from_slice(&first.stdout).unwrap();
    for key in ["L", "A", "d", "dirichlet", "Kstar", "checks"] {
        assert!(report.get(key).is_some(), "missing {key}");
    }
    let checks = report["checks"].as_array().unwrap();
    let iso = checks.iter().find(|c| c["name"] == "isoperimetric").unwrap();
    for key in ["lhs", "rhs", "slack", "pass"] {
        assert!(iso.get(key).is_some(), "missing {key}");
    }
    assert!(report.get("tangent_checks").is_none());
    assert!(stdout(&first).contains("e0"), "floats use 17-digit scientific notation");
}

#[test]
fn vector_reports_carry_tangent_checks() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_extremal(dir.path(), "circle", &["circle", "--a", "1,0,0", "--b", "0,1,0"]);
    let out = hdl(&["analyze", &path, "--json", "--samples", "1024"]);
    assert_eq!(code(&out), 0);
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    let tangent = report["tangent_checks"].as_array().unwrap();
    assert_eq!(tangent.len(), 9);
    assert!(tangent.iter().all(|t| t["point"].as_array().unwrap().len() == 2));
}

#[test]
fn analyze_reads_standard_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hdl"))
        .args(["analyze", "-", "--samples", "256"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write;
    child
        .stdin
        .take()
        .unwrap()
        .write_all(br#"{"kind":"planar","g":{"coeffs":[[0,0],[1,0]]},"h":{"coeffs":[[0,0]]}}"#)
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("PASS isoperimetric"));
}

#[test]
fn non_finite_results_fail_with_code_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("big.json");
    std::fs::write(&path, r#"{"coeffs": [[0, 0], [1e200, 0], [0, 1e200]]}"#).unwrap();
    let out = hdl(&["analyze", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn usage_and_input_errors_exit_with_one() {
    assert_eq!(code(&hdl(&["frobnicate"])), 1);
    assert_eq!(code(&hdl(&["bounds"])), 1);
    assert_eq!(code(&hdl(&["bounds", "--a", "1.5"])), 1);
    assert_eq!(code(&hdl(&["analyze", "/nonexistent/map.json"])), 1);
    assert_eq!(code(&hdl(&["fuzz", "--count", "0"])), 1);
    assert_eq!(code(&hdl(&["fuzz", "--target", "sphere"])), 1);
    assert_eq!(code(&hdl(&["extremal", "fnu", "--omega", "0,0.5"])), 1);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"coeffs\": 3}").unwrap();
    assert_eq!(code(&hdl(&["analyze", bad.to_str().unwrap()])), 1);
    assert_eq!(code(&hdl(&["--help"])), 0);
}

#[test]
fn fuzz_reports_are_reproducible() {
    let args = ["fuzz", "--seed", "7", "--count", "4", "--target", "vector3", "--json"];
    let first = hdl(&args);
    let second = hdl(&args);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
    let report: Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(report["cases_run"], 4);
    assert_eq!(report["cases_passed"], 4);
    assert!(report["worst"]["map_seed"].as_u64().unwrap() >= 7);
    assert!(report["histograms"]["isoperimetric"]["count"] == 4);
}

#[test]
fn fuzz_text_summary_and_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fuzz.json");
    let out = hdl(&["fuzz", "--count", "3", "--target", "disk", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("cases passed 3/3"));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["config"]["target"], "disk");
}

#[test]
fn bounds_json() {
    let out = hdl(&["bounds", "--a", "0", "--r", "0.5", "--json"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let x_plus = v["x_plus"].as_f64().unwrap();
    assert!((x_plus - 4.0 / std::f64::consts::PI * 0.5f64.atan()).abs() < 1e-15);
    assert!((v["gradient_origin"].as_f64().unwrap() - 4.0 / std::f64::consts::PI).abs() < 1e-15);
    let text = hdl(&["bounds", "--a", "-0.3"]);
    assert_eq!(code(&text), 0);
    assert!(stdout(&text).contains("X+(r,a)"));
}

#[test]
fn hyperbolic_distance() {
    let out = hdl(&["hyperbolic", "--u1", "0", "--u2", "0.5", "--json"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let d = v["distance"].as_f64().unwrap();
    assert!((d - (1.0 + 2f64.sqrt()).ln()).abs() < 1e-14);
    assert!((d - v["quadrature"].as_f64().unwrap()).abs() < 1e-10);
    assert_eq!(code(&hdl(&["hyperbolic", "--u1", "0", "--u2", "1"])), 1);
}

#[test]
fn envelope_csv_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("env.csv");
    let out = hdl(&["envelope-csv", "--a", "-0.2", "--steps", "25", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let mut reader = csv::Reader::from_path(&path).unwrap();
    assert_eq!(reader.headers().unwrap(), vec!["r", "x_minus", "x_plus", "x_plus_deriv"]);
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 25);
    let a: f64 = rows[0][1].parse().unwrap();
    assert!((a + 0.2).abs() < 1e-15);
}

#[test]
fn extremal_to_stdout_round_trips() {
    let out = hdl(&["extremal", "duren", "--degree", "8"]);
    assert_eq!(code(&out), 0);
    let map = hdl::json::parse_map(&stdout(&out)).unwrap();
    let f = map.to_planar().unwrap();
    assert_eq!(f.g.degree(), 8);
}
