//! End-to-end tests of the command-line interface: exit codes, output
//! formats, determinism, and worker-count independence.

use std::process::{Command, Output};

fn dpcount(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dpcount"))
        .args(args)
        .env_remove("DPCOUNT_WORKERS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// The ms column is wall time and exempt from the determinism contract.
fn strip_ms_csv(s: &str) -> String {
    s.lines()
        .map(|l| l.rsplit_once(',').map(|(head, _)| head.to_string()).unwrap_or(l.to_string()))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn count_both_methods_agree_and_exit_zero() {
    let out = dpcount(&["count", "--field", "q", "--boundary", "1", "--B", "1", "--method", "both"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("count=4"), "{text}");
}

#[test]
fn count_imaginary_quadratic() {
    let out =
        dpcount(&["count", "--field", "iq:-5", "--boundary", "2", "--B", "20", "--method", "both"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["count", "--field", "iq:-3", "--boundary", "1", "--B=-1"],
        vec!["count", "--field", "iq:4", "--B", "1"],
        vec!["count", "--field", "iq:-12", "--B", "1"],
        vec!["count", "--field", "zz", "--B", "1"],
        vec!["count", "--boundary", "3", "--B", "1"],
        vec!["verify", "nonsense"],
        vec!["frobnicate"],
    ] {
        let out = dpcount(&args);
        assert_eq!(out.status.code(), Some(2), "args {args:?}");
    }
}

#[test]
fn scan_csv_shape_and_determinism() {
    let args = [
        "scan", "--field", "q", "--boundary", "2", "--B", "5,10,20", "--method", "torsor",
        "--prime-bound", "2000",
    ];
    let a = dpcount(&args);
    assert_eq!(a.status.code(), Some(0));
    let text = stdout(&a);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "B,count,main_lo,main_hi,ratio_lo,ratio_hi,ms");
    assert_eq!(text.lines().count(), 4);
    let b = dpcount(&args);
    assert_eq!(strip_ms_csv(&text), strip_ms_csv(&stdout(&b)));
}

#[test]
fn scan_empty_bound_list_gives_header_only() {
    let out = dpcount(&["scan", "--field", "q", "--B", "", "--prime-bound", "500"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "B,count,main_lo,main_hi,ratio_lo,ratio_hi,ms\n");
}

#[test]
fn scan_json_schema() {
    let out = dpcount(&[
        "scan", "--field", "q", "--boundary", "1", "--B", "5,10", "--method", "direct",
        "--format", "json", "--prime-bound", "500",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    for row in rows {
        assert!(row["count"].is_u64());
        assert_eq!(row["main"].as_array().unwrap().len(), 2);
        assert_eq!(row["ratio"].as_array().unwrap().len(), 2);
        assert!(row["ms"].is_u64());
    }
}

#[test]
fn worker_count_independence() {
    let base = [
        "scan", "--field", "iq:-1", "--boundary", "1", "--B", "5,15", "--method", "both",
        "--prime-bound", "1000",
    ];
    let mut one = base.to_vec();
    one.extend(["--workers", "1"]);
    let mut four = base.to_vec();
    four.extend(["--workers", "4"]);
    let a = dpcount(&one);
    let b = dpcount(&four);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(strip_ms_csv(&stdout(&a)), strip_ms_csv(&stdout(&b)));
}

#[test]
fn workers_env_fallback() {
    let out = Command::new(env!("CARGO_BIN_EXE_dpcount"))
        .args(["count", "--field", "q", "--B", "10", "--method", "direct"])
        .env("DPCOUNT_WORKERS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn out_file_written_atomically() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rows.csv");
    let out = dpcount(&[
        "scan", "--field", "q", "--B", "5", "--method", "direct", "--prime-bound", "500",
        "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let content = std::fs::read_to_string(&path).unwrap();
    assert!(content.starts_with("B,count,"));
    assert!(!dir.path().join("rows.csv.tmp").exists());
}

#[test]
fn predict_reports_constant() {
    let out = dpcount(&["predict", "--field", "q", "--boundary", "2", "--prime-bound", "2000"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("b = 4"), "{text}");
    assert!(text.contains("alpha_sum = 11/72"), "{text}");
    let out = dpcount(&[
        "predict", "--field", "iq:-5", "--boundary", "1", "--format", "json", "--prime-bound",
        "2000",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["b"], 5);
    assert_eq!(doc["alpha_sum"], "1/72");
}

#[test]
fn constants_subcommand_prints_densities() {
    let out = dpcount(&["constants", "--field", "q", "--boundary", "1", "--prime-bound", "1000", "--depth", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("theta(2) = 5/16"), "{text}");
    assert!(text.contains("alpha_sum = 1/72"), "{text}");
}

#[test]
fn verify_suites_pass() {
    for suite in ["geometry", "example"] {
        let out = dpcount(&["verify", suite]);
        assert_eq!(out.status.code(), Some(0), "suite {suite}");
        assert!(!stdout(&out).contains("FAIL"));
    }
}
