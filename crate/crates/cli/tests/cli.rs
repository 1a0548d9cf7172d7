use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures").join(name)
}

fn ssprop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ssprop")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--json", "-"]);
    let out = ssprop(&full);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout));
    });
    (out.status.code().unwrap(), v)
}

fn path(name: &str) -> String {
    fixture(name).display().to_string()
}

#[test]
fn rank_of_full_star_fails_with_ones_witness() {
    let (code, v) = json(&["rank", &path("full_star.pat")]);
    assert_eq!(code, 1);
    let r = &v["result"];
    assert_eq!(r["kind"], "rank");
    assert_eq!(r["full_rank"], false);
    assert_eq!(r["witness"], serde_json::json!([["1", "1"], ["1", "1"]]));
    assert_eq!(r["refutation"]["found"], true);
    assert_eq!(v["schema_version"], "1");
}

#[test]
fn rank_of_lower_triangular_holds() {
    let out = ssprop(&["rank", &path("lower.pat")]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("full row rank: yes"), "{text}");
}

#[test]
fn column_rank_of_tall_column() {
    assert_eq!(ssprop(&["rank", "--column", &path("column.pat")]).status.code(), Some(0));
    assert_eq!(ssprop(&["rank", &path("column.pat")]).status.code(), Some(1));
}

#[test]
fn nine_vertex_network_holds() {
    let (code, v) = json(&["target", &path("nine_vertex.graph"), "--leaders", "1,2", "--targets", "1-7"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["verdict"], "Holds");
    assert_eq!(v["command"]["leaders"], serde_json::json!([1, 2]));
    assert_eq!(v["command"]["targets"], serde_json::json!([1, 2, 3, 4, 5, 6, 7]));
}

#[test]
fn product_of_column_and_row() {
    let (code, v) = json(&["mul", &path("column.pat"), &path("row.pat")]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["rows"], 2);
    assert_eq!(v["result"]["pattern"], serde_json::json!(["* *", "* *"]));
}

#[test]
fn malformed_input_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.pat");
    std::fs::write(&bad, "* x\n* *\n").unwrap();
    let out = ssprop(&["rank", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(!out.stderr.is_empty());
    assert_eq!(ssprop(&["rank", "/no/such/file.pat"]).status.code(), Some(3));
}

#[test]
fn usage_errors_exit_three_and_help_exits_zero() {
    assert_eq!(ssprop(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(ssprop(&["rank"]).status.code(), Some(3));
    assert_eq!(ssprop(&["--help"]).status.code(), Some(0));
    assert_eq!(ssprop(&["--version"]).status.code(), Some(0));
}

#[test]
fn shape_mismatch_exits_three() {
    assert_eq!(ssprop(&["add", &path("column.pat"), &path("row.pat")]).status.code(), Some(3));
}

#[test]
fn bad_budget_grid_exits_three() {
    let out = ssprop(&["rank", &path("full_star.pat"), "--budget-grid", "1,abc"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn reports_are_deterministic_apart_from_timing() {
    let args = ["oracle", "rank", &path("lower.pat"), "--seed", "7", "--trials", "50"];
    let (_, mut a) = json(&args);
    let (_, mut b) = json(&args);
    a["timing_ms"] = Value::Null;
    b["timing_ms"] = Value::Null;
    assert_eq!(a, b);
}

#[test]
fn json_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("report.json");
    let out = ssprop(&["ssc", &path("lower.pat"), &path("column.pat"), "--json", out_path.to_str().unwrap()]);
    assert!(!out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(v["command"]["name"], "ssc");
    assert_eq!(v["result"]["kind"], "analysis");
    assert_eq!(v["result"]["property"], "SSC");
    assert!(v["timing_ms"].as_f64().unwrap() >= 0.0);
}

#[test]
fn oracles_agree_with_decisions() {
    let (code, v) = json(&["oracle", "rank", &path("full_star.pat"), "--trials", "30"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["decision"], false);
    let (code, v) = json(&["oracle", "minkowski", &path("lower.pat"), &path("full_star.pat"), "--trials", "30"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["passed"], 30);
    let (code, v) = json(&["oracle", "pencil", &path("row.pat"), &path("row.pat"), "--trials", "10"]);
    assert_eq!(code, 0);
    assert!(v["result"]["witness"]["blocks"].is_array());
}

#[test]
fn iso_and_output_ctrl_run() {
    let (l, c, r) = (path("lower.pat"), path("column.pat"), path("row.pat"));
    let mismatched = ssprop(&["iso", &l, &c, &r, &path("full_star.pat")]);
    assert_eq!(mismatched.status.code(), Some(3));
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().join("d.pat");
    std::fs::write(&d, "*\n").unwrap();
    let d = d.to_str().unwrap();
    let (code, v) = json(&["iso", &l, &c, &r, d]);
    assert!(code <= 2);
    assert_eq!(v["result"]["property"], "ISO");
    let (code, v) = json(&["output-ctrl", &l, &c, &r, d]);
    assert!(code <= 2);
    assert_eq!(v["result"]["property"], "OutputControllability");
}

#[test]
fn descriptor_reports_regularity() {
    let (l, c) = (path("lower.pat"), path("column.pat"));
    let (code, v) = json(&["descriptor", &l, &l, &c, "--trials", "20"]);
    assert!(code <= 2);
    assert_eq!(v["result"]["regularity"]["trials"], 20);
    assert!(v["result"]["rank_conditions_hold"].is_boolean());
}
