//! End-to-end tests of the `nsw` binary: exit codes, file formats, and the
//! bench CSV.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_nsw"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn solve_i1_reports_product_30() {
    let out = run(&["solve", fixture("i1.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["nsw_product"], "30");
    assert_eq!(report["flags"].as_array().unwrap().len(), 0);
    assert!(report.get("factor").is_none());
}

#[test]
fn solve_i4_adds_rounding_fields() {
    let out = run(&["solve", fixture("i4.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["factor"], "3/4");
    assert_eq!(report["rounded_p"], "2");
}

#[test]
fn solve_malformed_json_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    fs::write(&path, "{not json").unwrap();
    let out = run(&["solve", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
}

#[test]
fn solve_writes_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["solve", fixture("i3.json").to_str().unwrap(), "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["nsw_product"], "2");
    assert_eq!(report["moves"].as_array().unwrap().len(), 1);
}

#[test]
fn oracle_i3_and_i4() {
    let out = run(&["oracle", fixture("i3.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["best_product"], "2");

    let out = run(&["oracle", fixture("i4.json").to_str().unwrap()]);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["best_product"], "9");
}

#[test]
fn oracle_refuses_over_budget() {
    // 5 agents, 12 goods: 5^12 > 10^7 default budget
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("big.json");
    fs::write(&path, r#"{"n": 5, "m": 12, "p": "2", "heavy": []}"#).unwrap();
    let out = run(&["oracle", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("budget"), "stderr: {err}");
}

#[test]
fn check_solver_report_passes_all_props() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    for name in ["i1.json", "i3.json", "i4.json", "chain.json"] {
        let instance = fixture(name);
        let out =
            run(&["solve", instance.to_str().unwrap(), "--out", report.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        let out = run(&["check", instance.to_str().unwrap(), report.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", stdout(&out));
    }
}

#[test]
fn check_all_to_one_fails_ef1() {
    let dir = tempfile::tempdir().unwrap();
    let instance = fixture("i1.json");
    let report = dir.path().join("report.json");
    let out = run(&["solve", instance.to_str().unwrap(), "--out", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    // rewrite the assignment to hand everything to agent 0
    let mut doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    doc["assignment"] = serde_json::json!([0, 0, 0, 0, 0]);
    doc["utilities"] = serde_json::json!(["13", "0"]);
    doc["profile"] = serde_json::json!(["0", "13"]);
    doc["nsw_product"] = serde_json::json!("0");
    fs::write(&report, serde_json::to_string(&doc).unwrap()).unwrap();
    let out = run(&[
        "check",
        instance.to_str().unwrap(),
        report.to_str().unwrap(),
        "--props",
        "ef1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let text = stdout(&out);
    assert!(text.contains("\"property\":\"ef1\""), "{text}");
    assert!(text.contains("witness"), "{text}");
}

#[test]
fn check_po_beyond_budget_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let instance = fixture("i1.json");
    let report = dir.path().join("report.json");
    run(&["solve", instance.to_str().unwrap(), "--out", report.to_str().unwrap()]);
    let out = run(&[
        "check",
        instance.to_str().unwrap(),
        report.to_str().unwrap(),
        "--props",
        "po",
        "--max-states",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn check_unknown_prop_exits_1() {
    let out = run(&[
        "check",
        fixture("i1.json").to_str().unwrap(),
        fixture("i1.json").to_str().unwrap(),
        "--props",
        "nonsense",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn gen_is_deterministic_and_validates() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let args = ["--n", "4", "--m", "6", "--p", "3", "--density", "0.5", "--seed", "42"];
    let out = run(&[&["gen", a.to_str().unwrap()], &args[..]].concat());
    assert_eq!(out.status.code(), Some(0));
    run(&[&["gen", b.to_str().unwrap()], &args[..]].concat());
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());

    let out = run(&[
        "gen", a.to_str().unwrap(), "--n", "2", "--m", "3", "--p", "2", "--density", "1.5",
        "--seed", "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn gen_density_extremes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    run(&["gen", path.to_str().unwrap(), "--n", "2", "--m", "3", "--p", "2", "--density", "0",
        "--seed", "5"]);
    let doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["heavy"].as_array().unwrap().len(), 0);
    run(&["gen", path.to_str().unwrap(), "--n", "2", "--m", "3", "--p", "2", "--density", "1",
        "--seed", "5"]);
    let doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["heavy"].as_array().unwrap().len(), 6);
}

fn strip_timing(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .map(|line| {
            line.split(',')
                .enumerate()
                .filter(|&(i, _)| i != 6)
                .map(|(_, f)| f.to_string())
                .collect()
        })
        .collect()
}

#[test]
fn bench_fixture_suite() {
    let dir = tempfile::tempdir().unwrap();
    let suite = dir.path().join("suite");
    fs::create_dir(&suite).unwrap();
    for name in ["i1.json", "i3.json", "i4.json", "chain.json"] {
        fs::copy(fixture(name), suite.join(name)).unwrap();
    }
    let csv1 = dir.path().join("one.csv");
    let out = run(&["bench", "--suite", suite.to_str().unwrap(), "--out", csv1.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&csv1).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5, "{text}");
    assert!(lines[0].starts_with("instance,n,m,p,nsw_product"));
    for line in &lines[1..] {
        assert!(line.contains(",true,"), "oracle should match on fixtures: {line}");
    }

    // concurrency changes timing only
    let csv4 = dir.path().join("four.csv");
    run(&["bench", "--suite", suite.to_str().unwrap(), "--out", csv4.to_str().unwrap(),
        "--jobs", "4"]);
    let mut one = strip_timing(&text);
    let mut four = strip_timing(&fs::read_to_string(&csv4).unwrap());
    one.sort();
    four.sort();
    assert_eq!(one, four);
}

#[test]
fn bench_empty_dir() {
    let dir = tempfile::tempdir().unwrap();
    let suite = dir.path().join("empty");
    fs::create_dir(&suite).unwrap();
    let out = run(&["bench", "--suite", suite.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 1, "header only");
}
