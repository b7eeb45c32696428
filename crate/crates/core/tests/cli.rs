use std::process::Command;

use frpbeam::cli::run;
use frpbeam::config::RunConfig;

fn call(args: &[&str]) -> (u8, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["frpbeam"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn check_published_section() {
    let (code, out, _) = call(&["check", "--case", "A", "--b", "0.2124", "--h", "0.5346", "--n", "3", "--bar", "#6"]);
    assert_eq!(code, 0);
    assert!(out.contains("feasible: true"));
    assert!(out.contains("total 53.25"));
}

#[test]
fn check_shallow_section_fails() {
    let (code, out, _) = call(&["check", "--case", "A", "--b", "0.2124", "--h", "0.45", "--n", "3", "--bar", "#6"]);
    assert_eq!(code, 1);
    assert!(out.contains("feasible: false"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(call(&["check", "--b", "0", "--h", "0.5", "--n", "3", "--bar", "#6"]).0, 2);
    assert_eq!(call(&["check", "--b", "0.3", "--h", "0.5", "--n", "3", "--bar", "#12"]).0, 2);
    assert_eq!(call(&["optimize", "--tmax", "0"]).0, 2);
    assert_eq!(call(&["optimize", "--seeds", "0"]).0, 2);
    assert_eq!(call(&["frobnicate"]).0, 2);
    assert_eq!(call(&["check", "--b", "x"]).0, 2);
    assert_eq!(call(&["--help"]).0, 0);
}

#[test]
fn optimize_writes_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.txt");
    let summary = dir.path().join("summary.txt");
    let trace = dir.path().join("trace.csv");
    let saved = dir.path().join("run.toml");
    let (code, out, err) = call(&[
        "optimize", "--case", "A", "--optimizer", "1", "--seeds", "2", "--tmax", "300",
        "--report", report.to_str().unwrap(),
        "--summary", summary.to_str().unwrap(),
        "--trace", trace.to_str().unwrap(),
        "--save-config", saved.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("seeds [1, 2]"));
    let best: f64 = std::fs::read_to_string(&summary)
        .unwrap()
        .lines()
        .find_map(|l| l.strip_prefix("best.cost.total = "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(best <= 53.2499 * 1.005, "{best}");
    assert_eq!(std::fs::read_to_string(&report).unwrap(), out);
    let csv = std::fs::read_to_string(&trace).unwrap();
    assert!(csv.starts_with("t,swarm,particle,x_1,x_2,value,feasible\n"));
    let cfg = RunConfig::from_path(&saved).unwrap();
    assert_eq!(cfg.run.seeds, vec![1, 2]);
    assert_eq!(RunConfig::parse(&cfg.to_toml().unwrap()).unwrap(), cfg);
}

#[test]
fn optimize_penalized_constant() {
    let (code, out, err) = call(&[
        "optimize", "--case", "B", "--optimizer", "2", "--hmax", "0.35", "--penalty", "constant:1e8", "--seeds", "4,5",
    ]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("optimizer2 on case B, h_max = 0.35 m"));
}

#[test]
fn oracle_with_heatmap() {
    let dir = tempfile::tempdir().unwrap();
    let heat = dir.path().join("heat.csv");
    let (code, out, err) = call(&["oracle", "--case", "A", "--hmax", "0.35", "--step-mm", "5", "--heatmap", heat.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("x #6") || out.contains("x #5") || out.contains("x #7"));
    let text = std::fs::read_to_string(&heat).unwrap();
    assert_eq!(text.lines().next(), Some("b,h,feasible,cost"));
    assert_eq!(text.lines().count(), 1 + 161 * 31);
}

#[test]
fn reproduce_one_table() {
    let (code, out, _) = call(&["reproduce", "--only", "table2", "--seeds", "2"]);
    assert_eq!(out.lines().count(), 1 + 6);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn binary_runs() {
    let exe = env!("CARGO_BIN_EXE_frpbeam");
    let status = Command::new(exe)
        .args(["check", "--case", "C", "--b", "0.2401", "--h", "0.4883", "--n", "3", "--bar", "7"])
        .output()
        .unwrap();
    assert!(status.status.success());
    let bad = Command::new(exe).args(["optimize", "--tmax", "0"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
