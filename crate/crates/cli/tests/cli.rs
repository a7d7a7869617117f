use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_landslide"))
        .args(args)
        .arg("--out")
        .arg(dir)
        .output()
        .expect("binary runs")
}

fn report(dir: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join("report.json")).unwrap()).unwrap()
}

#[test]
fn flow_passes_and_writes_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["flow", "--samples", "50"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let r = report(dir.path());
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["experiment"], "flow");
    assert_eq!(r["pass"], true);
    assert_eq!(r["config"]["samples"], 50);
    assert!(dir.path().join("flow_samples.csv").exists());
    assert!(dir.path().join("timing.json").exists());
    let csv = std::fs::read_to_string(dir.path().join("flow_samples.csv")).unwrap();
    assert_eq!(csv.lines().count(), 51);
}

#[test]
fn single_sample_runs() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(dir.path(), &["flow", "--samples", "1"]).status.code(), Some(0));
}

#[test]
fn same_seed_same_report() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let c = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        run(d.path(), &["flow", "--seed", "42", "--samples", "40"]);
    }
    run(c.path(), &["flow", "--seed", "43", "--samples", "40"]);
    let read = |d: &tempfile::TempDir| std::fs::read(d.path().join("report.json")).unwrap();
    let table = |d: &tempfile::TempDir| std::fs::read(d.path().join("flow_samples.csv")).unwrap();
    assert_eq!(read(&a), read(&b));
    assert_eq!(table(&a), table(&b));
    assert_ne!(table(&a), table(&c));
}

#[test]
fn thread_count_does_not_change_results() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let go = |d: &Path, n: &str| {
        Command::new(env!("CARGO_BIN_EXE_landslide"))
            .args(["flow", "--samples", "40", "--out"])
            .arg(d)
            .env("LANDSLIDE_THREADS", n)
            .output()
            .unwrap()
    };
    go(a.path(), "1");
    go(b.path(), "4");
    let read = |d: &Path| std::fs::read(d.join("flow_samples.csv")).unwrap();
    assert_eq!(read(a.path()), read(b.path()));
}

#[test]
fn bad_config_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    std::fs::write(&cfg, "[flow]\nsamplez = 3\n").unwrap();
    let out = run(dir.path(), &["flow", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let missing = run(dir.path(), &["flow", "--config", "/nonexistent/landslide.toml"]);
    assert_eq!(missing.status.code(), Some(2));
    let unknown = run(dir.path(), &["nosuch"]);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn failing_check_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("tight.toml");
    std::fs::write(&cfg, "[flow]\ntolerance = 0.0\nsamples = 20\ngrid_samples = 5\n").unwrap();
    let out = run(dir.path(), &["flow", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(dir.path())["pass"], false);
}

#[test]
fn strict_makes_non_gating_checks_count() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("limit.toml");
    std::fs::write(&cfg, "[limit]\nlevel = 1\nlengths = [2.2568, 1.0, 0.6]\nmax_step_ratio = 0.5\n").unwrap();
    let c = cfg.to_str().unwrap();
    assert_eq!(run(dir.path(), &["limit", "--config", c]).status.code(), Some(0));
    let r = report(dir.path());
    let step = r["checks"].as_array().unwrap().iter().find(|c| c["name"] == "discrepancy_step_ratio").unwrap().clone();
    assert_eq!((step["gating"].clone(), step["pass"].clone()), (Value::Bool(false), Value::Bool(false)));
    assert_eq!(r["pass"], true);
    assert_eq!(run(dir.path(), &["limit", "--config", c, "--strict"]).status.code(), Some(1));
    assert_eq!(report(dir.path())["pass"], false);
}

#[test]
fn pinch_lengths_must_decrease() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("limit.toml");
    std::fs::write(&cfg, "[limit]\nlevel = 1\nlengths = [0.6, 1.0, 1.6]\n").unwrap();
    assert_eq!(run(dir.path(), &["limit", "--config", cfg.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn degenerate_tables() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["degenerate"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    for t in ["degeneration", "transversal", "limit_classes"] {
        assert!(dir.path().join(format!("{t}.csv")).exists(), "{t}");
    }
}
