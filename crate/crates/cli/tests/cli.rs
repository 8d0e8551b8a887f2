// Copyright 2026 The ionlc Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn ionlc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ionlc")).args(args).output().expect("binary runs")
}

fn write_config(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn run(mode: &str, config: Option<&Path>, out: &Path, extra: &[&str]) -> Output {
    let mut args = vec![mode, "--out", out.to_str().unwrap()];
    if let Some(c) = config {
        args.extend(["--config", c.to_str().unwrap()]);
    }
    args.extend(extra);
    ionlc(&args)
}

fn summary(dir: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join("summary.json")).unwrap()).unwrap()
}

#[test]
fn params_reports_coupling_in_expected_range() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run("params", None, tmp.path(), &[]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let s = summary(tmp.path());
    let g0_hz = s["figures"]["g0_hz"].as_f64().unwrap();
    assert!((160e3..210e3).contains(&g0_hz), "{g0_hz}");
    assert_eq!(s["status"], "ok");
    assert_eq!(s["config"]["device"]["omega_i_hz"].as_f64().unwrap(), 1e6);
}

#[test]
fn swap_series_has_expected_columns_and_reruns_identically() {
    let tmp = tempfile::tempdir().unwrap();
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    for dir in [&a, &b] {
        let out = run("protocol", None, dir, &[]);
        assert_eq!(out.status.code(), Some(0));
    }
    let csv = std::fs::read_to_string(a.join("series.csv")).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "time,P_lc,P_motion,norm");
    assert_eq!(csv.lines().count(), 102);
    for name in ["series.csv", "summary.json"] {
        assert_eq!(std::fs::read(a.join(name)).unwrap(), std::fs::read(b.join(name)).unwrap(), "{name}");
    }
    let s = summary(&a);
    assert!(s["figures"]["transfer_probability"].as_f64().unwrap() > 1.0 - 1e-6);
    assert!(s["convergence_delta"].as_f64().unwrap() <= 1e-3);
}

#[test]
fn simulate_reruns_identically() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "sim.toml", "[simulate]\nframe = \"interaction\"\nduration_swaps = 0.5\nsamples = 21\n");
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    for dir in [&a, &b] {
        assert_eq!(run("simulate", Some(&cfg), dir, &[]).status.code(), Some(0));
    }
    assert_eq!(std::fs::read(a.join("series.csv")).unwrap(), std::fs::read(b.join("series.csv")).unwrap());
    let s = summary(&a);
    let p = s["figures"]["final_P_motion"].as_f64().unwrap();
    assert!((p - 0.5).abs() < 0.01, "{p}");
}

#[test]
fn lossless_budget_is_ideal() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        "budget.toml",
        "[device]\nkappa_lc_per_s = 0.0\ngamma_heat_per_s = 0.0\n[protocol]\nname = \"budget\"\n",
    );
    let out = run("protocol", Some(&cfg), &tmp.path().join("o"), &[]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let s = summary(&tmp.path().join("o"));
    assert!(s["figures"]["infidelity"].as_f64().unwrap() < 1e-3);
}

#[test]
fn empty_sweep_is_a_validation_error() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "s.toml", "[sweep]\nparameter = \"delta_hz\"\nvalues = []\n");
    let out = run("sweep", Some(&cfg), &tmp.path().join("o"), &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("sweep.values"));
}

#[test]
fn unknown_key_is_a_validation_error_naming_the_key() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "u.toml", "[model]\ng0_khz = 2.0\n");
    let out = run("params", Some(&cfg), &tmp.path().join("o"), &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("g0_khz"));
    let cfg = write_config(tmp.path(), "p.toml", "[sweep]\nparameter = \"inductance\"\nvalues = [1.0]\n");
    assert_eq!(run("sweep", Some(&cfg), &tmp.path().join("o"), &[]).status.code(), Some(2));
}

#[test]
fn mode_mismatch_and_bad_workers_are_rejected() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "m.toml", "mode = \"params\"\n");
    assert_eq!(run("simulate", Some(&cfg), &tmp.path().join("o"), &[]).status.code(), Some(2));
    assert_eq!(run("params", Some(&cfg), &tmp.path().join("o"), &["--workers", "0"]).status.code(), Some(2));
    assert_eq!(run("sweep", None, &tmp.path().join("o"), &[]).status.code(), Some(2));
}

#[test]
fn unconverged_truncation_exits_with_numerical_failure() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "g.toml", "[truncation]\nlc = 3\n[protocol]\nname = \"phase_gate\"\nalpha = 1.0\n");
    let out = run("protocol", Some(&cfg), &tmp.path().join("o"), &[]);
    assert_eq!(out.status.code(), Some(3));
    let s = summary(&tmp.path().join("o"));
    assert_eq!(s["status"], "not_converged");
    assert!(s["convergence_delta"].as_f64().unwrap() > 1e-3);
    assert!(s["diagnostic"].as_str().unwrap().contains("doubled-truncation"));
}

#[test]
fn sweep_rows_follow_index_order_for_any_worker_count() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        "s.toml",
        "[truncation]\nlc = 3\nmotion = 4\n[integrator]\ntolerance = 1e-8\n[sweep]\nparameter = \"delta_hz\"\nvalues = [10.0, 5.0, 7.5]\nheating_rate = 0.01\n",
    );
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    assert_eq!(run("sweep", Some(&cfg), &a, &["--workers", "1"]).status.code(), Some(0));
    assert_eq!(run("sweep", Some(&cfg), &b, &["--workers", "3"]).status.code(), Some(0));
    let csv = std::fs::read_to_string(a.join("sweep.csv")).unwrap();
    assert_eq!(csv, std::fs::read_to_string(b.join("sweep.csv")).unwrap());
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "delta_hz,infidelity,n,alpha");
    let deltas: Vec<f64> = lines[1..].iter().map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(deltas, [10.0, 5.0, 7.5]);
    // Each row keeps α within one loop of the target.
    for l in &lines[1..] {
        let cells: Vec<&str> = l.split(',').collect();
        assert!(cells[2].parse::<u32>().unwrap() >= 1);
        assert!(cells[1].parse::<f64>().unwrap() > 0.0);
    }
}

#[test]
fn budget_rate_sweep_is_linear() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        "k.toml",
        "[device]\ngamma_heat_per_s = 0.0\n[sweep]\nparameter = \"kappa_lc_per_s\"\nvalues = [1000.0, 2000.0]\n",
    );
    assert_eq!(run("sweep", Some(&cfg), &tmp.path().join("o"), &[]).status.code(), Some(0));
    let csv = std::fs::read_to_string(tmp.path().join("o/sweep.csv")).unwrap();
    let ys: Vec<f64> = csv.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert!((ys[1] / ys[0] - 2.0).abs() < 0.05, "{ys:?}");
}

#[test]
fn check_suite_passes_at_defaults() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run("check", None, tmp.path(), &[]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let s = summary(tmp.path());
    assert!(s["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn shipped_configs_run() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("config");
    let tmp = tempfile::tempdir().unwrap();
    let out = run("protocol", Some(&root.join("example.toml")), &tmp.path().join("e"), &[]);
    assert_eq!(out.status.code(), Some(0));
    for name in ["heating_sweep.toml", "budget.toml"] {
        let text = std::fs::read_to_string(root.join(name)).unwrap();
        ionlc_cli::RunConfig::from_toml_str(&text).unwrap();
    }
}
