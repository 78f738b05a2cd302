//! End-to-end checks of the `maser` binary: exit codes, file outputs, and
//! determinism of the emitted CSV.

use std::path::Path;
use std::process::Command;

fn maser() -> Command {
    Command::new(env!("CARGO_BIN_EXE_maser"))
}

fn read(path: &Path) -> Vec<u8> {
    std::fs::read(path).unwrap()
}

#[test]
fn steady_prints_report_and_exits_zero() {
    let out = maser().arg("steady").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("regime = engine"));
    assert!(text.contains("s_max"));
}

#[test]
fn steady_with_overrides() {
    let out = maser()
        .args(["steady", "--delta", "0.25", "--epsilon", "0.08"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("delta = 0.25"));
    assert!(text.contains("epsilon = 0.08"));
}

#[test]
fn malformed_config_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let out = maser()
        .args(["steady", "--config"])
        .arg(&bad)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("error"));
}

#[test]
fn invalid_flag_value_exits_two() {
    let out = maser()
        .args(["steady", "--epsilon", "-0.5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_passes_and_emits_json() {
    let out = maser()
        .args(["verify", "--seed", "7", "--draws", "40", "--json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["seed"], 7);
    assert!(json["checks"].as_array().unwrap().len() >= 8);
    for check in json["checks"].as_array().unwrap() {
        assert_eq!(check["passed"], true, "{check}");
    }
}

#[test]
fn verify_is_deterministic_across_runs() {
    let run = || {
        maser()
            .args(["verify", "--seed", "11", "--draws", "30", "--json"])
            .output()
            .unwrap()
    };
    let a = run();
    let b = run();
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn sweep_writes_csv_with_exact_header() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("grid.csv");
    let out = maser()
        .args([
            "sweep",
            "--delta-min", "-0.2", "--delta-max", "0.2", "--delta-points", "5",
            "--epsilon-min", "0.0", "--epsilon-max", "0.1", "--epsilon-points", "3",
            "--out",
        ])
        .arg(&out_path)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(read(&out_path)).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "delta,epsilon,tc_over_th,s_max,power_ss,abs_power,bound,qdot_h,qdot_c,efficiency,carnot,entropy,regime"
    );
    assert_eq!(lines.count(), 15);
    assert!(!text.contains('\r'));
}

#[test]
fn bundled_sweep_is_byte_identical_across_runs_and_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, threads: &str| {
        let path = dir.path().join(name);
        let out = maser()
            .args(["sweep", "--threads", threads, "--out"])
            .arg(&path)
            .output()
            .unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        read(&path)
    };
    let a = run("a.csv", "2");
    let b = run("b.csv", "2");
    let c = run("c.csv", "7");
    assert_eq!(a, b);
    assert_eq!(a, c);
    assert!(a.len() > 100_000, "full default grid should be substantial");
}

#[test]
fn temperature_mode_fills_ratio_column_only() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let out = maser()
        .args([
            "sweep", "--mode", "temperature",
            "--tcth-min", "0.05", "--tcth-max", "0.15", "--tcth-points", "11",
            "--out",
        ])
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(read(&path)).unwrap();
    let row = text.lines().nth(1).unwrap();
    let fields: Vec<&str> = row.split(',').collect();
    assert_eq!(fields[0], "");
    assert_eq!(fields[1], "");
    assert!(!fields[2].is_empty());
    assert!(!fields[3].is_empty());
}

#[test]
fn evolve_writes_trajectory() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("traj.csv");
    let out = maser()
        .args(["evolve", "--t-final", "100", "--store-every", "20", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(read(&path)).unwrap();
    assert!(text.starts_with("time,rho11"));
    assert!(text.lines().count() > 3);
    // populations leave the ground state
    let last = text.lines().last().unwrap();
    let rho11: f64 = last.split(',').nth(1).unwrap().parse().unwrap();
    assert!(rho11 < 1.0);
}
