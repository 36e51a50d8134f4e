//! End-to-end contract of the binary: every exit code, output-path
//! resolution (flag vs environment), console quieting, and CSV round-trip
//! fidelity.

use bohmspec::ermakov::{weakmod_amplitude_squared, WeakModBranch};
use bohmspec::phase::{phase_profile_exact, wavefunction_direct};
use bohmspec::build_grid;
use std::path::Path;
use std::process::{Command, Output};

const BRANCH_CONFIG: &str = r#"{"kind": "branch", "a": 1.0, "eps": 0.1, "k": 1.0,
 "grid": [0, 6.283185307179586, 301]}"#;

fn cli() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_bohmspec"));
    cmd.env_remove("BOHMSPEC_OUT_DIR");
    cmd
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    cli().current_dir(dir).args(args).output().expect("binary runs")
}

#[test]
fn success_exits_zero_and_writes_both_files() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("b.json"), BRANCH_CONFIG).unwrap();
    let out = run_in(dir.path(), &["b.json", "--out", "run"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    assert!(dir.path().join("run.csv").exists());
    assert!(dir.path().join("run.gp").exists());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("run.csv"));
}

#[test]
fn quiet_suppresses_stdout() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("b.json"), BRANCH_CONFIG).unwrap();
    let out = run_in(dir.path(), &["b.json", "--out", "run", "--quiet"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
}

#[test]
fn validity_flag_exits_one_but_writes() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("d.json"),
        r#"{"kind": "difference", "e1": 0.5, "e2": 0.5, "c1": 6.0, "c2": 1.0,
            "k1": 1.0, "k2": 1.0, "eps": 0.0, "grid": [0, 6.2832, 401]}"#,
    )
    .unwrap();
    let out = run_in(dir.path(), &["d.json", "--out", "d"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(dir.path().join("d.csv").exists());
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("validity"), "{stderr}");
}

#[test]
fn config_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    for bad in [
        r#"{"kind": "branch", "eps": 0.6, "k": 1, "grid": [0, 6.2832, 101]}"#,
        r#"{"kind": "branch", "eps": 0.1, "grid": [0, 6.2832, 101]}"#,
        r#"{"kind": "warp"}"#,
        r#"not even json"#,
    ] {
        std::fs::write(dir.path().join("bad.json"), bad).unwrap();
        let out = run_in(dir.path(), &["bad.json"]);
        assert_eq!(out.status.code(), Some(2), "config: {bad}");
    }
    // Argument errors share the config exit code.
    let noargs = cli().current_dir(dir.path()).output().unwrap();
    assert_eq!(noargs.status.code(), Some(2));
}

#[test]
fn io_failures_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("b.json"), BRANCH_CONFIG).unwrap();
    // Unwritable output prefix.
    let out = run_in(dir.path(), &["b.json", "--out", "missing/dir/run"]);
    assert_eq!(out.status.code(), Some(3));
    // Missing scenario file.
    let out = run_in(dir.path(), &["nowhere.json"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn out_dir_env_is_honored_and_flag_wins() {
    let dir = tempfile::tempdir().unwrap();
    let outdir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("b.json"), BRANCH_CONFIG).unwrap();

    // Without --out the environment directory receives kind-named files.
    let out = cli()
        .current_dir(dir.path())
        .env("BOHMSPEC_OUT_DIR", outdir.path())
        .args(["b.json", "--quiet"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(outdir.path().join("branch.csv").exists());

    // With --out the flag path wins over the environment.
    let out = cli()
        .current_dir(dir.path())
        .env("BOHMSPEC_OUT_DIR", outdir.path())
        .args(["b.json", "--quiet", "--out", "local"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(dir.path().join("local.csv").exists());
    assert!(!outdir.path().join("local.csv").exists());
}

#[test]
fn csv_round_trips_against_fresh_evaluation() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("b.json"), BRANCH_CONFIG).unwrap();
    let out = run_in(dir.path(), &["b.json", "--out", "run", "--quiet"]);
    assert_eq!(out.status.code(), Some(0));

    let branch = WeakModBranch::with_derived_current(1.0, 0.1, 1.0, 0.0, 1.0, false).unwrap();
    // Same span as BRANCH_CONFIG: the JSON literal parses to exactly TAU.
    let grid = build_grid(0.0, std::f64::consts::TAU, 301).unwrap();
    let exact = phase_profile_exact(&branch, grid, 1e-12).unwrap();

    let csv = std::fs::read_to_string(dir.path().join("run.csv")).unwrap();
    let mut worst = 0.0f64;
    for (i, line) in csv.lines().skip(1).enumerate() {
        let cells: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        let x = grid.sample(i);
        let psi = wavefunction_direct(&branch, x);
        worst = worst
            .max((cells[0] - x).abs())
            .max((cells[1] - weakmod_amplitude_squared(&branch, x)).abs())
            .max((cells[2] - exact.s_values[i]).abs())
            .max((cells[4] - psi.re).abs())
            .max((cells[5] - psi.im).abs());
    }
    assert!(worst <= 1e-12, "round-trip gap {worst}");
}

#[test]
fn verify_scenario_reports_and_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["verify"]);
    assert_eq!(out.status.code(), Some(0));
    let report = std::fs::read_to_string(dir.path().join("verify.report.txt")).unwrap();
    assert!(report.starts_with("verification report\n"));
    assert!(report.ends_with("overall: PASS\n"));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("overall: PASS"));
}
