//! The `rlfrac` binary as a black box.

use std::fs::{self, File};
use std::process::{Command, Output};

use rlfrac::funcspace::{read_csv, write_csv};
use rlfrac::{lp_norm, rl_integral, Grid, GridFunction};
use serde_json::Value;

fn rlfrac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rlfrac")).args(args).output().expect("spawn rlfrac")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn ramp() -> GridFunction {
    let grid = Grid::uniform(0.0, 2.0, 64).unwrap();
    let values = grid.nodes().iter().map(|t| t * t - 1.0).collect();
    GridFunction::scalar_nodal(grid, values).unwrap()
}

#[test]
fn verify_critical_is_green() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("critical.json");
    let o = rlfrac(&["verify", "--suite", "critical", "--fuzz-count", "6", "--json", json.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("critical: "));
    let rep: Value = serde_json::from_str(&fs::read_to_string(json).unwrap()).unwrap();
    assert_eq!(rep["summary"]["fail"], 0);
    assert!(rep["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn sweep_kgamma_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("k.csv");
    let o = rlfrac(&[
        "sweep", "--functional", "kgamma", "--fn", "loginv", "--param", "1", "--gamma", "1", "--closed-form",
        "--csv", csv.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("r,value"));
    assert_eq!(lines.count(), rlfrac::normfun::K_GRID_POINTS);
}

#[test]
fn unknown_flag_is_a_usage_error() {
    assert_eq!(rlfrac(&["verify", "--no-such-flag"]).status.code(), Some(2));
    assert_eq!(rlfrac(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(rlfrac(&["compute", "--input", "/nonexistent.csv", "--functional", "lp"]).status.code(), Some(2));
    assert_eq!(rlfrac(&["--help"]).status.code(), Some(0));
}

#[test]
fn compute_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("f.csv");
    let output = dir.path().join("j.csv");
    let f = ramp();
    write_csv(&f, File::create(&input).unwrap()).unwrap();

    let o = rlfrac(&[
        "compute", "--input", input.to_str().unwrap(), "--op", "integral", "--alpha", "0.5", "--output",
        output.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let got = read_csv(File::open(&output).unwrap()).unwrap();
    assert_eq!(got.values(), rl_integral(&f, 0.5).unwrap().values());

    let o = rlfrac(&["compute", "--input", input.to_str().unwrap(), "--functional", "lp", "--p", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"].as_f64().unwrap(), lp_norm(&f, 3.0).unwrap());
}

#[test]
fn gallery_writes_series_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let o = rlfrac(&["gallery", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let report: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(report["summary"]["fail"], 0);
    let bmo = fs::read_to_string(dir.path().join("shifted-log-bmo.csv")).unwrap();
    assert!(bmo.lines().count() > 1);
}
