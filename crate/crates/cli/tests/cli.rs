use std::fs;
use std::path::Path;
use std::process::Command;

use bohmlab::{parse_config_str, verify_manifest, write_config, ErrorRecord};
use bohmlab_core::{ScenarioConfig, ScenarioKind};
use proptest::prelude::*;

fn bohmlab(args: &[&str]) -> i32 {
    Command::new(env!("CARGO_BIN_EXE_bohmlab")).args(args).output().unwrap().status.code().unwrap()
}

fn write_file(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.display().to_string()
}

const STATIONARY: &str = "scenario = \"stationary_well\"\n[well]\nn = 2\nperiods = 2.0\n[ensemble]\nn_traj = 50\n";

#[test]
fn stationary_run_writes_a_verified_bundle() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_file(dir.path(), "s.toml", STATIONARY);
    let out = dir.path().join("out");
    let code = bohmlab(&["stationary", "--config", &cfg, "--out", out.to_str().unwrap(), "--snapshots", "2"]);
    assert_eq!(code, 0);
    for f in ["report.json", "scalars.csv", "assertions.csv", "trajectories.csv", "manifest.txt", "snapshot_001.bin"] {
        assert!(out.join(f).exists(), "{f}");
    }
    assert!(!out.join("error.json").exists());
    assert!(verify_manifest(&out).unwrap());
    let manifest = fs::read_to_string(out.join("manifest.txt")).unwrap();
    assert!(manifest.contains("snapshot_001.json"));
    assert!(manifest.contains("scenario = \"stationary_well\""));
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert!(report["assertions"].as_array().unwrap().iter().all(|a| a["passed"] == true));
}

#[test]
fn csv_outputs_are_byte_identical_across_reruns() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_file(dir.path(), "s.toml", STATIONARY);
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    for out in [&a, &b] {
        assert_eq!(bohmlab(&["stationary", "--config", &cfg, "--out", out.to_str().unwrap(), "--seed", "9"]), 0);
    }
    for f in ["scalars.csv", "assertions.csv", "trajectories.csv"] {
        assert_eq!(fs::read(a.join(f)).unwrap(), fs::read(b.join(f)).unwrap(), "{f}");
    }
    let c = dir.path().join("c");
    assert_eq!(bohmlab(&["stationary", "--config", &cfg, "--out", c.to_str().unwrap(), "--seed", "10"]), 0);
    assert_ne!(fs::read(a.join("trajectories.csv")).unwrap(), fs::read(c.join("trajectories.csv")).unwrap());
}

#[test]
fn failed_assertion_exits_one() {
    // ten paths cannot reproduce a 50% ± 2% split
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_file(
        dir.path(),
        "few.toml",
        "scenario = \"wall_release\"\n[release]\nn = 4\nn_points = 1024\ndt = 2e-4\ntravel = 1.5\n[ensemble]\nn_traj = 10\n",
    );
    let out = dir.path().join("out");
    assert_eq!(bohmlab(&["release", "--config", &cfg, "--out", out.to_str().unwrap()]), 1);
    let table = fs::read_to_string(out.join("assertions.csv")).unwrap();
    assert!(table.lines().any(|l| l.starts_with("left_right_split,") && l.ends_with(",false")));
    assert!(verify_manifest(&out).unwrap());
    let manifest = fs::read_to_string(out.join("manifest.txt")).unwrap();
    assert!(manifest.contains("assertions_passed: false"));
}

#[test]
fn invalid_config_leaves_only_an_error_record() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_file(dir.path(), "bad.toml", "scenario = \"protective\"\n[coupling]\nx0 = 0.5\nepsilonn = 0.1\nepsilon = 0.1\n");
    let out = dir.path().join("out");
    assert_eq!(bohmlab(&["protective", "--config", &cfg, "--out", out.to_str().unwrap()]), 2);
    let entries: Vec<_> = fs::read_dir(&out).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(entries, vec!["error.json"]);
    let rec: ErrorRecord = serde_json::from_str(&fs::read_to_string(out.join("error.json")).unwrap()).unwrap();
    assert_eq!(rec.error, "unknown_key");
    assert_eq!(rec.key.as_deref(), Some("coupling.epsilonn"));
}

#[test]
fn run_time_errors_are_recorded() {
    let dir = tempfile::tempdir().unwrap();
    // guard ratio far above the weak-coupling limit
    let cfg = write_file(dir.path(), "strong.toml", "scenario = \"protective\"\n[coupling]\nx0 = 0.5\nepsilon = 5.0\n");
    let out = dir.path().join("out");
    assert_eq!(bohmlab(&["protective", "--config", &cfg, "--out", out.to_str().unwrap()]), 2);
    let rec: ErrorRecord = serde_json::from_str(&fs::read_to_string(out.join("error.json")).unwrap()).unwrap();
    assert_eq!(rec.error, "invalid_config");
    assert_eq!(rec.key.as_deref(), Some("coupling.epsilon"));
    assert!(!out.join("manifest.txt").exists());

    let missing = dir.path().join("nope.toml");
    assert_eq!(bohmlab(&["stationary", "--config", missing.to_str().unwrap(), "--out", out.to_str().unwrap()]), 2);
}

#[test]
fn subcommand_must_match_the_scenario() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_file(dir.path(), "s.toml", STATIONARY);
    let out = dir.path().join("out");
    assert_eq!(bohmlab(&["release", "--config", &cfg, "--out", out.to_str().unwrap()]), 2);
    let rec: ErrorRecord = serde_json::from_str(&fs::read_to_string(out.join("error.json")).unwrap()).unwrap();
    assert_eq!(rec.error, "scenario_mismatch");
}

#[test]
fn sweep_tabulates_one_row_per_duration() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_file(
        dir.path(),
        "sweep.toml",
        "scenario = \"adiabatic_sweep\"\n[coupling]\nx0 = 0.5\nepsilon = 0.1\n[sweep]\ndurations = [50.0, 20.0, 5.0, 1.0]\n\
         [grid]\nn_x = 64\nn_meter = 64\n",
    );
    let out = dir.path().join("out");
    let code = bohmlab(&["sweep", "--config", &cfg, "--out", out.to_str().unwrap()]);
    let text = fs::read_to_string(out.join("sweep.csv")).unwrap();
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).skip(1).collect();
    assert_eq!(rows.len(), 4);
    assert!(rows[0].starts_with("5.00000000000e1,"));
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    let all = report["assertions"].as_array().unwrap().iter().all(|a| a["passed"] == true);
    assert_eq!(code, if all { 0 } else { 1 });
}

#[test]
fn fields_dump_has_one_row_per_node() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_file(dir.path(), "s.toml", STATIONARY);
    let out = dir.path().join("out");
    assert_eq!(bohmlab(&["fields", "--config", &cfg, "--out", out.to_str().unwrap()]), 0);
    let text = fs::read_to_string(out.join("fields.csv")).unwrap();
    assert!(text.contains("# units: x [L], rho [1/L], v [L E/hbar], Q [E], U [E], F [E/L]"));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 1 + 400);
    assert!(verify_manifest(&out).unwrap());
}

fn any_config() -> impl Strategy<Value = ScenarioConfig> {
    (
        prop::sample::select(ScenarioKind::ALL.to_vec()),
        0.01f64..0.99,
        -1.0f64..1.0,
        prop::collection::vec(0.5f64..3.0, 1..4),
        0..=i64::MAX as u64,
        16usize..600,
        1e-6f64..1.0,
    )
        .prop_map(|(kind, x0, eps, steps, seed, n, dt)| {
            let mut c = ScenarioConfig::defaults_for(kind);
            c.coupling.x0 = x0;
            c.coupling.epsilon = eps;
            // strictly descending positive durations
            let mut t = 0.0;
            let mut d: Vec<f64> = steps.iter().map(|s| { t += s; t }).collect();
            d.reverse();
            c.sweep.durations = d;
            c.ensemble.seed = seed;
            c.grid.n_x = n;
            c.grid.dt = dt;
            c.von_neumann.weights = vec![x0, 1.0 - x0];
            c
        })
}

#[test]
fn seeds_beyond_toml_integers_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_file(dir.path(), "s.toml", STATIONARY);
    let out = dir.path().join("out");
    let seed = (i64::MAX as u64 + 1).to_string();
    assert_eq!(bohmlab(&["stationary", "--config", &cfg, "--out", out.to_str().unwrap(), "--seed", &seed]), 2);
    let rec: ErrorRecord = serde_json::from_str(&fs::read_to_string(out.join("error.json")).unwrap()).unwrap();
    assert_eq!(rec.key.as_deref(), Some("ensemble.seed"));
}

proptest! {
    #[test]
    fn config_round_trip(cfg in any_config()) {
        prop_assert!(cfg.validate().is_ok());
        prop_assert_eq!(parse_config_str(&write_config(&cfg)).unwrap(), cfg);
    }
}
