//! CSV tables, raw snapshots and the run manifest.
//!
//! Every CSV starts with `#` comment lines (series name, scenario, config hash,
//! column units) followed by a header row. Numbers are written with 12
//! significant digits in exponent form; masked or undefined values are `nan`.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use bohmlab_core::scenarios::StateSnapshot;
use bohmlab_core::{ScenarioReport, Series};
use sha2::{Digest, Sha256};

use crate::config::hex;
use crate::error::CliError;

pub fn format_value(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{v:.11e}")
    }
}

/// File written for a series; the well-known ones get short names.
pub fn series_file_name(series: &str) -> String {
    match series {
        "pointer_momentum_density" => "pointer_momentum.csv".into(),
        "trajectory_bundle" => "trajectories.csv".into(),
        other => format!("{other}.csv"),
    }
}

pub fn render_series(series: &Series, report: &ScenarioReport) -> String {
    let mut out = String::new();
    writeln!(out, "# series: {}", series.name).unwrap();
    writeln!(out, "# scenario: {}", report.scenario.as_str()).unwrap();
    writeln!(out, "# config_hash: {}", report.config_hash).unwrap();
    let units: Vec<String> = series.columns.iter().map(|c| format!("{} [{}]", c.name, c.unit)).collect();
    writeln!(out, "# units: {}", units.join(", ")).unwrap();
    let names: Vec<&str> = series.columns.iter().map(|c| c.name.as_str()).collect();
    writeln!(out, "{}", names.join(",")).unwrap();
    for row in &series.rows {
        let cells: Vec<String> = row.iter().map(|v| format_value(*v)).collect();
        writeln!(out, "{}", cells.join(",")).unwrap();
    }
    out
}

/// Write the named series of `report` into `dir` and return the file path.
pub fn export_plot_series(report: &ScenarioReport, which: &str, dir: &Path) -> Result<PathBuf, CliError> {
    let series = report.series(which).ok_or_else(|| CliError::UnknownSeries(which.to_string()))?;
    let path = dir.join(series_file_name(which));
    write(&path, render_series(series, report).as_bytes())?;
    Ok(path)
}

pub fn render_scalars(report: &ScenarioReport) -> String {
    let mut out = format!("# scenario: {}\n# config_hash: {}\nname,value\n", report.scenario.as_str(), report.config_hash);
    for (k, v) in &report.scalars {
        writeln!(out, "{k},{}", format_value(*v)).unwrap();
    }
    out
}

pub fn render_assertions(report: &ScenarioReport) -> String {
    let mut out = format!(
        "# scenario: {}\n# config_hash: {}\nname,value,target,tolerance,comparison,passed\n",
        report.scenario.as_str(),
        report.config_hash
    );
    for a in &report.assertions {
        let cmp = serde_json::to_value(a.comparison).unwrap();
        writeln!(
            out,
            "{},{},{},{},{},{}",
            a.name,
            format_value(a.value),
            format_value(a.target),
            format_value(a.tolerance),
            cmp.as_str().unwrap_or_default(),
            a.passed
        )
        .unwrap();
    }
    out
}

/// `(binary, sidecar)` for a raw snapshot: little-endian f64 pairs `(re, im)`, x fastest.
pub fn render_snapshot(s: &StateSnapshot) -> (Vec<u8>, String) {
    let mut bin = Vec::with_capacity(16 * s.re.len());
    for (r, i) in s.re.iter().zip(&s.im) {
        bin.extend_from_slice(&r.to_le_bytes());
        bin.extend_from_slice(&i.to_le_bytes());
    }
    let sidecar = serde_json::json!({
        "time": s.time,
        "shape": s.shape,
        "bounds": s.bounds,
        "dtype": "f64le",
        "layout": "interleaved re,im; x index fastest",
    });
    (bin, serde_json::to_string_pretty(&sidecar).unwrap() + "\n")
}

pub(crate) fn write(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestEntry {
    pub name: String,
    pub bytes: u64,
    pub sha256: String,
}

impl ManifestEntry {
    pub fn of(dir: &Path, name: &str) -> Result<Self, CliError> {
        let path = dir.join(name);
        let data = fs::read(&path).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
        Ok(Self { name: name.to_string(), bytes: data.len() as u64, sha256: hex(&Sha256::digest(&data)) })
    }
}

/// Plain-text record of a run. Written after every other output file.
#[derive(Debug, Clone, PartialEq)]
pub struct RunManifest {
    pub version: String,
    pub subcommand: String,
    pub scenario: String,
    pub seed: u64,
    pub config_hash: String,
    pub started: String,
    pub finished: String,
    pub passed: bool,
    pub files: Vec<ManifestEntry>,
    /// Full configuration as TOML.
    pub config: String,
}

pub const MANIFEST_FILE: &str = "manifest.txt";

impl RunManifest {
    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "bohmlab {}", self.version).unwrap();
        writeln!(out, "subcommand: {}", self.subcommand).unwrap();
        writeln!(out, "scenario: {}", self.scenario).unwrap();
        writeln!(out, "seed: {}", self.seed).unwrap();
        writeln!(out, "config_hash: {}", self.config_hash).unwrap();
        writeln!(out, "started: {}", self.started).unwrap();
        writeln!(out, "finished: {}", self.finished).unwrap();
        writeln!(out, "assertions_passed: {}", self.passed).unwrap();
        writeln!(out, "\n[files]").unwrap();
        for f in &self.files {
            writeln!(out, "{}  {:>12}  {}", f.sha256, f.bytes, f.name).unwrap();
        }
        writeln!(out, "\n[config]").unwrap();
        out.push_str(&self.config);
        out
    }

    /// `(sha256, name)` pairs listed in a rendered manifest.
    pub fn listed_files(text: &str) -> Vec<(String, String)> {
        text.lines()
            .skip_while(|l| *l != "[files]")
            .skip(1)
            .take_while(|l| !l.is_empty())
            .filter_map(|l| {
                let mut it = l.split_whitespace();
                let sha = it.next()?;
                let _bytes = it.next()?;
                Some((sha.to_string(), it.next()?.to_string()))
            })
            .collect()
    }
}

/// Check every checksum in `dir/manifest.txt` against the files on disk.
pub fn verify_manifest(dir: &Path) -> Result<bool, CliError> {
    let path = dir.join(MANIFEST_FILE);
    let text = fs::read_to_string(&path).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    for (sha, name) in RunManifest::listed_files(&text) {
        if ManifestEntry::of(dir, &name)?.sha256 != sha {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use bohmlab_core::ScenarioKind;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(format_value(0.1), "1.00000000000e-1");
        assert_eq!(format_value(-31.41592653589793), "-3.14159265359e1");
        assert_eq!(format_value(f64::NAN), "nan");
        assert_eq!(format_value(0.0), "0.00000000000e0");
        let back: f64 = format_value(std::f64::consts::E).parse().unwrap();
        assert!((back - std::f64::consts::E).abs() < 1e-11);
    }

    #[test]
    fn series_headers_carry_units_and_hash() {
        let mut r = ScenarioReport::new(ScenarioKind::VonNeumann, 3);
        r.config_hash = "abc123".into();
        let mut s = Series::new("pointer_momentum_density", &[("P", "hbar/L"), ("density", "L/hbar")]);
        s.push(vec![1.0, 0.5]);
        r.series.push(s);
        let dir = tempfile::tempdir().unwrap();
        let path = export_plot_series(&r, "pointer_momentum_density", dir.path()).unwrap();
        assert!(path.ends_with("pointer_momentum.csv"));
        let text = fs::read_to_string(path).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[2], "# config_hash: abc123");
        assert_eq!(lines[3], "# units: P [hbar/L], density [L/hbar]");
        assert_eq!(lines[4], "P,density");
        assert_eq!(lines[5], "1.00000000000e0,5.00000000000e-1");
        assert!(matches!(export_plot_series(&r, "nope", dir.path()), Err(CliError::UnknownSeries(_))));
    }

    #[test]
    fn snapshot_binary_layout() {
        let s = StateSnapshot { time: 0.5, shape: vec![2], bounds: vec![(0.0, 1.0)], re: vec![1.0, 2.0], im: vec![-1.0, 0.0] };
        let (bin, side) = render_snapshot(&s);
        assert_eq!(bin.len(), 32);
        assert_eq!(f64::from_le_bytes(bin[16..24].try_into().unwrap()), 2.0);
        assert_eq!(f64::from_le_bytes(bin[8..16].try_into().unwrap()), -1.0);
        assert!(side.contains("\"shape\""));
    }

    #[test]
    fn manifest_lists_and_verifies() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("a.csv"), "x\n1\n").unwrap();
        let m = RunManifest {
            version: "0".into(),
            subcommand: "stationary".into(),
            scenario: "stationary_well".into(),
            seed: 1,
            config_hash: "h".into(),
            started: "s".into(),
            finished: "f".into(),
            passed: true,
            files: vec![ManifestEntry::of(dir.path(), "a.csv").unwrap()],
            config: "scenario = \"stationary_well\"\n".into(),
        };
        let text = m.render();
        fs::write(dir.path().join(MANIFEST_FILE), &text).unwrap();
        assert_eq!(RunManifest::listed_files(&text).len(), 1);
        assert!(verify_manifest(dir.path()).unwrap());
        fs::write(dir.path().join("a.csv"), "x\n2\n").unwrap();
        assert!(!verify_manifest(dir.path()).unwrap());
    }
}
