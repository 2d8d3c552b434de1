use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use bohmlab_core::{scenarios, ScenarioConfig, ScenarioKind, ScenarioReport};
use chrono::{SecondsFormat, Utc};

use crate::config::{config_hash, parse_config, write_config};
use crate::error::CliError;
use crate::fields::field_report;
use crate::output::{
    export_plot_series, render_assertions, render_scalars, render_snapshot, series_file_name, write, ManifestEntry,
    RunManifest, MANIFEST_FILE,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_ASSERTION_FAILED: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const ERROR_FILE: &str = "error.json";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subcommand {
    Stationary,
    Release,
    VonNeumann,
    Protective,
    Sweep,
    Fields,
}

impl Subcommand {
    pub fn name(&self) -> &'static str {
        match self {
            Subcommand::Stationary => "stationary",
            Subcommand::Release => "release",
            Subcommand::VonNeumann => "vonneumann",
            Subcommand::Protective => "protective",
            Subcommand::Sweep => "sweep",
            Subcommand::Fields => "fields",
        }
    }

    /// Scenario a config must declare for this subcommand; `fields` takes any.
    pub fn scenario(&self) -> Option<ScenarioKind> {
        match self {
            Subcommand::Stationary => Some(ScenarioKind::StationaryWell),
            Subcommand::Release => Some(ScenarioKind::WallRelease),
            Subcommand::VonNeumann => Some(ScenarioKind::VonNeumann),
            Subcommand::Protective => Some(ScenarioKind::Protective),
            Subcommand::Sweep => Some(ScenarioKind::AdiabaticSweep),
            Subcommand::Fields => None,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub snapshots: Option<usize>,
}

/// What a successful run produced.
#[derive(Debug, Clone)]
pub struct RunSummary {
    pub report: ScenarioReport,
    pub files: Vec<PathBuf>,
}

impl RunSummary {
    pub fn exit_code(&self) -> i32 {
        if self.report.all_passed() {
            EXIT_PASS
        } else {
            EXIT_ASSERTION_FAILED
        }
    }
}

/// Parse, run and write everything; on error only `error.json` is written.
pub fn run(sub: Subcommand, config: &Path, out_dir: &Path, overrides: Overrides) -> i32 {
    match parse_config(config).and_then(|cfg| execute(sub, cfg, out_dir, overrides)) {
        Ok(summary) => summary.exit_code(),
        Err(e) => {
            eprintln!("bohmlab {}: {e}", sub.name());
            let record = serde_json::to_string_pretty(&e.record()).unwrap() + "\n";
            if fs::create_dir_all(out_dir).is_ok() {
                let _ = fs::write(out_dir.join(ERROR_FILE), record);
            }
            EXIT_ERROR
        }
    }
}

pub fn execute(sub: Subcommand, mut cfg: ScenarioConfig, out_dir: &Path, overrides: Overrides) -> Result<RunSummary, CliError> {
    if let Some(kind) = sub.scenario() {
        if kind != cfg.scenario {
            return Err(CliError::ScenarioMismatch {
                subcommand: sub.name().into(),
                scenario: cfg.scenario.as_str().into(),
            });
        }
    }
    if let Some(seed) = overrides.seed {
        cfg.ensemble.seed = seed;
    }
    if let Some(k) = overrides.snapshots {
        cfg.output.field_snapshots = k;
    }
    cfg.validate()?;

    let started = Utc::now();
    let clock = Instant::now();
    let mut report = match sub {
        Subcommand::Fields => field_report(&cfg)?,
        _ => scenarios::run(&cfg)?,
    };
    report.runtime_seconds = clock.elapsed().as_secs_f64();
    report.config_hash = config_hash(&cfg);

    fs::create_dir_all(out_dir).map_err(|source| CliError::Io { path: out_dir.display().to_string(), source })?;
    let mut names = Vec::new();
    let json = serde_json::to_string_pretty(&report).expect("reports serialize") + "\n";
    write(&out_dir.join("report.json"), json.as_bytes())?;
    names.push("report.json".to_string());
    write(&out_dir.join("scalars.csv"), render_scalars(&report).as_bytes())?;
    names.push("scalars.csv".to_string());
    write(&out_dir.join("assertions.csv"), render_assertions(&report).as_bytes())?;
    names.push("assertions.csv".to_string());
    for s in &report.series {
        export_plot_series(&report, &s.name, out_dir)?;
        names.push(series_file_name(&s.name));
    }
    for (k, snap) in report.snapshots.iter().enumerate() {
        let (bin, sidecar) = render_snapshot(snap);
        let stem = format!("snapshot_{k:03}");
        write(&out_dir.join(format!("{stem}.bin")), &bin)?;
        write(&out_dir.join(format!("{stem}.json")), sidecar.as_bytes())?;
        names.push(format!("{stem}.bin"));
        names.push(format!("{stem}.json"));
    }

    let files = names.iter().map(|n| ManifestEntry::of(out_dir, n)).collect::<Result<Vec<_>, _>>()?;
    let manifest = RunManifest {
        version: env!("CARGO_PKG_VERSION").to_string(),
        subcommand: sub.name().to_string(),
        scenario: cfg.scenario.as_str().to_string(),
        seed: cfg.ensemble.seed,
        config_hash: report.config_hash.clone(),
        started: started.to_rfc3339_opts(SecondsFormat::Millis, true),
        finished: Utc::now().to_rfc3339_opts(SecondsFormat::Millis, true),
        passed: report.all_passed(),
        files,
        config: write_config(&cfg),
    };
    write(&out_dir.join(MANIFEST_FILE), manifest.render().as_bytes())?;
    names.push(MANIFEST_FILE.to_string());
    let _ = fs::remove_file(out_dir.join(ERROR_FILE));

    Ok(RunSummary { report, files: names.into_iter().map(|n| out_dir.join(n)).collect() })
}
