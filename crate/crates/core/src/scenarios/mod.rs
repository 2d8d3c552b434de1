//! Scenario drivers: each one wires the solver, the field post-processing and
//! the trajectory ensemble together and returns a [`ScenarioReport`].

mod config;
mod protective;
mod release;
mod report;
mod stationary;
mod von_neumann;

pub use config::{
    CouplingConfig, EnsembleConfig, GridConfig, OutputConfig, PointerConfig, ReleaseConfig, ScenarioConfig, ScenarioKind,
    SweepConfig, VonNeumannConfig, WellConfig,
};
pub use protective::{adiabatic_sweep, protective_guard_ratio, run_protective, SweepRow, SweepTable, GUARD_RATIO};
pub use release::run_wall_release;
pub use report::{Assertion, Column, Comparison, ScenarioReport, Series, StateSnapshot};
pub use stationary::run_stationary_well;
pub use von_neumann::{mixture_density, run_von_neumann};

use crate::error::{BohmError, Result};
use crate::trajectories::Ensemble;

/// Largest number of time rows kept per path in a trajectory table.
pub const BUNDLE_TIME_ROWS: usize = 200;

/// Dispatch on `cfg.scenario`. The sweep is summarised by its largest-duration run.
pub fn run(cfg: &ScenarioConfig) -> Result<ScenarioReport> {
    match cfg.scenario {
        ScenarioKind::StationaryWell => run_stationary_well(cfg),
        ScenarioKind::WallRelease => run_wall_release(cfg),
        ScenarioKind::VonNeumann => run_von_neumann(cfg),
        ScenarioKind::Protective => run_protective(cfg),
        ScenarioKind::AdiabaticSweep => adiabatic_sweep(cfg, &cfg.sweep.durations).map(|t| t.into_report()),
    }
}

pub(crate) fn precondition_kind(cfg: &ScenarioConfig, kind: ScenarioKind) -> Result<()> {
    if cfg.scenario != kind {
        return Err(BohmError::Precondition(format!(
            "expected a {} configuration, got {}",
            kind.as_str(),
            cfg.scenario.as_str()
        )));
    }
    Ok(())
}

/// Steps (1-based, out of `steps`) at which `k` evenly spaced snapshots are taken; the last is the final step.
pub(crate) fn snapshot_steps(steps: usize, k: usize) -> Vec<usize> {
    let k = k.min(steps);
    (1..=k).map(|j| (j * steps).div_ceil(k)).collect()
}

/// `(t, id, x, X)` rows for the first `max_paths` trajectories.
pub(crate) fn trajectory_series(ensemble: &Ensemble, max_paths: usize) -> Series {
    let mut s = Series::new("trajectory_bundle", &[("t", "hbar/E"), ("id", "1"), ("x", "L"), ("X", "L")]);
    for (id, tr) in ensemble.trajectories.iter().take(max_paths).enumerate() {
        let stride = tr.times.len().div_ceil(BUNDLE_TIME_ROWS).max(1);
        let last = tr.times.len().saturating_sub(1);
        for (k, (t, p)) in tr.times.iter().zip(&tr.positions).enumerate() {
            if k % stride == 0 || k == last {
                s.push(vec![*t, id as f64, p[0], p[1]]);
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snapshot_steps_end_on_the_last_step() {
        assert_eq!(snapshot_steps(10, 0), Vec::<usize>::new());
        assert_eq!(snapshot_steps(10, 1), vec![10]);
        assert_eq!(snapshot_steps(10, 3), vec![4, 7, 10]);
        assert_eq!(snapshot_steps(2, 5), vec![1, 2]);
    }
}
