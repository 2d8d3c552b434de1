//! Declarative scenario inputs with per-scenario defaults.

use serde::{Deserialize, Serialize};

use crate::error::{BohmError, Result};
use crate::grid::{UnitSystem, MIN_POINTS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioKind {
    StationaryWell,
    WallRelease,
    VonNeumann,
    Protective,
    AdiabaticSweep,
}

impl ScenarioKind {
    pub const ALL: [ScenarioKind; 5] = [
        ScenarioKind::StationaryWell,
        ScenarioKind::WallRelease,
        ScenarioKind::VonNeumann,
        ScenarioKind::Protective,
        ScenarioKind::AdiabaticSweep,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ScenarioKind::StationaryWell => "stationary_well",
            ScenarioKind::WallRelease => "wall_release",
            ScenarioKind::VonNeumann => "von_neumann",
            ScenarioKind::Protective => "protective",
            ScenarioKind::AdiabaticSweep => "adiabatic_sweep",
        }
    }

    /// Dotted key paths that a config file must set explicitly.
    pub fn required_keys(&self) -> &'static [&'static str] {
        match self {
            ScenarioKind::Protective => &["coupling.x0", "coupling.epsilon"],
            ScenarioKind::AdiabaticSweep => &["coupling.x0", "coupling.epsilon", "sweep.durations"],
            _ => &[],
        }
    }
}

/// Spatial grids. `n_x` points span the well `[0, L]`; the meter axis spans
/// `pointer.center ± meter_half_width` with `n_meter` points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub n_x: usize,
    pub n_meter: usize,
    pub dt: f64,
    pub meter_half_width: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WellConfig {
    /// Quantum number of the prepared eigenstate.
    pub n: usize,
    /// Run length in units of `hbar / E_n`.
    pub periods: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CouplingConfig {
    pub x0: f64,
    /// Coupling constant; its sign only flips the direction of the kick.
    pub epsilon: f64,
    /// Duration `T` of the switching window.
    pub duration: f64,
    /// Width of the regularized delta in grid spacings.
    pub width_factor: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointerConfig {
    pub sigma: f64,
    pub center: f64,
    pub momentum: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnsembleConfig {
    pub n_traj: usize,
    pub seed: u64,
    /// Propagation steps between velocity snapshots used by the trajectories.
    pub snapshot_every: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReleaseConfig {
    pub n: usize,
    /// Open domain length in units of `L`, centred on the well.
    pub domain_factor: f64,
    pub n_points: usize,
    pub dt: f64,
    /// Distance, in units of `L`, travelled by the packets at `hbar n π / (m L)`.
    pub travel: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VonNeumannConfig {
    /// Eigenvalues `a` of the measured observable.
    pub eigenvalues: Vec<f64>,
    /// Branch weights `|S(a)|²`.
    pub weights: Vec<f64>,
    pub epsilon: f64,
    pub n_points: usize,
    pub half_width: f64,
    /// Free flight time after the kick used for the spatial-overlap metric.
    pub t_obs: f64,
    pub dt: f64,
    /// Width of the narrow switching window of the brute-force cross-check; 0 disables it.
    pub cross_check_window: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    /// Switching durations, in descending order.
    pub durations: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    /// Number of raw field snapshots to write (0 = none).
    pub field_snapshots: usize,
    /// Largest number of paths written to the trajectory table.
    pub trajectory_paths: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub scenario: ScenarioKind,
    pub units: UnitSystem,
    pub grid: GridConfig,
    pub well: WellConfig,
    pub coupling: CouplingConfig,
    pub pointer: PointerConfig,
    pub ensemble: EnsembleConfig,
    pub release: ReleaseConfig,
    pub von_neumann: VonNeumannConfig,
    pub sweep: SweepConfig,
    pub output: OutputConfig,
}

impl ScenarioConfig {
    /// Complete configuration for `kind` with every default applied.
    pub fn defaults_for(kind: ScenarioKind) -> Self {
        let mut cfg = ScenarioConfig {
            scenario: kind,
            units: UnitSystem::default(),
            grid: GridConfig { n_x: 400, n_meter: 256, dt: 1e-3, meter_half_width: 90.0 },
            well: WellConfig { n: 1, periods: 10.0 },
            coupling: CouplingConfig { x0: 0.5, epsilon: 0.1, duration: 50.0, width_factor: 2.0 },
            pointer: PointerConfig { sigma: 10.0, center: 0.0, momentum: 0.0 },
            ensemble: EnsembleConfig { n_traj: 1000, seed: 1, snapshot_every: 1 },
            release: ReleaseConfig { n: 10, domain_factor: 8.0, n_points: 2048, dt: 5e-5, travel: 2.0 },
            von_neumann: VonNeumannConfig {
                eigenvalues: vec![1.0, -1.0],
                weights: vec![0.5, 0.5],
                epsilon: 5.0,
                n_points: 2048,
                half_width: 30.0,
                t_obs: 100.0,
                dt: 0.01,
                cross_check_window: 0.01,
            },
            sweep: SweepConfig { durations: vec![50.0, 20.0, 5.0, 1.0] },
            output: OutputConfig { field_snapshots: 0, trajectory_paths: 200 },
        };
        match kind {
            ScenarioKind::StationaryWell => {}
            ScenarioKind::VonNeumann => {
                cfg.pointer.sigma = 1.0;
            }
            ScenarioKind::WallRelease => {
                cfg.ensemble.n_traj = 10_000;
            }
            ScenarioKind::Protective => {
                cfg.grid.n_x = 256;
                cfg.grid.dt = 0.0025;
                cfg.ensemble.snapshot_every = 10;
            }
            ScenarioKind::AdiabaticSweep => {
                cfg.grid.n_x = 256;
                cfg.grid.dt = 0.01;
                cfg.units.box_length = 2.0;
                cfg.ensemble.n_traj = 0;
                cfg.ensemble.snapshot_every = 10;
            }
        }
        cfg
    }

    pub fn validate(&self) -> Result<()> {
        self.units.validate()?;
        let bad = |key: &str, why: String| Err(BohmError::InvalidConfig(format!("{key}: {why}")));
        let positive = |key: &str, v: f64| -> Result<()> {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                bad(key, format!("must be positive, got {v}"))
            }
        };
        let points = |key: &str, n: usize| -> Result<()> {
            if n >= MIN_POINTS {
                Ok(())
            } else {
                bad(key, format!("needs at least {MIN_POINTS} points, got {n}"))
            }
        };
        let finite = |key: &str, v: f64| -> Result<()> {
            if v.is_finite() {
                Ok(())
            } else {
                bad(key, format!("must be finite, got {v}"))
            }
        };
        points("grid.n_x", self.grid.n_x)?;
        points("grid.n_meter", self.grid.n_meter)?;
        positive("grid.dt", self.grid.dt)?;
        positive("grid.meter_half_width", self.grid.meter_half_width)?;
        if self.well.n == 0 {
            return bad("well.n", "must be at least 1".into());
        }
        positive("well.periods", self.well.periods)?;
        finite("coupling.x0", self.coupling.x0)?;
        finite("coupling.epsilon", self.coupling.epsilon)?;
        positive("coupling.duration", self.coupling.duration)?;
        positive("coupling.width_factor", self.coupling.width_factor)?;
        positive("pointer.sigma", self.pointer.sigma)?;
        finite("pointer.center", self.pointer.center)?;
        finite("pointer.momentum", self.pointer.momentum)?;
        // configs are stored as TOML, whose integers are signed 64-bit
        if self.ensemble.seed > i64::MAX as u64 {
            return bad("ensemble.seed", format!("must not exceed {}, got {}", i64::MAX, self.ensemble.seed));
        }
        if self.ensemble.snapshot_every == 0 {
            return bad("ensemble.snapshot_every", "must be at least 1".into());
        }
        if self.release.n == 0 {
            return bad("release.n", "must be at least 1".into());
        }
        if !(self.release.domain_factor >= 8.0) {
            return bad("release.domain_factor", format!("open domain must be at least 8 L, got {}", self.release.domain_factor));
        }
        points("release.n_points", self.release.n_points)?;
        positive("release.dt", self.release.dt)?;
        positive("release.travel", self.release.travel)?;
        let vn = &self.von_neumann;
        if vn.eigenvalues.is_empty() || vn.eigenvalues.len() != vn.weights.len() {
            return bad("von_neumann.weights", "needs one weight per eigenvalue".into());
        }
        if vn.eigenvalues.iter().any(|a| !a.is_finite()) {
            return bad("von_neumann.eigenvalues", "must be finite".into());
        }
        if vn.weights.iter().any(|w| !(w.is_finite() && *w >= 0.0)) || !(vn.weights.iter().sum::<f64>() > 0.0) {
            return bad("von_neumann.weights", "must be non-negative with a positive sum".into());
        }
        finite("von_neumann.epsilon", vn.epsilon)?;
        points("von_neumann.n_points", vn.n_points)?;
        positive("von_neumann.half_width", vn.half_width)?;
        positive("von_neumann.dt", vn.dt)?;
        if !(vn.t_obs >= 0.0 && vn.cross_check_window >= 0.0) {
            return bad("von_neumann.t_obs", "t_obs and cross_check_window must be non-negative".into());
        }
        if self.sweep.durations.is_empty() {
            return bad("sweep.durations", "needs at least one duration".into());
        }
        for d in &self.sweep.durations {
            positive("sweep.durations", *d)?;
        }
        if self.sweep.durations.windows(2).any(|w| w[1] >= w[0]) {
            return bad("sweep.durations", "must be strictly descending".into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        for kind in ScenarioKind::ALL {
            ScenarioConfig::defaults_for(kind).validate().unwrap();
        }
    }

    #[test]
    fn protective_defaults() {
        let c = ScenarioConfig::defaults_for(ScenarioKind::Protective);
        assert_eq!((c.grid.n_x, c.grid.n_meter), (256, 256));
        assert_eq!(c.units.box_length, 1.0);
        assert_eq!(c.units.mass_meter, 100.0);
        assert_eq!(c.coupling.duration, 50.0);
    }

    #[test]
    fn validation_names_the_key() {
        let mut c = ScenarioConfig::defaults_for(ScenarioKind::WallRelease);
        c.release.domain_factor = 4.0;
        let msg = c.validate().unwrap_err().to_string();
        assert!(msg.contains("release.domain_factor"), "{msg}");
        let mut c = ScenarioConfig::defaults_for(ScenarioKind::AdiabaticSweep);
        c.sweep.durations = vec![1.0, 5.0];
        assert!(c.validate().unwrap_err().to_string().contains("sweep.durations"));
    }
}
