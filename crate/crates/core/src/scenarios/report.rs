//! Quantitative scenario outcomes with per-assertion tolerances.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::config::ScenarioKind;
use crate::grid::{Grid1D, Lattice, WaveFunction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// `value < target`
    Below,
    /// `value > target`
    Above,
    /// `|value - target| ≤ tolerance · |target|`
    Relative,
    /// `|value - target| ≤ tolerance`
    Absolute,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Assertion {
    pub name: String,
    pub value: f64,
    pub target: f64,
    pub tolerance: f64,
    pub comparison: Comparison,
    pub passed: bool,
}

impl Assertion {
    fn new(name: &str, value: f64, target: f64, tolerance: f64, comparison: Comparison) -> Self {
        let passed = match comparison {
            Comparison::Below => value < target,
            Comparison::Above => value > target,
            Comparison::Relative => (value - target).abs() <= tolerance * target.abs(),
            Comparison::Absolute => (value - target).abs() <= tolerance,
        };
        Self { name: name.to_string(), value, target, tolerance, comparison, passed }
    }

    pub fn below(name: &str, value: f64, bound: f64) -> Self {
        Self::new(name, value, bound, 0.0, Comparison::Below)
    }

    pub fn above(name: &str, value: f64, bound: f64) -> Self {
        Self::new(name, value, bound, 0.0, Comparison::Above)
    }

    pub fn relative(name: &str, value: f64, target: f64, tolerance: f64) -> Self {
        Self::new(name, value, target, tolerance, Comparison::Relative)
    }

    pub fn absolute(name: &str, value: f64, target: f64, tolerance: f64) -> Self {
        Self::new(name, value, target, tolerance, Comparison::Absolute)
    }

    /// Boolean outcome recorded as `value = 1` (true) against target 1.
    pub fn holds(name: &str, ok: bool) -> Self {
        Self::new(name, if ok { 1.0 } else { 0.0 }, 1.0, 0.0, Comparison::Absolute)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Column {
    pub name: String,
    pub unit: String,
}

/// Named table of plot-ready rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Series {
    pub name: String,
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<f64>>,
}

impl Series {
    pub fn new(name: &str, columns: &[(&str, &str)]) -> Self {
        Self {
            name: name.to_string(),
            columns: columns.iter().map(|(n, u)| Column { name: n.to_string(), unit: u.to_string() }).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// Raw wave function at one instant. Node order is x fastest, then X.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateSnapshot {
    pub time: f64,
    /// Points per axis.
    pub shape: Vec<usize>,
    /// `(min, max)` per axis.
    pub bounds: Vec<(f64, f64)>,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl StateSnapshot {
    pub fn of<G: Lattice>(psi: &WaveFunction<G>) -> Self {
        let g = psi.grid();
        let axes: Vec<&Grid1D> = (0..G::DIM).map(|k| g.axis(k)).collect();
        Self {
            time: psi.time(),
            shape: axes.iter().map(|a| a.n_points()).collect(),
            bounds: axes.iter().map(|a| (a.x_min(), a.x_max())).collect(),
            re: psi.values().iter().map(|z| z.re).collect(),
            im: psi.values().iter().map(|z| z.im).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub scenario: ScenarioKind,
    pub seed: u64,
    pub scalars: BTreeMap<String, f64>,
    pub assertions: Vec<Assertion>,
    pub series: Vec<Series>,
    pub warnings: Vec<String>,
    /// Hex digest of the configuration, filled in by the caller.
    pub config_hash: String,
    pub runtime_seconds: f64,
    /// Requested raw state snapshots; written as binary, never inlined in the JSON record.
    #[serde(skip)]
    pub snapshots: Vec<StateSnapshot>,
}

impl ScenarioReport {
    pub fn new(scenario: ScenarioKind, seed: u64) -> Self {
        Self {
            scenario,
            seed,
            scalars: BTreeMap::new(),
            assertions: Vec::new(),
            series: Vec::new(),
            warnings: Vec::new(),
            config_hash: String::new(),
            runtime_seconds: 0.0,
            snapshots: Vec::new(),
        }
    }

    /// Record a scalar; non-finite values are kept out of the table and noted.
    pub fn scalar(&mut self, name: &str, value: f64) {
        if value.is_finite() {
            self.scalars.insert(name.to_string(), value);
        } else {
            self.warnings.push(format!("{name} is not finite ({value})"));
        }
    }

    pub fn assert(&mut self, a: Assertion) {
        self.assertions.push(a);
    }

    pub fn all_passed(&self) -> bool {
        self.assertions.iter().all(|a| a.passed)
    }

    pub fn assertion(&self, name: &str) -> Option<&Assertion> {
        self.assertions.iter().find(|a| a.name == name)
    }

    pub fn series(&self, name: &str) -> Option<&Series> {
        self.series.iter().find(|s| s.name == name)
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.scalars.get(name).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comparisons() {
        assert!(Assertion::below("a", 1.0, 2.0).passed);
        assert!(!Assertion::below("a", 2.0, 2.0).passed);
        assert!(Assertion::relative("b", 0.195, 0.2, 0.05).passed);
        assert!(!Assertion::relative("b", 0.185, 0.2, 0.05).passed);
        assert!(Assertion::absolute("c", 0.51, 0.5, 0.02).passed);
        assert!(!Assertion::holds("d", false).passed);
    }

    #[test]
    fn non_finite_scalars_become_warnings() {
        let mut r = ScenarioReport::new(ScenarioKind::Protective, 0);
        r.scalar("x", f64::NAN);
        assert!(r.get("x").is_none());
        assert_eq!(r.warnings.len(), 1);
    }
}
