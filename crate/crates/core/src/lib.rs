//! Numerical laboratory for de Broglie–Bohm trajectories: grids, Schrödinger
//! propagation, Bohmian fields, trajectory ensembles and the named scenarios.

pub mod error;
pub mod fields;
pub mod grid;
pub mod scenarios;
pub mod spectral;
pub mod tdse;
pub mod trajectories;

pub use error::{BohmError, Result};
pub use grid::{
    inner_product, interpolate, make_grid, Grid1D, Grid2D, Interpolated, Lattice, UnitSystem, WaveFunction,
    WaveFunction1D, WaveFunction2D,
};
pub use num_complex::Complex64;
pub use scenarios::{Assertion, ScenarioConfig, ScenarioKind, ScenarioReport, Series};
pub use tdse::{DeltaCoupling, Potential, SwitchingProfile};
