//! Stationary states and norm-preserving time propagation of the Schrödinger
//! equation on 1D grids and on the 2D `(x, X)` system/meter configuration space.
//!
//! Every grid edge is a Dirichlet wall (`Ψ = 0`), so the infinite well needs no
//! potential at all: it is the zero potential on a grid spanning `[0, L]`.

mod eigen;
mod propagate;
pub(crate) mod tridiag;

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{BohmError, Result};
use crate::grid::{Grid1D, Grid2D, Lattice, UnitSystem, WaveFunction, WaveFunction1D};

pub use eigen::{slope_jump, slope_jump_with_support, solve_stationary, EigenSolution};
pub use propagate::{
    energy_expectation_1d, gaussian_packet, product_state, propagate_1d, propagate_2d, Propagator1D, Propagator2D,
    METER_EDGE_AMPLITUDE, NORM_DRIFT_PER_1000,
};

/// Width of the regularized delta in units of the grid spacing.
pub const DEFAULT_DELTA_WIDTH: f64 = 2.0;
/// Truncation of the regularized delta, in standard deviations.
pub const DELTA_TRUNCATION: f64 = 6.0;
/// Fewest nodes per half-wavelength accepted for a well mode.
pub const MIN_NODES_PER_HALF_WAVE: f64 = 8.0;
/// Upper bound on `dt * max|V| / hbar` accepted by the propagators.
pub const PHASE_STEP_GUARD: f64 = 0.5;

/// Time profile `g(t)` of a system–meter coupling, normalized to `∫ g dt = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SwitchingProfile {
    /// `g(t) = δ(t)`; applied as an exact unitary kick, never as a potential.
    Impulsive,
    /// `g(t) = (2/T) sin²(π(t + T/2)/T)` on `[-T/2, T/2]`, zero outside.
    AdiabaticWindow { duration: f64 },
}

impl SwitchingProfile {
    pub fn window(duration: f64) -> Result<Self> {
        if !duration.is_finite() || duration <= 0.0 {
            return Err(BohmError::InvalidConfig(format!(
                "switching duration must be positive, got {duration}"
            )));
        }
        Ok(SwitchingProfile::AdiabaticWindow { duration })
    }

    /// `g(t)`. The impulsive profile has no pointwise value and returns 0.
    pub fn g(&self, t: f64) -> f64 {
        match *self {
            SwitchingProfile::Impulsive => 0.0,
            SwitchingProfile::AdiabaticWindow { duration } => {
                let half = 0.5 * duration;
                if t < -half || t > half {
                    0.0
                } else {
                    let s = (PI * (t + half) / duration).sin();
                    2.0 / duration * s * s
                }
            }
        }
    }

    /// Largest value of `g` (infinite for the impulsive profile).
    pub fn peak(&self) -> f64 {
        match *self {
            SwitchingProfile::Impulsive => f64::INFINITY,
            SwitchingProfile::AdiabaticWindow { duration } => 2.0 / duration,
        }
    }

    /// `∫_{-∞}^{t} g(t') dt'` in closed form.
    pub fn cumulative(&self, t: f64) -> f64 {
        match *self {
            SwitchingProfile::Impulsive => {
                if t >= 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
            SwitchingProfile::AdiabaticWindow { duration } => {
                let half = 0.5 * duration;
                if t <= -half {
                    0.0
                } else if t >= half {
                    1.0
                } else {
                    let u = t + half;
                    (u - duration / (2.0 * PI) * (2.0 * PI * u / duration).sin()) / duration
                }
            }
        }
    }

    /// Interval outside which `g` vanishes.
    pub fn support(&self) -> (f64, f64) {
        match *self {
            SwitchingProfile::Impulsive => (0.0, 0.0),
            SwitchingProfile::AdiabaticWindow { duration } => (-0.5 * duration, 0.5 * duration),
        }
    }
}

/// Short-range coupling `-hbar ε g(t) δ(x - x0) X` between the confined particle
/// and the meter coordinate `X`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaCoupling {
    pub x0: f64,
    pub epsilon: f64,
    pub switching: SwitchingProfile,
    /// Regularization width `σ_δ` in grid spacings.
    pub width_factor: f64,
}

impl DeltaCoupling {
    pub fn new(x0: f64, epsilon: f64, switching: SwitchingProfile) -> Self {
        Self { x0, epsilon, switching, width_factor: DEFAULT_DELTA_WIDTH }
    }

    /// Regularized `δ(x - x0)` on the system axis.
    pub fn profile(&self, axis: &Grid1D) -> Result<Vec<f64>> {
        regularized_delta_with_width(self.x0, axis, self.width_factor * axis.dx())
    }

    /// Coefficient multiplying the delta profile: `-hbar ε g(t) X`.
    pub fn strength(&self, units: &UnitSystem, t: f64, meter: f64) -> f64 {
        -units.hbar * self.epsilon * self.switching.g(t) * meter
    }

    /// The coupling with time and meter position frozen, as a static 1D profile.
    pub fn frozen(&self, axis: &Grid1D, units: &UnitSystem, t: f64, meter: f64) -> Result<Potential> {
        let s = self.strength(units, t, meter);
        Ok(Potential::Static(self.profile(axis)?.into_iter().map(|d| s * d).collect()))
    }
}

/// Evaluator `V(x, X, t)`; 1D propagation calls it with `X = 0`.
pub type PotentialFn = Arc<dyn Fn(f64, f64, f64) -> f64 + Send + Sync>;

/// External potential acting on a wavefunction.
#[derive(Clone)]
pub enum Potential {
    /// Zero potential inside Dirichlet walls at the grid ends.
    InfiniteWell,
    /// Time-independent values sampled on the lattice (flat node order).
    Static(Vec<f64>),
    /// Regularized delta coupling to the meter coordinate; 2D only.
    DeltaCoupling(DeltaCoupling),
    /// Arbitrary time-dependent evaluator.
    Composite(PotentialFn),
}

impl fmt::Debug for Potential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Potential::InfiniteWell => write!(f, "InfiniteWell"),
            Potential::Static(v) => write!(f, "Static({} nodes)", v.len()),
            Potential::DeltaCoupling(c) => write!(f, "DeltaCoupling({c:?})"),
            Potential::Composite(_) => write!(f, "Composite(..)"),
        }
    }
}

impl Potential {
    pub fn is_static(&self) -> bool {
        matches!(self, Potential::InfiniteWell | Potential::Static(_))
    }

    /// Nodal values on a 1D grid at time `t`.
    pub fn sample_1d(&self, grid: &Grid1D, t: f64) -> Result<Vec<f64>> {
        match self {
            Potential::InfiniteWell => Ok(vec![0.0; grid.n_points()]),
            Potential::Static(v) => {
                check_len(v.len(), grid.n_points())?;
                Ok(v.clone())
            }
            Potential::DeltaCoupling(_) => Err(BohmError::InvalidConfig(
                "delta coupling needs a meter coordinate; freeze it with DeltaCoupling::frozen".into(),
            )),
            Potential::Composite(f) => Ok(grid.coords().into_iter().map(|x| f(x, 0.0, t)).collect()),
        }
    }

    /// Nodal values on the 2D configuration space at time `t`.
    pub fn sample_2d(&self, grid: &Grid2D, units: &UnitSystem, t: f64) -> Result<Vec<f64>> {
        match self {
            Potential::InfiniteWell => Ok(vec![0.0; grid.len()]),
            Potential::Static(v) => {
                check_len(v.len(), grid.len())?;
                Ok(v.clone())
            }
            Potential::DeltaCoupling(c) => {
                let delta = c.profile(grid.axis_x())?;
                let mut out = vec![0.0; grid.len()];
                for j in 0..grid.n_meter() {
                    let s = c.strength(units, t, grid.axis_meter().coord(j));
                    let row = &mut out[j * grid.nx()..(j + 1) * grid.nx()];
                    for (o, d) in row.iter_mut().zip(&delta) {
                        *o = s * d;
                    }
                }
                Ok(out)
            }
            Potential::Composite(f) => Ok((0..grid.len())
                .map(|i| {
                    let p = grid.coords_of(i);
                    f(p[0], p[1], t)
                })
                .collect()),
        }
    }
}

fn check_len(got: usize, want: usize) -> Result<()> {
    if got != want {
        return Err(BohmError::GridMismatch(format!("potential has {got} values for {want} nodes")));
    }
    Ok(())
}

/// `sqrt(2/L) sin(nπx/L)` inside `[0, L]`, zero outside.
pub fn well_mode_value(n: usize, box_length: f64, x: f64) -> f64 {
    if x <= 0.0 || x >= box_length {
        return 0.0;
    }
    (2.0 / box_length).sqrt() * (n as f64 * PI * x / box_length).sin()
}

/// `E_n = (hbar n π / L)² / (2m)`.
pub fn well_energy(n: usize, units: &UnitSystem) -> f64 {
    let p = units.hbar * n as f64 * PI / units.box_length;
    p * p / (2.0 * units.mass_m)
}

/// Analytic eigenstate `n` of the infinite well sampled on a grid spanning `[0, L]`.
pub fn well_eigenstate(n: usize, grid: &Grid1D, units: &UnitSystem) -> Result<(WaveFunction1D, f64)> {
    if n == 0 {
        return Err(BohmError::InvalidConfig("well quantum number must be >= 1".into()));
    }
    let tol = 1e-9 * units.box_length;
    if grid.x_min().abs() > tol || (grid.x_max() - units.box_length).abs() > tol {
        return Err(BohmError::Geometry(format!(
            "grid [{}, {}] does not span the well [0, {}]",
            grid.x_min(),
            grid.x_max(),
            units.box_length
        )));
    }
    check_mode_resolution(n, grid, units.box_length)?;
    let psi = sample_well_mode(n, grid, units.box_length)?;
    Ok((psi, well_energy(n, units)))
}

/// Well mode `n` of a box `[0, L]` sampled on an arbitrary (possibly larger) grid.
pub fn sample_well_mode(n: usize, grid: &Grid1D, box_length: f64) -> Result<WaveFunction1D> {
    WaveFunction::from_fn(*grid, 0.0, |p| Complex64::new(well_mode_value(n, box_length, p[0]), 0.0))
}

/// Exact impulsive coupling `exp(i ε a X)` applied to a meter wavefunction:
/// shifts its momentum by `hbar ε a`.
pub fn impulsive_kick(meter: &WaveFunction1D, epsilon: f64, a: f64) -> Result<WaveFunction1D> {
    let grid = meter.grid();
    let values = meter
        .values()
        .iter()
        .enumerate()
        .map(|(i, z)| z * Complex64::from_polar(1.0, epsilon * a * grid.coord(i)))
        .collect();
    meter.with_values(values)
}

pub fn check_mode_resolution(n: usize, grid: &Grid1D, box_length: f64) -> Result<()> {
    let per_half_wave = box_length / n as f64 / grid.dx();
    if per_half_wave < MIN_NODES_PER_HALF_WAVE {
        return Err(BohmError::Resolution(format!(
            "mode {n} has {per_half_wave:.2} nodes per half-wavelength, need {MIN_NODES_PER_HALF_WAVE}"
        )));
    }
    Ok(())
}

/// Unit-integral Gaussian of width `2 dx` centred on `x0`, truncated at ±6σ.
pub fn regularized_delta(x0: f64, grid: &Grid1D) -> Result<Vec<f64>> {
    regularized_delta_with_width(x0, grid, DEFAULT_DELTA_WIDTH * grid.dx())
}

/// Regularized delta with an explicit standard deviation `sigma`.
pub fn regularized_delta_with_width(x0: f64, grid: &Grid1D, sigma: f64) -> Result<Vec<f64>> {
    let margin = 4.0 * grid.dx();
    if x0 - grid.x_min() < margin || grid.x_max() - x0 < margin {
        return Err(BohmError::Geometry(format!(
            "delta at {x0} is closer than 4 dx to a wall of [{}, {}]",
            grid.x_min(),
            grid.x_max()
        )));
    }
    if !(sigma > 0.0) {
        return Err(BohmError::InvalidConfig(format!("delta width must be positive, got {sigma}")));
    }
    let cut = DELTA_TRUNCATION * sigma;
    let mut field: Vec<f64> = grid
        .coords()
        .into_iter()
        .enumerate()
        .map(|(i, x)| {
            let u = x - x0;
            if u.abs() > cut || i == 0 || i + 1 == grid.n_points() {
                0.0
            } else {
                (-0.5 * u * u / (sigma * sigma)).exp()
            }
        })
        .collect();
    let total = grid.integrate(&field);
    if !(total > 0.0) {
        return Err(BohmError::Resolution(format!("delta of width {sigma} has no support on the grid")));
    }
    field.iter_mut().for_each(|v| *v /= total);
    Ok(field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{inner_product, make_grid};

    #[test]
    fn kick_shifts_momentum_and_keeps_density() {
        let grid = make_grid(-60.0, 60.0, 1024, 0.01).unwrap();
        let meter = gaussian_packet(&grid, 0.0, 3.0, 0.0, 1.0).unwrap();
        let kicked = impulsive_kick(&meter, -0.4, 0.5).unwrap();
        for (a, b) in meter.values().iter().zip(kicked.values()) {
            assert!((a.norm() - b.norm()).abs() < 1e-15);
        }
        let p = crate::spectral::momentum_density(kicked.values(), &grid, 1.0, 4).mean();
        assert!((p + 0.2).abs() < 1e-6, "{p}");
    }

    #[test]
    fn window_integrates_to_one() {
        let w = SwitchingProfile::window(50.0).unwrap();
        // composite Simpson as an independent check of the closed form
        let n = 20_000;
        let h = 50.0 / n as f64;
        let mut s = w.g(-25.0) + w.g(25.0);
        for i in 1..n {
            let t = -25.0 + i as f64 * h;
            s += if i % 2 == 1 { 4.0 } else { 2.0 } * w.g(t);
        }
        assert!((s * h / 3.0 - 1.0).abs() < 1e-8);
        assert!((w.cumulative(25.0) - 1.0).abs() < 1e-15);
        assert!((w.cumulative(0.0) - 0.5).abs() < 1e-15);
        assert_eq!(w.g(30.0), 0.0);
        assert!((w.peak() - w.g(0.0)).abs() < 1e-15);
    }

    #[test]
    fn well_ground_state_energy_and_nodes() {
        let units = UnitSystem::default();
        let grid = make_grid(0.0, 1.0, 401, 1e-4).unwrap();
        let (phi1, e1) = well_eigenstate(1, &grid, &units).unwrap();
        assert!((e1 - 4.934802200544679).abs() < 1e-12);
        assert_eq!(phi1.values()[0].norm(), 0.0);
        let (phi2, _) = well_eigenstate(2, &grid, &units).unwrap();
        assert!(phi2.values()[200].norm() < 1e-14);
    }

    #[test]
    fn unresolved_mode_is_rejected() {
        let units = UnitSystem::default();
        let grid = make_grid(0.0, 1.0, 101, 1e-4).unwrap();
        assert!(matches!(well_eigenstate(13, &grid, &units), Err(BohmError::Resolution(_))));
        assert!(well_eigenstate(12, &grid, &units).is_ok());
    }

    #[test]
    fn regularized_delta_contract() {
        let grid = make_grid(0.0, 1.0, 801, 1e-4).unwrap();
        let d = regularized_delta(0.5, &grid).unwrap();
        assert!((grid.integrate(&d) - 1.0).abs() < 1e-8);
        for k in 1..30 {
            assert!((d[400 - k] - d[400 + k]).abs() < 1e-10 * d[400]);
        }
        let units = UnitSystem::default();
        let (phi, _) = well_eigenstate(1, &grid, &units).unwrap();
        let weighted = phi.with_values(phi.values().iter().zip(&d).map(|(z, w)| z * *w).collect()).unwrap();
        let m = inner_product(&phi, &weighted).unwrap().re;
        assert!((m - 2.0).abs() < 0.02, "matrix element {m}");
        assert!(matches!(regularized_delta(0.002, &grid), Err(BohmError::Geometry(_))));
    }

    #[test]
    fn delta_matrix_element_converges_quadratically_in_width() {
        // |φ1(x0)|² = 2 sin²(π x0); the smoothing error is O(σ²)
        let units = UnitSystem::default();
        let x0 = 0.3;
        let exact = 2.0 * (PI * x0).sin().powi(2);
        let mut errs = Vec::new();
        for n in [201usize, 401, 801] {
            let grid = make_grid(0.0, 1.0, n, 1e-4).unwrap();
            let (phi, _) = well_eigenstate(1, &grid, &units).unwrap();
            let d = regularized_delta(x0, &grid).unwrap();
            let m: f64 = (0..n).map(|i| phi.values()[i].norm_sqr() * d[i] * grid.weight(i)).sum();
            errs.push((m - exact).abs());
        }
        assert!(errs[1] < errs[0] / 3.0 && errs[2] < errs[1] / 3.0, "{errs:?}");
    }

    #[test]
    fn delta_coupling_integrates_to_strength() {
        let units = UnitSystem::default();
        let ax = make_grid(0.0, 1.0, 129, 0.01).unwrap();
        let am = make_grid(-10.0, 10.0, 33, 0.01).unwrap();
        let g2 = Grid2D::new(ax, am).unwrap();
        let c = DeltaCoupling::new(0.4, 0.1, SwitchingProfile::window(10.0).unwrap());
        let v = Potential::DeltaCoupling(c).sample_2d(&g2, &units, 1.0).unwrap();
        for j in [3usize, 20, 30] {
            let row = &v[j * ax.n_points()..(j + 1) * ax.n_points()];
            let integral = ax.integrate(row);
            let want = c.switching.g(1.0) * (-units.hbar * c.epsilon * am.coord(j));
            assert!((integral - want).abs() <= 1e-6 * want.abs().max(1e-300));
        }
    }
}
