//! Uniform lattices, the unit system, wavefunction storage and the elementary
//! functionals (norms, inner products, interpolation) everything else builds on.
//!
//! All quadratures use the trapezoidal rule. A [`Grid2D`] stores its nodes with
//! the system coordinate `x` varying fastest: `idx = i_meter * n_x + i_x`.

use std::fmt::Debug;
use std::ops::{Add, Mul};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{BohmError, Result};

/// Smallest admissible number of nodes along an axis.
pub const MIN_POINTS: usize = 16;

/// Physical constants of a run. Natural units (`hbar = m = L = 1`) by default.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnitSystem {
    pub hbar: f64,
    /// Mass of the confined system particle.
    pub mass_m: f64,
    /// Mass of the meter (pointer) degree of freedom.
    #[serde(rename = "mass_M")]
    pub mass_meter: f64,
    pub box_length: f64,
}

impl Default for UnitSystem {
    fn default() -> Self {
        Self { hbar: 1.0, mass_m: 1.0, mass_meter: 100.0, box_length: 1.0 }
    }
}

impl UnitSystem {
    pub fn new(hbar: f64, mass_m: f64, mass_meter: f64, box_length: f64) -> Result<Self> {
        let units = Self { hbar, mass_m, mass_meter, box_length };
        units.validate()?;
        Ok(units)
    }

    pub fn validate(&self) -> Result<()> {
        let named = [("hbar", self.hbar), ("mass_m", self.mass_m), ("mass_M", self.mass_meter), ("box_length", self.box_length)];
        if let Some((key, v)) = named.iter().find(|(_, v)| !v.is_finite() || *v <= 0.0) {
            return Err(BohmError::InvalidConfig(format!("units.{key}: must be strictly positive, got {v}")));
        }
        if self.mass_meter < self.mass_m {
            return Err(BohmError::InvalidConfig(format!(
                "units.mass_M: meter mass {} must not be smaller than system mass {}",
                self.mass_meter, self.mass_m
            )));
        }
        Ok(())
    }

    /// Mass attached to configuration-space axis `axis` (0: system `x`, 1: meter `X`).
    pub fn axis_mass(&self, axis: usize) -> f64 {
        if axis == 0 {
            self.mass_m
        } else {
            self.mass_meter
        }
    }
}

/// Uniform 1D lattice including both end nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    x_min: f64,
    x_max: f64,
    n_points: usize,
    dx: f64,
    dt: f64,
}

/// Build a validated 1D grid.
pub fn make_grid(x_min: f64, x_max: f64, n_points: usize, dt: f64) -> Result<Grid1D> {
    Grid1D::new(x_min, x_max, n_points, dt)
}

impl Grid1D {
    pub fn new(x_min: f64, x_max: f64, n_points: usize, dt: f64) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite()) || x_max <= x_min {
            return Err(BohmError::InvalidConfig(format!(
                "grid extent must be positive, got [{x_min}, {x_max}]"
            )));
        }
        if n_points < MIN_POINTS {
            return Err(BohmError::InvalidConfig(format!(
                "grid needs at least {MIN_POINTS} points, got {n_points}"
            )));
        }
        if !dt.is_finite() || dt <= 0.0 {
            return Err(BohmError::InvalidConfig(format!("time step must be positive, got {dt}")));
        }
        let dx = (x_max - x_min) / (n_points - 1) as f64;
        Ok(Self { x_min, x_max, n_points, dx, dt })
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn extent(&self) -> f64 {
        self.x_max - self.x_min
    }

    /// Coordinate of node `i`.
    pub fn coord(&self, i: usize) -> f64 {
        if i + 1 == self.n_points {
            self.x_max
        } else {
            self.x_min + i as f64 * self.dx
        }
    }

    pub fn coords(&self) -> Vec<f64> {
        (0..self.n_points).map(|i| self.coord(i)).collect()
    }

    /// Trapezoidal quadrature weight of node `i`.
    pub fn weight(&self, i: usize) -> f64 {
        if i == 0 || i + 1 == self.n_points {
            0.5 * self.dx
        } else {
            self.dx
        }
    }

    pub fn with_dt(&self, dt: f64) -> Result<Self> {
        Self::new(self.x_min, self.x_max, self.n_points, dt)
    }

    /// Index of the node nearest to `x`, clamped to the grid.
    pub fn nearest(&self, x: f64) -> usize {
        let s = ((x - self.x_min) / self.dx).round();
        s.clamp(0.0, (self.n_points - 1) as f64) as usize
    }

    fn locate(&self, x: f64) -> (usize, f64, bool) {
        let clamped = x < self.x_min || x > self.x_max || !x.is_finite();
        let x = if x.is_finite() { x.clamp(self.x_min, self.x_max) } else { self.x_min };
        let s = (x - self.x_min) / self.dx;
        let i = (s.floor() as usize).min(self.n_points - 2);
        let w = (s - i as f64).clamp(0.0, 1.0);
        (i, w, clamped)
    }
}

/// Configuration space `(x, X)` of the system particle and the meter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid2D {
    axis_x: Grid1D,
    axis_meter: Grid1D,
    dt: f64,
}

impl Grid2D {
    pub fn new(axis_x: Grid1D, axis_meter: Grid1D) -> Result<Self> {
        if axis_x.dt != axis_meter.dt {
            return Err(BohmError::InvalidConfig(format!(
                "2D axes must share dt, got {} and {}",
                axis_x.dt, axis_meter.dt
            )));
        }
        Ok(Self { axis_x, axis_meter, dt: axis_x.dt })
    }

    pub fn axis_x(&self) -> &Grid1D {
        &self.axis_x
    }

    pub fn axis_meter(&self) -> &Grid1D {
        &self.axis_meter
    }

    pub fn nx(&self) -> usize {
        self.axis_x.n_points
    }

    pub fn n_meter(&self) -> usize {
        self.axis_meter.n_points
    }

    pub fn index(&self, i_x: usize, i_meter: usize) -> usize {
        i_meter * self.axis_x.n_points + i_x
    }

    pub fn with_dt(&self, dt: f64) -> Result<Self> {
        Self::new(self.axis_x.with_dt(dt)?, self.axis_meter.with_dt(dt)?)
    }
}

/// Common view of 1D and 2D lattices used by generic field and trajectory code.
pub trait Lattice: Clone + Copy + PartialEq + Debug + Send + Sync {
    const DIM: usize;

    fn axis(&self, k: usize) -> &Grid1D;

    /// Distance in the flat node array between neighbours along axis `k`.
    fn stride(&self, k: usize) -> usize;

    fn dt(&self) -> f64;

    fn len(&self) -> usize {
        (0..Self::DIM).map(|k| self.axis(k).n_points).product()
    }

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Per-axis node indices of a flat index.
    fn unravel(&self, idx: usize) -> [usize; 2] {
        let mut out = [0usize; 2];
        let mut rest = idx;
        for (k, slot) in out.iter_mut().enumerate().take(Self::DIM) {
            let n = self.axis(k).n_points;
            *slot = rest % n;
            rest /= n;
        }
        out
    }

    fn coords_of(&self, idx: usize) -> [f64; 2] {
        let ii = self.unravel(idx);
        let mut out = [0.0; 2];
        for k in 0..Self::DIM {
            out[k] = self.axis(k).coord(ii[k]);
        }
        out
    }

    /// Product trapezoidal weight of a flat index.
    fn weight(&self, idx: usize) -> f64 {
        let ii = self.unravel(idx);
        (0..Self::DIM).map(|k| self.axis(k).weight(ii[k])).product()
    }

    /// True when the node lies on any Dirichlet boundary.
    fn on_boundary(&self, idx: usize) -> bool {
        let ii = self.unravel(idx);
        (0..Self::DIM).any(|k| ii[k] == 0 || ii[k] + 1 == self.axis(k).n_points)
    }

    /// Trapezoidal integral of a nodal field.
    fn integrate(&self, field: &[f64]) -> f64 {
        field.iter().enumerate().map(|(i, v)| v * self.weight(i)).sum()
    }
}

impl Lattice for Grid1D {
    const DIM: usize = 1;

    fn axis(&self, _k: usize) -> &Grid1D {
        self
    }

    fn stride(&self, _k: usize) -> usize {
        1
    }

    fn dt(&self) -> f64 {
        self.dt
    }

    fn len(&self) -> usize {
        self.n_points
    }

    fn weight(&self, idx: usize) -> f64 {
        Grid1D::weight(self, idx)
    }
}

impl Lattice for Grid2D {
    const DIM: usize = 2;

    fn axis(&self, k: usize) -> &Grid1D {
        if k == 0 {
            &self.axis_x
        } else {
            &self.axis_meter
        }
    }

    fn stride(&self, k: usize) -> usize {
        if k == 0 {
            1
        } else {
            self.axis_x.n_points
        }
    }

    fn dt(&self) -> f64 {
        self.dt
    }
}

/// Complex amplitude sampled on a lattice at a given time.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveFunction<G: Lattice> {
    grid: G,
    values: Vec<Complex64>,
    time: f64,
}

pub type WaveFunction1D = WaveFunction<Grid1D>;
pub type WaveFunction2D = WaveFunction<Grid2D>;

impl<G: Lattice> WaveFunction<G> {
    pub fn new(grid: G, values: Vec<Complex64>, time: f64) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(BohmError::GridMismatch(format!(
                "{} values for a grid of {} nodes",
                values.len(),
                grid.len()
            )));
        }
        if values.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(BohmError::InvalidConfig("wavefunction has non-finite values".into()));
        }
        Ok(Self { grid, values, time })
    }

    /// Sample `f(coords)` on every node.
    pub fn from_fn(grid: G, time: f64, f: impl Fn([f64; 2]) -> Complex64) -> Result<Self> {
        let values = (0..grid.len()).map(|i| f(grid.coords_of(i))).collect();
        Self::new(grid, values, time)
    }

    pub fn grid(&self) -> &G {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn set_time(&mut self, time: f64) {
        self.time = time;
    }

    pub fn norm_sqr(&self) -> f64 {
        self.values.iter().enumerate().map(|(i, z)| z.norm_sqr() * self.grid.weight(i)).sum()
    }

    /// L² norm (trapezoidal).
    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Rescale to unit L² norm.
    pub fn normalize(&self) -> Result<Self> {
        let n = self.norm();
        if !(n > 0.0) || !n.is_finite() {
            return Err(BohmError::DegenerateState(format!("cannot normalize a field of norm {n}")));
        }
        Ok(self.scaled(Complex64::new(1.0 / n, 0.0)))
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self { grid: self.grid, values: self.values.iter().map(|z| z * c).collect(), time: self.time }
    }

    pub fn with_values(&self, values: Vec<Complex64>) -> Result<Self> {
        Self::new(self.grid, values, self.time)
    }
}

/// `⟨a|b⟩`, conjugate-linear in `a`, by trapezoidal quadrature.
pub fn inner_product<G: Lattice>(a: &WaveFunction<G>, b: &WaveFunction<G>) -> Result<Complex64> {
    if a.grid != b.grid {
        return Err(BohmError::GridMismatch("inner product of fields on different grids".into()));
    }
    let g = &a.grid;
    Ok(a.values
        .iter()
        .zip(&b.values)
        .enumerate()
        .map(|(i, (x, y))| x.conj() * y * g.weight(i))
        .sum())
}

/// Value interpolated off-node, with a flag set when the point had to be clamped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interpolated<T> {
    pub value: T,
    pub clamped: bool,
}

/// Piecewise-linear (1D) or bilinear (2D) interpolation, exact at nodes.
/// Points outside the grid are clamped to the boundary and flagged.
pub fn interpolate<G, T>(grid: &G, field: &[T], point: &[f64]) -> Interpolated<T>
where
    G: Lattice,
    T: Copy + Add<Output = T> + Mul<f64, Output = T>,
{
    let cell = locate_cell(grid, point);
    Interpolated { value: cell.combine(field), clamped: cell.clamped }
}

/// Interpolation stencil of a point: corner indices and their weights.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Cell {
    pub corners: [usize; 4],
    pub weights: [f64; 4],
    pub count: usize,
    pub clamped: bool,
}

impl Cell {
    pub fn combine<T>(&self, field: &[T]) -> T
    where
        T: Copy + Add<Output = T> + Mul<f64, Output = T>,
    {
        let mut acc = field[self.corners[0]] * self.weights[0];
        for c in 1..self.count {
            acc = acc + field[self.corners[c]] * self.weights[c];
        }
        acc
    }
}

pub(crate) fn locate_cell<G: Lattice>(grid: &G, point: &[f64]) -> Cell {
    let (i0, w0, c0) = grid.axis(0).locate(point[0]);
    if G::DIM == 1 {
        return Cell {
            corners: [i0, i0 + 1, 0, 0],
            weights: [1.0 - w0, w0, 0.0, 0.0],
            count: 2,
            clamped: c0,
        };
    }
    let (i1, w1, c1) = grid.axis(1).locate(point[1]);
    let s = grid.stride(1);
    let base = i1 * s + i0;
    Cell {
        corners: [base, base + 1, base + s, base + s + 1],
        weights: [(1.0 - w0) * (1.0 - w1), w0 * (1.0 - w1), (1.0 - w0) * w1, w0 * w1],
        count: 4,
        clamped: c0 || c1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn well_mode(grid: Grid1D, n: usize) -> WaveFunction1D {
        WaveFunction::from_fn(grid, 0.0, |p| {
            Complex64::new((2.0f64).sqrt() * (n as f64 * PI * p[0]).sin(), 0.0)
        })
        .unwrap()
    }

    #[test]
    fn make_grid_derives_spacing() {
        let g = make_grid(0.0, 1.0, 101, 1e-4).unwrap();
        assert!((g.dx() - 0.01).abs() < 1e-15);
        assert_eq!(g.coord(100), 1.0);
    }

    #[test]
    fn make_grid_rejects_bad_input() {
        assert!(matches!(make_grid(0.0, 1.0, 2, 1e-4), Err(BohmError::InvalidConfig(_))));
        assert!(matches!(make_grid(0.0, 0.0, 101, 1e-4), Err(BohmError::InvalidConfig(_))));
        assert!(matches!(make_grid(0.0, 1.0, 101, 0.0), Err(BohmError::InvalidConfig(_))));
    }

    #[test]
    fn unit_system_rejects_light_meter() {
        assert!(UnitSystem::new(1.0, 2.0, 1.0, 1.0).is_err());
        assert!(UnitSystem::new(1.0, 1.0, 100.0, -1.0).is_err());
        UnitSystem::default().validate().unwrap();
    }

    #[test]
    fn normalize_constant_and_scaled_mode() {
        let g = make_grid(0.0, 1.0, 101, 1e-4).unwrap();
        let c = WaveFunction::from_fn(g, 0.0, |_| Complex64::new(3.0, 0.0)).unwrap();
        let n = c.normalize().unwrap();
        assert!(n.values().iter().all(|z| (z.re - 1.0).abs() < 1e-12 && z.im == 0.0));

        let phi = well_mode(g, 1);
        let doubled = phi.scaled(Complex64::new(2.0, 0.0)).normalize().unwrap();
        for (a, b) in doubled.values().iter().zip(phi.values()) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn normalize_zero_field_is_degenerate() {
        let g = make_grid(0.0, 1.0, 101, 1e-4).unwrap();
        let z = WaveFunction::from_fn(g, 0.0, |_| Complex64::new(0.0, 0.0)).unwrap();
        assert!(matches!(z.normalize(), Err(BohmError::DegenerateState(_))));
    }

    #[test]
    fn inner_products_of_well_modes() {
        let g = make_grid(0.0, 1.0, 401, 1e-4).unwrap();
        let p1 = well_mode(g, 1);
        let p2 = well_mode(g, 2);
        assert!((inner_product(&p1, &p1).unwrap() - 1.0).norm() < 1e-6);
        assert!(inner_product(&p1, &p2).unwrap().norm() < 1e-4);
        let ip = p1.scaled(Complex64::i());
        assert!((inner_product(&p1, &ip).unwrap() - Complex64::i()).norm() < 1e-6);
    }

    #[test]
    fn inner_product_grid_mismatch() {
        let a = well_mode(make_grid(0.0, 1.0, 101, 1e-4).unwrap(), 1);
        let b = well_mode(make_grid(0.0, 1.0, 102, 1e-4).unwrap(), 1);
        assert!(matches!(inner_product(&a, &b), Err(BohmError::GridMismatch(_))));
    }

    #[test]
    fn interpolation_contract_1d() {
        let g = make_grid(0.0, 1.0, 101, 1e-4).unwrap();
        let ramp: Vec<f64> = g.coords();
        let at_node = interpolate(&g, &ramp, &[g.coord(37)]);
        assert_eq!(at_node.value, ramp[37]);
        assert!(!at_node.clamped);
        let mid = interpolate(&g, &ramp, &[0.5 * (g.coord(10) + g.coord(11))]);
        assert!((mid.value - 0.5 * (ramp[10] + ramp[11])).abs() < 1e-15);
        let out = interpolate(&g, &ramp, &[1.7]);
        assert_eq!(out.value, 1.0);
        assert!(out.clamped);
    }

    #[test]
    fn trapezoid_weights_2d_integrate_constant() {
        let ax = make_grid(0.0, 1.0, 33, 0.01).unwrap();
        let am = make_grid(-2.0, 2.0, 41, 0.01).unwrap();
        let g = Grid2D::new(ax, am).unwrap();
        let ones = vec![1.0; g.len()];
        assert!((g.integrate(&ones) - 4.0).abs() < 1e-12);
        assert_eq!(g.unravel(g.index(5, 7)), [5, 7]);
    }

    proptest! {
        #[test]
        fn normalize_is_idempotent(re in proptest::collection::vec(-5.0f64..5.0, 32),
                                   im in proptest::collection::vec(-5.0f64..5.0, 32)) {
            let g = make_grid(-1.0, 2.0, 32, 0.1).unwrap();
            let vals: Vec<Complex64> = re.iter().zip(&im).map(|(a, b)| Complex64::new(*a, *b)).collect();
            let psi = WaveFunction::new(g, vals, 0.0).unwrap();
            prop_assume!(psi.norm() > 1e-3);
            let once = psi.normalize().unwrap();
            let twice = once.normalize().unwrap();
            prop_assert!((once.norm() - 1.0).abs() < 1e-6);
            for (a, b) in once.values().iter().zip(twice.values()) {
                prop_assert!((a - b).norm() < 1e-12);
            }
            let self_ip = inner_product(&psi, &psi).unwrap();
            prop_assert!(self_ip.re >= 0.0 && self_ip.im.abs() <= 1e-12 * self_ip.re.max(1.0));
        }

        #[test]
        fn bilinear_reproduces_affine_fields(a in -3.0f64..3.0, b in -3.0f64..3.0, c in -3.0f64..3.0,
                                             px in 0.0f64..1.0, pm in -2.0f64..2.0) {
            let g = Grid2D::new(make_grid(0.0, 1.0, 21, 0.1).unwrap(),
                                make_grid(-2.0, 2.0, 17, 0.1).unwrap()).unwrap();
            let field: Vec<f64> = (0..g.len()).map(|i| {
                let p = g.coords_of(i);
                a + b * p[0] + c * p[1]
            }).collect();
            let got = interpolate(&g, &field, &[px, pm]);
            prop_assert!((got.value - (a + b * px + c * pm)).abs() < 1e-12);
            prop_assert!(!got.clamped);
        }
    }
}
