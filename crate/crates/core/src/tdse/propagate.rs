//! Crank–Nicolson propagation in 1D and Strang-split ADI propagation in 2D.
//!
//! Each elementary update is a Cayley transform `(1 + iαH)^{-1}(1 - iαH)` of a
//! Hermitian tridiagonal `H`, hence unitary to round-off.

use num_complex::Complex64;
use rayon::prelude::*;

use super::tridiag::{cayley_rhs, CayleyFactor};
use super::{DeltaCoupling, Potential, PotentialFn, PHASE_STEP_GUARD};
use crate::error::{BohmError, Result};
use crate::grid::{Grid1D, Grid2D, Lattice, UnitSystem, WaveFunction, WaveFunction1D, WaveFunction2D};

/// Allowed norm drift per 1000 steps.
pub const NORM_DRIFT_PER_1000: f64 = 1e-6;
/// Largest amplitude tolerated next to the meter-axis walls.
pub const METER_EDGE_AMPLITUDE: f64 = 1e-6;

fn norm_budget(steps: usize) -> f64 {
    NORM_DRIFT_PER_1000 * (steps as f64 / 1000.0 + 1.0)
}

fn check_normalized(norm: f64) -> Result<()> {
    if (norm - 1.0).abs() > 1e-6 {
        return Err(BohmError::Precondition(format!("propagation needs a normalized state, norm = {norm}")));
    }
    Ok(())
}

fn check_phase_guard(dt: f64, max_v: f64, hbar: f64) -> Result<()> {
    let ratio = dt * max_v / hbar;
    if ratio >= PHASE_STEP_GUARD {
        return Err(BohmError::Precondition(format!(
            "dt max|V| / hbar = {ratio:.3} exceeds {PHASE_STEP_GUARD}; reduce dt"
        )));
    }
    Ok(())
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

/// Stepwise Crank–Nicolson integrator for a 1D wavefunction.
#[derive(Debug)]
pub struct Propagator1D {
    psi: WaveFunction1D,
    potential: Potential,
    units: UnitSystem,
    alpha: f64,
    kinetic: f64,
    diag: Vec<f64>,
    factor: CayleyFactor,
    rhs: Vec<Complex64>,
    steps: usize,
    initial_norm: f64,
}

impl Propagator1D {
    pub fn new(psi: WaveFunction1D, potential: Potential, units: UnitSystem) -> Result<Self> {
        units.validate()?;
        let initial_norm = psi.norm();
        check_normalized(initial_norm)?;
        let grid = *psi.grid();
        let alpha = grid.dt() / (2.0 * units.hbar);
        let kinetic = units.hbar * units.hbar / (units.mass_m * grid.dx() * grid.dx());
        let n = grid.n_points();
        let mut prop = Self {
            psi,
            potential,
            units,
            alpha,
            kinetic,
            diag: vec![0.0; n - 2],
            factor: CayleyFactor::new(alpha, &vec![kinetic; n - 2], -0.5 * kinetic),
            rhs: vec![Complex64::new(0.0, 0.0); n - 2],
            steps: 0,
            initial_norm,
        };
        if prop.potential.is_static() {
            prop.load_potential(0.0)?;
        }
        Ok(prop)
    }

    fn load_potential(&mut self, t: f64) -> Result<()> {
        let grid = *self.psi.grid();
        let v = self.potential.sample_1d(&grid, t)?;
        check_phase_guard(grid.dt(), max_abs(&v), self.units.hbar)?;
        for (d, vj) in self.diag.iter_mut().zip(&v[1..v.len() - 1]) {
            *d = self.kinetic + vj;
        }
        self.factor.refactor(self.alpha, &self.diag);
        Ok(())
    }

    /// Advance by one time step; time-dependent potentials are taken at the midpoint.
    pub fn step(&mut self) -> Result<()> {
        let dt = self.psi.grid().dt();
        let t = self.psi.time();
        if !self.potential.is_static() {
            self.load_potential(t + 0.5 * dt)?;
        }
        cayley_rhs(self.alpha, &self.diag, -0.5 * self.kinetic, self.psi.values(), &mut self.rhs);
        self.factor.solve(&mut self.rhs);
        let n = self.rhs.len();
        let vals = self.psi.values_mut();
        vals[1..=n].copy_from_slice(&self.rhs);
        vals[0] = Complex64::new(0.0, 0.0);
        vals[n + 1] = Complex64::new(0.0, 0.0);
        self.steps += 1;
        self.psi.set_time(t + dt);
        Ok(())
    }

    pub fn state(&self) -> &WaveFunction1D {
        &self.psi
    }

    pub fn into_state(self) -> WaveFunction1D {
        self.psi
    }

    pub fn steps_taken(&self) -> usize {
        self.steps
    }

    pub fn check_integrity(&self) -> Result<()> {
        let drift = (self.psi.norm() - self.initial_norm).abs();
        if drift > norm_budget(self.steps) {
            return Err(BohmError::PropagationIntegrity(format!(
                "norm drift {drift:e} after {} steps",
                self.steps
            )));
        }
        Ok(())
    }
}

/// Propagate `steps` time steps, returning the initial state, every
/// `snapshot_every`-th state and the final state.
pub fn propagate_1d(
    psi: &WaveFunction1D,
    potential: &Potential,
    units: &UnitSystem,
    steps: usize,
    snapshot_every: usize,
) -> Result<Vec<WaveFunction1D>> {
    let every = snapshot_every.max(1);
    let mut prop = Propagator1D::new(psi.clone(), potential.clone(), *units)?;
    let mut out = vec![psi.clone()];
    for s in 1..=steps {
        prop.step()?;
        if s % every == 0 || s == steps {
            prop.check_integrity()?;
            out.push(prop.state().clone());
        }
    }
    Ok(out)
}

enum Sampler {
    Zero,
    Static(Vec<f64>),
    Delta { delta: Vec<f64>, coupling: DeltaCoupling },
    Closure(PotentialFn),
}

/// Strang-split ADI integrator on the `(x, X)` configuration space:
/// half step along `x` (kinetic + potential), full step along `X` (kinetic),
/// half step along `x`.
pub struct Propagator2D {
    psi: WaveFunction2D,
    units: UnitSystem,
    sampler: Sampler,
    kin_x: f64,
    kin_m: f64,
    alpha_half: f64,
    row_diag: Vec<f64>,
    row_factors: Vec<CayleyFactor>,
    meter_factor: CayleyFactor,
    work: Vec<Complex64>,
    steps: usize,
    initial_norm: f64,
    factors_current: bool,
}

impl Propagator2D {
    pub fn new(psi: WaveFunction2D, potential: Potential, units: UnitSystem) -> Result<Self> {
        units.validate()?;
        let initial_norm = psi.norm();
        check_normalized(initial_norm)?;
        let grid = *psi.grid();
        let dt = grid.dt();
        let dx = grid.axis_x().dx();
        let dm = grid.axis_meter().dx();
        let kin_x = units.hbar * units.hbar / (units.mass_m * dx * dx);
        let kin_m = units.hbar * units.hbar / (units.mass_meter * dm * dm);
        let sampler = match potential {
            Potential::InfiniteWell => Sampler::Zero,
            Potential::Static(v) => {
                if v.len() != grid.len() {
                    return Err(BohmError::GridMismatch(format!(
                        "potential has {} values for {} nodes",
                        v.len(),
                        grid.len()
                    )));
                }
                Sampler::Static(v)
            }
            Potential::DeltaCoupling(c) => Sampler::Delta { delta: c.profile(grid.axis_x())?, coupling: c },
            Potential::Composite(f) => Sampler::Closure(f),
        };
        let nx = grid.nx();
        let nm = grid.n_meter();
        let alpha_half = 0.5 * dt / (2.0 * units.hbar);
        let base = vec![kin_x; nx - 2];
        let row_factors = (0..nm).map(|_| CayleyFactor::new(alpha_half, &base, -0.5 * kin_x)).collect();
        let meter_factor = CayleyFactor::new(dt / (2.0 * units.hbar), &vec![kin_m; nm - 2], -0.5 * kin_m);
        Ok(Self {
            psi,
            units,
            sampler,
            kin_x,
            kin_m,
            alpha_half,
            row_diag: vec![0.0; grid.len()],
            row_factors,
            meter_factor,
            work: vec![Complex64::new(0.0, 0.0); grid.len()],
            steps: 0,
            initial_norm,
            factors_current: false,
        })
    }

    fn is_static(&self) -> bool {
        matches!(self.sampler, Sampler::Zero | Sampler::Static(_))
    }

    /// Fill `row_diag` with `kin_x + V(x, X, t)` and refactor every row.
    fn load_potential(&mut self, t: f64) -> Result<()> {
        let grid = *self.psi.grid();
        let nx = grid.nx();
        let max_v = match &self.sampler {
            Sampler::Zero => {
                self.row_diag.iter_mut().for_each(|d| *d = self.kin_x);
                0.0
            }
            Sampler::Static(v) => {
                for (d, vi) in self.row_diag.iter_mut().zip(v) {
                    *d = self.kin_x + vi;
                }
                max_abs(v)
            }
            Sampler::Delta { delta, coupling } => {
                let mut max_s = 0.0f64;
                for j in 0..grid.n_meter() {
                    let s = coupling.strength(&self.units, t, grid.axis_meter().coord(j));
                    max_s = max_s.max(s.abs());
                    let row = &mut self.row_diag[j * nx..(j + 1) * nx];
                    for (d, dl) in row.iter_mut().zip(delta) {
                        *d = self.kin_x + s * dl;
                    }
                }
                max_s * max_abs(delta)
            }
            Sampler::Closure(f) => {
                let mut m = 0.0f64;
                for (idx, d) in self.row_diag.iter_mut().enumerate() {
                    let p = grid.coords_of(idx);
                    let v = f(p[0], p[1], t);
                    m = m.max(v.abs());
                    *d = self.kin_x + v;
                }
                m
            }
        };
        check_phase_guard(grid.dt(), max_v, self.units.hbar)?;
        let alpha = self.alpha_half;
        let diag = &self.row_diag;
        self.row_factors.par_iter_mut().enumerate().for_each(|(j, f)| {
            f.refactor(alpha, &diag[j * nx + 1..(j + 1) * nx - 1]);
        });
        self.factors_current = true;
        Ok(())
    }

    fn half_step_x(&mut self) {
        let nx = self.psi.grid().nx();
        let nm = self.psi.grid().n_meter();
        let alpha = self.alpha_half;
        let off = -0.5 * self.kin_x;
        let diag = &self.row_diag;
        let factors = &self.row_factors;
        self.psi
            .values_mut()
            .par_chunks_mut(nx)
            .enumerate()
            .filter(|(j, _)| *j > 0 && *j + 1 < nm)
            .for_each(|(j, row)| {
                let mut rhs = vec![Complex64::new(0.0, 0.0); nx - 2];
                cayley_rhs(alpha, &diag[j * nx + 1..(j + 1) * nx - 1], off, row, &mut rhs);
                factors[j].solve(&mut rhs);
                row[1..nx - 1].copy_from_slice(&rhs);
            });
    }

    /// Full step along the meter axis; the operator is identical for every
    /// column, so the Thomas sweep runs row by row over all columns at once.
    fn full_step_meter(&mut self) {
        let nx = self.psi.grid().nx();
        let nm = self.psi.grid().n_meter();
        let alpha = self.psi.grid().dt() / (2.0 * self.units.hbar);
        let diag = self.kin_m;
        let off = -0.5 * self.kin_m;
        let f = &self.meter_factor;
        let psi = self.psi.values();
        let work = &mut self.work;
        let minus_i_alpha = Complex64::new(0.0, -alpha);
        // right-hand side + forward elimination
        for j in 1..nm - 1 {
            let r = j - 1;
            let inv = f.inv_pivot(r);
            let (done, rest) = work.split_at_mut(j * nx);
            let prev = &done[(j - 1) * nx..j * nx];
            let cur = &mut rest[..nx];
            let above = &psi[(j - 1) * nx..j * nx];
            let here = &psi[j * nx..(j + 1) * nx];
            let below = &psi[(j + 1) * nx..(j + 2) * nx];
            let coupling = f.off();
            for i in 0..nx {
                let h = here[i] * diag + (above[i] + below[i]) * off;
                let rhs = here[i] + minus_i_alpha * h;
                let p = if r == 0 { Complex64::new(0.0, 0.0) } else { prev[i] };
                cur[i] = (rhs - coupling * p) * inv;
            }
        }
        // back substitution
        for j in (1..nm - 2).rev() {
            let u = f.upper(j - 1);
            let (head, tail) = work.split_at_mut((j + 1) * nx);
            let cur = &mut head[j * nx..];
            let next = &tail[..nx];
            for i in 0..nx {
                cur[i] -= u * next[i];
            }
        }
        let zero = Complex64::new(0.0, 0.0);
        let vals = self.psi.values_mut();
        vals[nx..(nm - 1) * nx].copy_from_slice(&work[nx..(nm - 1) * nx]);
        for j in 1..nm - 1 {
            vals[j * nx] = zero;
            vals[j * nx + nx - 1] = zero;
        }
    }

    pub fn step(&mut self) -> Result<()> {
        let dt = self.psi.grid().dt();
        let t = self.psi.time();
        if !self.is_static() || !self.factors_current {
            self.load_potential(t + 0.5 * dt)?;
        }
        self.half_step_x();
        self.full_step_meter();
        self.half_step_x();
        self.steps += 1;
        self.psi.set_time(t + dt);
        Ok(())
    }

    pub fn state(&self) -> &WaveFunction2D {
        &self.psi
    }

    pub fn into_state(self) -> WaveFunction2D {
        self.psi
    }

    pub fn steps_taken(&self) -> usize {
        self.steps
    }

    /// Largest amplitude on the meter rows adjacent to the `X` walls.
    pub fn meter_edge_amplitude(&self) -> f64 {
        meter_edge_amplitude(&self.psi)
    }

    pub fn check_integrity(&self) -> Result<()> {
        let drift = (self.psi.norm() - self.initial_norm).abs();
        if drift > norm_budget(self.steps) {
            return Err(BohmError::PropagationIntegrity(format!(
                "norm drift {drift:e} after {} steps",
                self.steps
            )));
        }
        let edge = self.meter_edge_amplitude();
        if edge > METER_EDGE_AMPLITUDE {
            return Err(BohmError::DomainTooSmall(format!(
                "amplitude {edge:e} at the meter-axis walls (limit {METER_EDGE_AMPLITUDE:e})"
            )));
        }
        Ok(())
    }
}

pub(crate) fn meter_edge_amplitude(psi: &WaveFunction2D) -> f64 {
    let g = psi.grid();
    let nx = g.nx();
    let nm = g.n_meter();
    let vals = psi.values();
    [1, nm - 2]
        .iter()
        .flat_map(|&j| vals[j * nx..(j + 1) * nx].iter())
        .fold(0.0f64, |m, z| m.max(z.norm()))
}

/// 2D counterpart of [`propagate_1d`].
pub fn propagate_2d(
    psi: &WaveFunction2D,
    potential: &Potential,
    units: &UnitSystem,
    steps: usize,
    snapshot_every: usize,
) -> Result<Vec<WaveFunction2D>> {
    let every = snapshot_every.max(1);
    let mut prop = Propagator2D::new(psi.clone(), potential.clone(), *units)?;
    prop.check_integrity()?;
    let mut out = vec![psi.clone()];
    for s in 1..=steps {
        prop.step()?;
        if s % every == 0 || s == steps {
            prop.check_integrity()?;
            out.push(prop.state().clone());
        }
    }
    Ok(out)
}

/// `⟨ψ|H|ψ⟩` for the finite-difference Hamiltonian with potential values `v`.
pub fn energy_expectation_1d(psi: &WaveFunction1D, v: &[f64], units: &UnitSystem) -> f64 {
    let g = psi.grid();
    let n = g.n_points();
    let kin = units.hbar * units.hbar / (units.mass_m * g.dx() * g.dx());
    let p = psi.values();
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 1..n - 1 {
        let h = p[j] * (kin + v[j]) - (p[j - 1] + p[j + 1]) * (0.5 * kin);
        acc += p[j].conj() * h * g.weight(j);
    }
    acc.re
}

/// Product state `φ(x) χ(X)` on a 2D grid.
pub fn product_state(grid: &Grid2D, system: &[Complex64], meter: &[Complex64], time: f64) -> Result<WaveFunction2D> {
    if system.len() != grid.nx() || meter.len() != grid.n_meter() {
        return Err(BohmError::GridMismatch("factor lengths do not match the 2D grid".into()));
    }
    let mut values = Vec::with_capacity(grid.len());
    for m in meter {
        values.extend(system.iter().map(|s| s * m));
    }
    WaveFunction::new(*grid, values, time)
}

/// Normalized Gaussian packet `exp(-(x-x_c)²/(4σ²) + i p0 x / hbar)`.
pub fn gaussian_packet(grid: &Grid1D, centre: f64, sigma: f64, p0: f64, hbar: f64) -> Result<WaveFunction1D> {
    let n = grid.n_points();
    let psi = WaveFunction::from_fn(*grid, 0.0, |p| {
        let u = p[0] - centre;
        Complex64::from_polar((-u * u / (4.0 * sigma * sigma)).exp(), p0 * p[0] / hbar)
    })?;
    let mut vals = psi.into_values();
    vals[0] = Complex64::new(0.0, 0.0);
    vals[n - 1] = Complex64::new(0.0, 0.0);
    WaveFunction::new(*grid, vals, 0.0)?.normalize()
}
