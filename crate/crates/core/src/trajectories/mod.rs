//! Bohmian trajectories through time-dependent velocity fields, Born-rule
//! ensembles and their equivariance diagnostics.

mod sampling;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{BohmError, Result};
use crate::fields::{density, velocity_field, MaskedField, VectorField};
use crate::grid::{inner_product, locate_cell, Grid1D, Lattice, UnitSystem, WaveFunction, WaveFunction1D};
use crate::tdse::sample_well_mode;

pub use sampling::{dkw_epsilon, ks_distance, marginal, sample_positions, PiecewiseLinearDensity};

/// Largest `|v| dt / dx` allowed in one integration step before sub-stepping.
pub const STEP_CFL: f64 = 0.5;
/// Largest fraction of node-rejected paths tolerated by the equivariance check.
pub const MAX_REJECTED_FRACTION: f64 = 0.01;
/// Ensembles smaller than this are flagged as low-statistics.
pub const LOW_STATISTICS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrajectoryStatus {
    Completed,
    NodeRejected,
    Clamped,
}

/// Sampled path; positions hold `(x, X)` with `X = 0` in 1D.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub positions: Vec<[f64; 2]>,
    pub status: TrajectoryStatus,
}

impl Trajectory {
    fn start(t: f64, p: [f64; 2]) -> Self {
        Self { times: vec![t], positions: vec![p], status: TrajectoryStatus::Completed }
    }

    pub fn initial(&self) -> [f64; 2] {
        self.positions[0]
    }

    pub fn last(&self) -> [f64; 2] {
        self.positions[self.positions.len() - 1]
    }

    pub fn is_completed(&self) -> bool {
        self.status == TrajectoryStatus::Completed
    }

    /// `max_t |q_k(t) - q_k(0)|` along axis `k`.
    pub fn max_drift(&self, k: usize) -> f64 {
        let q0 = self.positions[0][k];
        self.positions.iter().fold(0.0f64, |m, p| m.max((p[k] - q0).abs()))
    }

    /// `min_t |q_k(t) - c|`.
    pub fn min_distance(&self, k: usize, c: f64) -> f64 {
        self.positions.iter().fold(f64::INFINITY, |m, p| m.min((p[k] - c).abs()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble {
    pub trajectories: Vec<Trajectory>,
    pub seed: u64,
    pub init_time: f64,
    pub low_statistics: bool,
}

impl Ensemble {
    pub fn len(&self) -> usize {
        self.trajectories.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trajectories.is_empty()
    }

    pub fn rejected_fraction(&self) -> f64 {
        if self.is_empty() {
            return 0.0;
        }
        let bad = self.trajectories.iter().filter(|t| t.status == TrajectoryStatus::NodeRejected).count();
        bad as f64 / self.len() as f64
    }

    pub fn initial_positions(&self) -> Vec<[f64; 2]> {
        self.trajectories.iter().map(|t| t.initial()).collect()
    }

    /// Final positions of completed trajectories.
    pub fn final_positions(&self) -> Vec<[f64; 2]> {
        self.trajectories.iter().filter(|t| t.is_completed()).map(|t| t.last()).collect()
    }

    /// Whether the 1D ordering of every pair of completed paths is preserved.
    pub fn ordering_preserved(&self) -> bool {
        let done: Vec<&Trajectory> = self.trajectories.iter().filter(|t| t.is_completed()).collect();
        if done.is_empty() {
            return true;
        }
        let mut order: Vec<usize> = (0..done.len()).collect();
        order.sort_by(|a, b| done[*a].initial()[0].partial_cmp(&done[*b].initial()[0]).unwrap());
        let samples = done[0].positions.len();
        if done.iter().any(|t| t.positions.len() != samples) {
            return false;
        }
        (0..samples).all(|s| order.windows(2).all(|w| done[w[0]].positions[s][0] <= done[w[1]].positions[s][0]))
    }
}

/// Ensemble of paths starting at positions drawn from `|ψ|²`.
pub fn sample_ensemble<G: Lattice>(psi: &WaveFunction<G>, n: usize, seed: u64) -> Result<Ensemble> {
    let pts = sample_positions(psi.grid(), &density(psi), n, seed)?;
    Ok(ensemble_from_positions(pts, psi.time(), seed))
}

pub fn ensemble_from_positions(pts: Vec<[f64; 2]>, init_time: f64, seed: u64) -> Ensemble {
    let low_statistics = pts.len() < LOW_STATISTICS;
    Ensemble {
        trajectories: pts.into_iter().map(|p| Trajectory::start(init_time, p)).collect(),
        seed,
        init_time,
        low_statistics,
    }
}

/// Velocity field of one snapshot.
#[derive(Debug, Clone, PartialEq)]
pub struct VelocitySnapshot {
    pub time: f64,
    pub velocity: VectorField,
    pub mask: Vec<bool>,
}

impl VelocitySnapshot {
    pub fn from_state<G: Lattice>(psi: &WaveFunction<G>, units: &UnitSystem, rho_floor: Option<f64>) -> Self {
        let (velocity, mask) = velocity_field(psi, units, rho_floor);
        Self { time: psi.time(), velocity, mask }
    }
}

enum Eval {
    Ok([f64; 2]),
    Masked,
    Clamped,
}

fn eval<G: Lattice>(grid: &G, snap: &VelocitySnapshot, p: [f64; 2]) -> Eval {
    let cell = locate_cell(grid, &p[..G::DIM]);
    if cell.clamped {
        return Eval::Clamped;
    }
    let mut v = [0.0; 2];
    for c in 0..cell.count {
        let w = cell.weights[c];
        if w == 0.0 {
            continue;
        }
        let idx = cell.corners[c];
        if snap.mask[idx] {
            return Eval::Masked;
        }
        for (k, vk) in v.iter_mut().enumerate().take(G::DIM) {
            *vk += w * snap.velocity.components[k][idx];
        }
    }
    Eval::Ok(v)
}

/// Velocity at `p` and time fraction `s ∈ [0, 1]` between two snapshots.
fn eval_between<G: Lattice>(grid: &G, a: &VelocitySnapshot, b: &VelocitySnapshot, p: [f64; 2], s: f64) -> Eval {
    match (eval(grid, a, p), eval(grid, b, p)) {
        (Eval::Ok(va), Eval::Ok(vb)) => Eval::Ok([(1.0 - s) * va[0] + s * vb[0], (1.0 - s) * va[1] + s * vb[1]]),
        (Eval::Clamped, _) | (_, Eval::Clamped) => Eval::Clamped,
        _ => Eval::Masked,
    }
}

fn axpy(p: [f64; 2], h: f64, v: [f64; 2]) -> [f64; 2] {
    [p[0] + h * v[0], p[1] + h * v[1]]
}

/// One RK4 step of length `h` starting at fraction `s0`; `span` is the snapshot spacing.
fn rk4<G: Lattice>(
    grid: &G,
    a: &VelocitySnapshot,
    b: &VelocitySnapshot,
    p: [f64; 2],
    s0: f64,
    h: f64,
    span: f64,
) -> std::result::Result<[f64; 2], TrajectoryStatus> {
    let f = |q: [f64; 2], s: f64| match eval_between(grid, a, b, q, s) {
        Eval::Ok(v) => Ok(v),
        Eval::Masked => Err(TrajectoryStatus::NodeRejected),
        Eval::Clamped => Err(TrajectoryStatus::Clamped),
    };
    let ds = h / span;
    let k1 = f(p, s0)?;
    let k2 = f(axpy(p, 0.5 * h, k1), s0 + 0.5 * ds)?;
    let k3 = f(axpy(p, 0.5 * h, k2), s0 + 0.5 * ds)?;
    let k4 = f(axpy(p, h, k3), s0 + ds)?;
    let next = [
        p[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
        p[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
    ];
    // landing inside a masked or clamped cell ends the path as well
    f(next, s0 + ds)?;
    Ok(next)
}

/// Carry `p` from snapshot `a` to snapshot `b` in steps of at most `dt_traj`,
/// sub-stepping further where `|v| dt / dx > 0.5`.
fn advance_point<G: Lattice>(
    grid: &G,
    a: &VelocitySnapshot,
    b: &VelocitySnapshot,
    p: [f64; 2],
    dt_traj: f64,
) -> std::result::Result<[f64; 2], TrajectoryStatus> {
    let span = b.time - a.time;
    let n = (span / dt_traj - 1e-9).ceil().max(1.0) as usize;
    let h = span / n as f64;
    let mut q = p;
    for step in 0..n {
        let s0 = step as f64 * h / span;
        let v = match eval_between(grid, a, b, q, s0) {
            Eval::Ok(v) => v,
            Eval::Masked => return Err(TrajectoryStatus::NodeRejected),
            Eval::Clamped => return Err(TrajectoryStatus::Clamped),
        };
        let ratio = (0..G::DIM).fold(0.0f64, |m, k| m.max(v[k].abs() * h / grid.axis(k).dx()));
        let sub = (ratio / STEP_CFL).ceil().max(1.0) as usize;
        let hs = h / sub as f64;
        for j in 0..sub {
            q = rk4(grid, a, b, q, s0 + j as f64 * hs / span, hs, span)?;
        }
    }
    Ok(q)
}

/// Advances a whole ensemble snapshot by snapshot, so that long runs never
/// need to hold every velocity field at once.
#[derive(Debug, Clone)]
pub struct EnsembleIntegrator<G: Lattice> {
    grid: G,
    dt_traj: Option<f64>,
    ensemble: Ensemble,
    started: bool,
}

impl<G: Lattice> EnsembleIntegrator<G> {
    /// `dt_traj = None` uses the snapshot spacing.
    pub fn new(grid: G, ensemble: Ensemble, dt_traj: Option<f64>) -> Self {
        Self { grid, dt_traj, ensemble, started: false }
    }

    pub fn ensemble(&self) -> &Ensemble {
        &self.ensemble
    }

    pub fn advance(&mut self, a: &VelocitySnapshot, b: &VelocitySnapshot) -> Result<()> {
        let span = b.time - a.time;
        if !(span > 0.0) {
            return Err(BohmError::Precondition("snapshots must be strictly increasing in time".into()));
        }
        let dt = self.dt_traj.unwrap_or(span);
        if dt > span * (1.0 + 1e-9) {
            return Err(BohmError::Precondition(format!(
                "trajectory step {dt} exceeds the snapshot spacing {span}"
            )));
        }
        let grid = self.grid;
        let first = !self.started;
        self.started = true;
        self.ensemble.trajectories.par_iter_mut().for_each(|t| {
            if !t.is_completed() {
                return;
            }
            let p = t.last();
            if first {
                match eval(&grid, a, p) {
                    Eval::Ok(_) => {}
                    Eval::Masked => {
                        t.status = TrajectoryStatus::NodeRejected;
                        return;
                    }
                    Eval::Clamped => {
                        t.status = TrajectoryStatus::Clamped;
                        return;
                    }
                }
            }
            match advance_point(&grid, a, b, p, dt) {
                Ok(q) => {
                    t.times.push(b.time);
                    t.positions.push(q);
                }
                Err(status) => t.status = status,
            }
        });
        Ok(())
    }

    pub fn finish(self) -> Ensemble {
        self.ensemble
    }
}

/// Integrate a single path from `x0` through a series of velocity snapshots.
pub fn integrate_trajectory<G: Lattice>(
    grid: &G,
    x0: [f64; 2],
    series: &[VelocitySnapshot],
    dt_traj: Option<f64>,
) -> Result<Trajectory> {
    if series.is_empty() {
        return Err(BohmError::Precondition("no velocity snapshots".into()));
    }
    let ens = ensemble_from_positions(vec![x0], series[0].time, 0);
    let mut it = EnsembleIntegrator::new(*grid, ens, dt_traj);
    for w in series.windows(2) {
        it.advance(&w[0], &w[1])?;
    }
    if series.len() == 1 {
        if let Eval::Masked = eval(grid, &series[0], x0) {
            return Ok(Trajectory { status: TrajectoryStatus::NodeRejected, ..Trajectory::start(series[0].time, x0) });
        }
    }
    Ok(it.finish().trajectories.remove(0))
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquivarianceReport {
    pub time: f64,
    /// KS distance per configuration axis.
    pub ks: Vec<f64>,
    /// DKW half-width at confidence `1e-3` for the number of paths used.
    pub dkw_band: f64,
    pub paths_used: usize,
    pub rejected_fraction: f64,
    pub threshold: f64,
    pub passed: bool,
}

/// Compare the final positions of an evolved ensemble with `|ψ_t|²`, axis by axis.
pub fn equivariance_check<G: Lattice>(
    ensemble: &Ensemble,
    psi_t: &WaveFunction<G>,
    threshold: f64,
) -> Result<EquivarianceReport> {
    let rejected = ensemble.rejected_fraction();
    if rejected > MAX_REJECTED_FRACTION {
        return Err(BohmError::TrajectoryIntegrity(format!(
            "{:.2}% of trajectories entered the node mask",
            100.0 * rejected
        )));
    }
    let t = psi_t.time();
    let done: Vec<&Trajectory> = ensemble.trajectories.iter().filter(|tr| tr.is_completed()).collect();
    let tol = 1e-9 * (1.0 + t.abs());
    if let Some(bad) = done.iter().find(|tr| (tr.times[tr.times.len() - 1] - t).abs() > tol) {
        return Err(BohmError::Precondition(format!(
            "ensemble ends at t = {}, state is at t = {t}",
            bad.times[bad.times.len() - 1]
        )));
    }
    let grid = psi_t.grid();
    let rho = density(psi_t);
    let mut ks = Vec::with_capacity(G::DIM);
    for k in 0..G::DIM {
        let target = PiecewiseLinearDensity::on_axis(grid.axis(k), marginal(grid, &rho, k))?;
        let xs: Vec<f64> = done.iter().map(|tr| tr.last()[k]).collect();
        ks.push(ks_distance(&xs, &target));
    }
    let passed = ks.iter().all(|d| *d < threshold);
    Ok(EquivarianceReport {
        time: t,
        ks,
        dkw_band: dkw_epsilon(done.len().max(1), 1e-3),
        paths_used: done.len(),
        rejected_fraction: rejected,
        threshold,
        passed,
    })
}

/// `ρ(x(t), t)` predicted along a path from `ρ(x₀, t₀) exp(-∫ ∇·v dt)`, with
/// `∇·v` taken from the given snapshots (matching the path's sample times).
pub fn density_along_path<G: Lattice>(
    grid: &G,
    traj: &Trajectory,
    rho0: f64,
    divergence: &[(f64, MaskedField)],
) -> Result<Vec<f64>> {
    if traj.times.len() > divergence.len() {
        return Err(BohmError::Precondition("fewer divergence snapshots than path samples".into()));
    }
    let mut rates = Vec::with_capacity(traj.times.len());
    for (s, (t, p)) in traj.times.iter().zip(&traj.positions).enumerate() {
        let (td, field) = &divergence[s];
        if (td - t).abs() > 1e-9 * (1.0 + t.abs()) {
            return Err(BohmError::Precondition(format!("divergence snapshot at {td} does not match path time {t}")));
        }
        let cell = locate_cell(grid, &p[..G::DIM]);
        if cell.clamped || (0..cell.count).any(|c| cell.weights[c] > 0.0 && field.mask[cell.corners[c]]) {
            return Err(BohmError::TrajectoryIntegrity(format!("path reaches a masked region at t = {t}")));
        }
        rates.push(cell.combine(&field.values));
    }
    let mut out = Vec::with_capacity(rates.len());
    let mut integral = 0.0;
    out.push(rho0);
    for s in 1..rates.len() {
        integral += 0.5 * (rates[s] + rates[s - 1]) * (traj.times[s] - traj.times[s - 1]);
        out.push(rho0 * (-integral).exp());
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfinementReport {
    pub mode: usize,
    pub paths: usize,
    /// Indices of trajectories that left their initial cell.
    pub crossings: Vec<usize>,
    pub passed: bool,
}

/// Fidelity above which a state counts as the well eigenstate `n`.
const EIGENSTATE_FIDELITY: f64 = 1.0 - 1e-6;

/// Check that every path stays in its initial cell `(kL/n, (k+1)L/n)`.
/// `psi0` must be the well eigenstate `n` (up to a global phase).
pub fn node_confinement_check(
    ensemble: &Ensemble,
    psi0: &WaveFunction1D,
    n: usize,
    units: &UnitSystem,
) -> Result<ConfinementReport> {
    let grid: &Grid1D = psi0.grid();
    let mode = sample_well_mode(n, grid, units.box_length)?.normalize()?;
    let fidelity = inner_product(&mode, psi0)?.norm_sqr() / psi0.norm_sqr();
    if fidelity < EIGENSTATE_FIDELITY {
        return Err(BohmError::Precondition(format!(
            "confinement check needs eigenstate {n}; overlap is {fidelity:.6}"
        )));
    }
    let cell = units.box_length / n as f64;
    let crossings: Vec<usize> = ensemble
        .trajectories
        .iter()
        .enumerate()
        .filter(|(_, t)| {
            let k = (t.initial()[0] / cell).floor();
            let (lo, hi) = (k * cell, (k + 1.0) * cell);
            t.status == TrajectoryStatus::NodeRejected || t.positions.iter().any(|p| p[0] <= lo || p[0] >= hi)
        })
        .map(|(i, _)| i)
        .collect();
    Ok(ConfinementReport { mode: n, paths: ensemble.len(), passed: crossings.is_empty(), crossings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::velocity_divergence;
    use crate::grid::make_grid;
    use crate::tdse::{gaussian_packet, propagate_1d, well_eigenstate, Potential};
    use num_complex::Complex64;

    fn units() -> UnitSystem {
        UnitSystem::default()
    }

    fn snapshots(series: &[WaveFunction1D]) -> Vec<VelocitySnapshot> {
        series.iter().map(|s| VelocitySnapshot::from_state(s, &units(), None)).collect()
    }

    #[test]
    fn eigenstate_paths_are_pinned() {
        let grid = make_grid(0.0, 1.0, 400, 1e-3).unwrap();
        let (phi, _) = well_eigenstate(2, &grid, &units()).unwrap();
        let series = propagate_1d(&phi, &Potential::InfiniteWell, &units(), 200, 10).unwrap();
        let snaps = snapshots(&series);
        let ens = sample_ensemble(&phi, 200, 11).unwrap();
        let mut it = EnsembleIntegrator::new(grid, ens, None);
        for w in snaps.windows(2) {
            it.advance(&w[0], &w[1]).unwrap();
        }
        let ens = it.finish();
        assert!(ens.trajectories.iter().all(|t| t.is_completed() && t.max_drift(0) < 1e-8));
        let report = node_confinement_check(&ens, &phi, 2, &units()).unwrap();
        assert!(report.passed);
        assert!(ens.ordering_preserved());
    }

    #[test]
    fn confinement_rejects_superpositions() {
        let grid = make_grid(0.0, 1.0, 200, 1e-3).unwrap();
        let (p1, _) = well_eigenstate(1, &grid, &units()).unwrap();
        let (p2, _) = well_eigenstate(2, &grid, &units()).unwrap();
        let mix = p1.with_values(p1.values().iter().zip(p2.values()).map(|(a, b)| a + b).collect()).unwrap();
        let mix = mix.normalize().unwrap();
        let ens = sample_ensemble(&mix, 100, 1).unwrap();
        assert!(matches!(node_confinement_check(&ens, &mix, 2, &units()), Err(BohmError::Precondition(_))));
    }

    #[test]
    fn packet_centre_follows_ehrenfest_path() {
        let p0 = 2.0;
        let grid = make_grid(-10.0, 10.0, 2001, 1e-3).unwrap();
        let psi = gaussian_packet(&grid, -1.0, 0.6, p0, 1.0).unwrap();
        let series = propagate_1d(&psi, &Potential::InfiniteWell, &units(), 1000, 10).unwrap();
        let traj = integrate_trajectory(&grid, [-1.0, 0.0], &snapshots(&series), None).unwrap();
        assert!(traj.is_completed());
        let t = traj.times[traj.times.len() - 1];
        let want = -1.0 + p0 * t;
        assert!((traj.last()[0] - want).abs() < 0.005 * want.abs(), "{} vs {want}", traj.last()[0]);
    }

    #[test]
    fn density_along_centre_path_follows_spreading_law() {
        let sigma = 0.5;
        let grid = make_grid(-10.0, 10.0, 2001, 1e-3).unwrap();
        let psi = gaussian_packet(&grid, 0.0, sigma, 0.0, 1.0).unwrap();
        let series = propagate_1d(&psi, &Potential::InfiniteWell, &units(), 500, 5).unwrap();
        let snaps = snapshots(&series);
        let traj = integrate_trajectory(&grid, [0.0, 0.0], &snaps, None).unwrap();
        let div: Vec<(f64, MaskedField)> =
            series.iter().map(|s| (s.time(), velocity_divergence(s, &units(), None))).collect();
        let rho0 = density(&psi)[1000];
        let along = density_along_path(&grid, &traj, rho0, &div).unwrap();
        for (t, r) in traj.times.iter().zip(&along) {
            // peak density ∝ 1/σ(t)
            let s_t = sigma * (1.0 + (t / (2.0 * sigma * sigma)).powi(2)).sqrt();
            let want = rho0 * sigma / s_t;
            assert!((r - want).abs() < 0.05 * want);
        }
    }

    #[test]
    fn stationary_density_along_path_is_constant() {
        let grid = make_grid(0.0, 1.0, 300, 1e-3).unwrap();
        let (phi, e) = well_eigenstate(1, &grid, &units()).unwrap();
        let series: Vec<WaveFunction1D> = (0..5)
            .map(|k| {
                let t = 0.01 * k as f64;
                let mut s = phi.scaled(Complex64::from_polar(1.0, -e * t));
                s.set_time(t);
                s
            })
            .collect();
        let traj = integrate_trajectory(&grid, [0.3, 0.0], &snapshots(&series), None).unwrap();
        let div: Vec<(f64, MaskedField)> =
            series.iter().map(|s| (s.time(), velocity_divergence(s, &units(), None))).collect();
        let along = density_along_path(&grid, &traj, 1.3, &div).unwrap();
        assert!(along.iter().all(|r| (r - 1.3).abs() < 1e-10));
    }

    #[test]
    fn equivariance_and_negative_control() {
        let grid = make_grid(0.0, 1.0, 400, 1e-3).unwrap();
        let (phi, _) = well_eigenstate(1, &grid, &units()).unwrap();
        let ens = sample_ensemble(&phi, 10_000, 5).unwrap();
        let rep = equivariance_check(&ens, &phi, 0.02).unwrap();
        assert!(rep.passed && rep.ks[0] < rep.dkw_band);

        let uniform: Vec<[f64; 2]> = (0..10_000).map(|i| [(i as f64 + 0.5) / 10_000.0, 0.0]).collect();
        let bad = ensemble_from_positions(uniform, 0.0, 0);
        assert!(!equivariance_check(&bad, &phi, 0.02).unwrap().passed);
    }

    #[test]
    fn determinism_and_low_statistics_flag() {
        let grid = make_grid(0.0, 1.0, 100, 1e-3).unwrap();
        let (phi, _) = well_eigenstate(1, &grid, &units()).unwrap();
        assert_eq!(sample_ensemble(&phi, 500, 9).unwrap(), sample_ensemble(&phi, 500, 9).unwrap());
        assert!(sample_ensemble(&phi, 10, 9).unwrap().low_statistics);
        assert!(!sample_ensemble(&phi, 100, 9).unwrap().low_statistics);
    }

    #[test]
    fn too_many_rejections_fail_the_check() {
        let grid = make_grid(0.0, 1.0, 100, 1e-3).unwrap();
        let (phi, _) = well_eigenstate(1, &grid, &units()).unwrap();
        let mut ens = sample_ensemble(&phi, 100, 2).unwrap();
        for t in ens.trajectories.iter_mut().take(2) {
            t.status = TrajectoryStatus::NodeRejected;
        }
        assert!(matches!(equivariance_check(&ens, &phi, 0.1), Err(BohmError::TrajectoryIntegrity(_))));
    }
}
