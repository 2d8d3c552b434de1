//! Bohmian fields derived from a wavefunction: density, current, velocity,
//! quantum potential, total potential and force, plus the Hamilton–Jacobi and
//! continuity diagnostics.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{BohmError, Result};
use crate::grid::{Lattice, UnitSystem, WaveFunction};

/// Relative density floor below which velocity and `Q` are masked.
pub const DEFAULT_RHO_FLOOR: f64 = 1e-10;

/// One nodal component per lattice axis.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField {
    pub components: Vec<Vec<f64>>,
}

impl VectorField {
    fn zeros(dim: usize, len: usize) -> Self {
        Self { components: vec![vec![0.0; len]; dim] }
    }

    pub fn component(&self, k: usize) -> &[f64] {
        &self.components[k]
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    /// Components at a flat index (unused axes are zero).
    pub fn at(&self, idx: usize) -> [f64; 2] {
        let mut out = [0.0; 2];
        for (k, c) in self.components.iter().enumerate() {
            out[k] = c[idx];
        }
        out
    }
}

/// Nodal field with a mask marking nodes where it is undefined.
#[derive(Debug, Clone, PartialEq)]
pub struct MaskedField {
    pub values: Vec<f64>,
    pub mask: Vec<bool>,
}

impl MaskedField {
    pub fn masked_count(&self) -> usize {
        self.mask.iter().filter(|m| **m).count()
    }

    /// Largest `|value|` over unmasked nodes satisfying `keep`.
    pub fn max_abs_where(&self, keep: impl Fn(usize) -> bool) -> f64 {
        self.values
            .iter()
            .enumerate()
            .filter(|(i, _)| !self.mask[*i] && keep(*i))
            .fold(0.0f64, |m, (_, v)| m.max(v.abs()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DerivedFields {
    pub rho: Vec<f64>,
    pub current: VectorField,
    pub velocity: VectorField,
    /// Nodes with `ρ` below the floor.
    pub node_mask: Vec<bool>,
    pub quantum_potential: Vec<f64>,
    /// Nodes where `Q`, and hence `U`, is undefined.
    pub potential_mask: Vec<bool>,
    pub total_potential: Vec<f64>,
    pub force: VectorField,
    pub force_mask: Vec<bool>,
}

/// Neighbour indices of `idx` along axis `k`, `None` on a wall.
fn neighbours<G: Lattice>(grid: &G, idx: usize, k: usize) -> Option<(usize, usize)> {
    let i = grid.unravel(idx)[k];
    let n = grid.axis(k).n_points();
    if i == 0 || i + 1 == n {
        None
    } else {
        let s = grid.stride(k);
        Some((idx - s, idx + s))
    }
}

/// Centered first derivative along axis `k`; second-order one-sided at walls.
fn derivative<G: Lattice>(grid: &G, f: &[Complex64], k: usize) -> Vec<Complex64> {
    let h = grid.axis(k).dx();
    let s = grid.stride(k);
    let n = grid.axis(k).n_points();
    (0..f.len())
        .map(|idx| {
            let i = grid.unravel(idx)[k];
            if i == 0 {
                (f[idx] * -3.0 + f[idx + s] * 4.0 - f[idx + 2 * s]) / (2.0 * h)
            } else if i + 1 == n {
                (f[idx] * 3.0 - f[idx - s] * 4.0 + f[idx - 2 * s]) / (2.0 * h)
            } else {
                (f[idx + s] - f[idx - s]) / (2.0 * h)
            }
        })
        .collect()
}

pub fn density<G: Lattice>(psi: &WaveFunction<G>) -> Vec<f64> {
    psi.values().iter().map(|z| z.norm_sqr()).collect()
}

/// Floor used when none is given: `1e-10 × max ρ`.
pub fn default_rho_floor(rho: &[f64]) -> f64 {
    DEFAULT_RHO_FLOOR * rho.iter().fold(0.0f64, |m, r| m.max(*r))
}

/// `J_k = (hbar / m_k) Im(ψ* ∂_k ψ)`, with the meter mass on the second axis.
pub fn current<G: Lattice>(psi: &WaveFunction<G>, units: &UnitSystem) -> VectorField {
    let grid = psi.grid();
    let vals = psi.values();
    let mut out = VectorField::zeros(G::DIM, vals.len());
    for k in 0..G::DIM {
        let c = units.hbar / units.axis_mass(k);
        let d = derivative(grid, vals, k);
        for (o, (z, dz)) in out.components[k].iter_mut().zip(vals.iter().zip(&d)) {
            *o = c * (z.conj() * dz).im;
        }
    }
    out
}

/// `v = J/ρ` where `ρ ≥ rho_floor` (default `1e-10 × max ρ`), zero and masked elsewhere.
pub fn velocity_field<G: Lattice>(
    psi: &WaveFunction<G>,
    units: &UnitSystem,
    rho_floor: Option<f64>,
) -> (VectorField, Vec<bool>) {
    let rho = density(psi);
    let floor = rho_floor.unwrap_or_else(|| default_rho_floor(&rho));
    let j = current(psi, units);
    velocity_from(&rho, &j, floor)
}

fn velocity_from(rho: &[f64], j: &VectorField, floor: f64) -> (VectorField, Vec<bool>) {
    let mask: Vec<bool> = rho.iter().map(|r| *r < floor || *r <= 0.0).collect();
    let mut v = VectorField::zeros(j.dim(), rho.len());
    for (vk, jk) in v.components.iter_mut().zip(&j.components) {
        for i in 0..rho.len() {
            if !mask[i] {
                vk[i] = jk[i] / rho[i];
            }
        }
    }
    (v, mask)
}

/// `Q = -Σ_k hbar² Δ_k a / (2 m_k a)` with `a = |ψ|`, by centered second differences.
///
/// Masked on walls, below the density floor, and where a stencil straddles a
/// sign change of `ψ` (`Re ψ_j* ψ_{j±1} ≤ 0`), since `a` has a kink at a node.
pub fn quantum_potential<G: Lattice>(psi: &WaveFunction<G>, units: &UnitSystem, rho_floor: Option<f64>) -> MaskedField {
    let grid = psi.grid();
    let vals = psi.values();
    let rho = density(psi);
    let floor = rho_floor.unwrap_or_else(|| default_rho_floor(&rho));
    let amp: Vec<f64> = vals.iter().map(|z| z.norm()).collect();
    let mut values = vec![0.0; vals.len()];
    let mut mask = vec![false; vals.len()];
    for idx in 0..vals.len() {
        if rho[idx] < floor || rho[idx] <= 0.0 {
            mask[idx] = true;
            continue;
        }
        let mut q = 0.0;
        for k in 0..G::DIM {
            let Some((lo, hi)) = neighbours(grid, idx, k) else {
                mask[idx] = true;
                break;
            };
            if (vals[idx].conj() * vals[lo]).re <= 0.0 || (vals[idx].conj() * vals[hi]).re <= 0.0 {
                mask[idx] = true;
                break;
            }
            let h = grid.axis(k).dx();
            let lap = (amp[hi] - 2.0 * amp[idx] + amp[lo]) / (h * h);
            q -= units.hbar * units.hbar * lap / (2.0 * units.axis_mass(k) * amp[idx]);
        }
        if !mask[idx] {
            values[idx] = q;
        }
    }
    MaskedField { values, mask }
}

/// All derived fields for `ψ` in the external potential `v` (same node order).
pub fn total_potential_and_forces<G: Lattice>(
    psi: &WaveFunction<G>,
    v: &[f64],
    units: &UnitSystem,
    rho_floor: Option<f64>,
) -> Result<DerivedFields> {
    let grid = psi.grid();
    if v.len() != grid.len() {
        return Err(BohmError::GridMismatch(format!("potential has {} values for {} nodes", v.len(), grid.len())));
    }
    let rho = density(psi);
    let floor = rho_floor.unwrap_or_else(|| default_rho_floor(&rho));
    let current = current(psi, units);
    let (velocity, node_mask) = velocity_from(&rho, &current, floor);
    let q = quantum_potential(psi, units, Some(floor));
    let total: Vec<f64> = q.values.iter().zip(v).map(|(a, b)| a + b).collect();
    let mut force = VectorField::zeros(G::DIM, rho.len());
    let mut force_mask = vec![false; rho.len()];
    for idx in 0..rho.len() {
        if q.mask[idx] {
            force_mask[idx] = true;
            continue;
        }
        for k in 0..G::DIM {
            match neighbours(grid, idx, k) {
                Some((lo, hi)) if !q.mask[lo] && !q.mask[hi] => {
                    force.components[k][idx] = -(total[hi] - total[lo]) / (2.0 * grid.axis(k).dx());
                }
                _ => force_mask[idx] = true,
            }
        }
        if force_mask[idx] {
            for k in 0..G::DIM {
                force.components[k][idx] = 0.0;
            }
        }
    }
    Ok(DerivedFields {
        rho,
        current,
        velocity,
        node_mask,
        quantum_potential: q.values,
        potential_mask: q.mask,
        total_potential: total,
        force,
        force_mask,
    })
}

/// `∇·v` by centered differences of the velocity, masked where any stencil
/// node is masked. Along a path, `d ln ρ / dt = -∇·v`.
pub fn velocity_divergence<G: Lattice>(psi: &WaveFunction<G>, units: &UnitSystem, rho_floor: Option<f64>) -> MaskedField {
    let grid = psi.grid();
    let (v, node_mask) = velocity_field(psi, units, rho_floor);
    let n = grid.len();
    let mut values = vec![0.0; n];
    let mut mask = vec![false; n];
    for idx in 0..n {
        let mut acc = 0.0;
        for k in 0..G::DIM {
            match neighbours(grid, idx, k) {
                Some((lo, hi)) if !node_mask[lo] && !node_mask[hi] && !node_mask[idx] => {
                    acc += (v.components[k][hi] - v.components[k][lo]) / (2.0 * grid.axis(k).dx());
                }
                _ => {
                    mask[idx] = true;
                    break;
                }
            }
        }
        if !mask[idx] {
            values[idx] = acc;
        }
    }
    MaskedField { values, mask }
}

/// Largest phase step between neighbours accepted by the unwrapper.
const UNWRAP_LIMIT: f64 = 0.5 * PI;

/// Phase `S = hbar arg ψ` unwrapped along grid lines from the node of largest
/// `ρ`: first along the `x` line through it, then along every `X` line. Nodes
/// reached through a low-density or ambiguous step are masked.
pub fn unwrapped_phase<G: Lattice>(psi: &WaveFunction<G>, hbar: f64, rho_floor: Option<f64>) -> MaskedField {
    let grid = psi.grid();
    let vals = psi.values();
    let rho = density(psi);
    let floor = rho_floor.unwrap_or_else(|| default_rho_floor(&rho));
    let n = vals.len();
    let reference = (0..n).fold(0, |best, i| if rho[i] > rho[best] { i } else { best });
    let mut phase = vec![0.0; n];
    let mut mask: Vec<bool> = rho.iter().map(|r| *r < floor || *r <= 0.0).collect();
    phase[reference] = vals[reference].arg();

    // walk one grid line from `start` with the given stride and count
    let walk = |phase: &mut [f64], mask: &mut [bool], start: usize, stride: usize, before: usize, after: usize| {
        for dir in [1isize, -1] {
            let steps = if dir > 0 { after } else { before };
            let mut prev = start;
            let mut broken = mask[start];
            for s in 1..=steps {
                let idx = (start as isize + dir * (s * stride) as isize) as usize;
                if broken || mask[idx] {
                    broken = true;
                    mask[idx] = true;
                    continue;
                }
                let step = (vals[idx] * vals[prev].conj()).arg();
                if step.abs() > UNWRAP_LIMIT {
                    broken = true;
                    mask[idx] = true;
                    continue;
                }
                phase[idx] = phase[prev] + step;
                prev = idx;
            }
        }
    };

    let ii = grid.unravel(reference);
    let nx = grid.axis(0).n_points();
    walk(&mut phase, &mut mask, reference, 1, ii[0], nx - 1 - ii[0]);
    if G::DIM == 2 {
        let nm = grid.axis(1).n_points();
        let row_start = reference - ii[0];
        for i in 0..nx {
            walk(&mut phase, &mut mask, row_start + i, nx, ii[1], nm - 1 - ii[1]);
        }
    }
    for p in phase.iter_mut() {
        *p *= hbar;
    }
    MaskedField { values: phase, mask }
}

/// Summary of the Hamilton–Jacobi residual at one snapshot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualSummary {
    pub time: f64,
    pub max_abs: f64,
    pub l2: f64,
    pub masked: usize,
}

/// `r = ∂_t S + Σ_k (∂_k S)²/(2 m_k) + V + Q` at every interior snapshot of
/// the series, with `∂_t S` from the neighbouring snapshots.
pub fn hamilton_jacobi_residual<G: Lattice>(
    series: &[WaveFunction<G>],
    v: &[f64],
    units: &UnitSystem,
) -> Result<Vec<ResidualSummary>> {
    if series.len() < 3 {
        return Err(BohmError::Precondition("Hamilton–Jacobi residual needs at least 3 snapshots".into()));
    }
    let grid = *series[0].grid();
    if v.len() != grid.len() {
        return Err(BohmError::GridMismatch("potential does not match the snapshot grid".into()));
    }
    let mut out = Vec::with_capacity(series.len() - 2);
    for w in series.windows(3) {
        let (prev, cur, next) = (&w[0], &w[1], &w[2]);
        if prev.grid() != &grid || next.grid() != &grid || cur.grid() != &grid {
            return Err(BohmError::GridMismatch("snapshots live on different grids".into()));
        }
        let span = next.time() - prev.time();
        let s = unwrapped_phase(cur, units.hbar, None);
        let q = quantum_potential(cur, units, None);
        let mut max_abs = 0.0f64;
        let mut sum = 0.0;
        let mut masked = 0;
        for idx in 0..grid.len() {
            let mut ok = !s.mask[idx] && !q.mask[idx];
            let mut kinetic = 0.0;
            for k in 0..G::DIM {
                match neighbours(&grid, idx, k) {
                    Some((lo, hi)) if ok && !s.mask[lo] && !s.mask[hi] => {
                        let ds = (s.values[hi] - s.values[lo]) / (2.0 * grid.axis(k).dx());
                        kinetic += ds * ds / (2.0 * units.axis_mass(k));
                    }
                    _ => ok = false,
                }
            }
            if !ok {
                masked += 1;
                continue;
            }
            let dsdt = units.hbar * (next.values()[idx] * prev.values()[idx].conj()).arg() / span;
            let r = dsdt + kinetic + v[idx] + q.values[idx];
            max_abs = max_abs.max(r.abs());
            sum += r * r * grid.weight(idx);
        }
        out.push(ResidualSummary { time: cur.time(), max_abs, l2: sum.sqrt(), masked });
    }
    Ok(out)
}

/// L² norm of `∂_t ρ + ∇·J` at every interior snapshot, centered in time.
pub fn continuity_residual<G: Lattice>(series: &[WaveFunction<G>], units: &UnitSystem) -> Result<Vec<f64>> {
    if series.len() < 3 {
        return Err(BohmError::Precondition("continuity residual needs at least 3 snapshots".into()));
    }
    let mut out = Vec::with_capacity(series.len() - 2);
    for w in series.windows(3) {
        let grid = *w[1].grid();
        let span = w[2].time() - w[0].time();
        let r0 = density(&w[0]);
        let r2 = density(&w[2]);
        let j = current(&w[1], units);
        let mut sum = 0.0;
        for idx in 0..grid.len() {
            let mut div = 0.0;
            let mut interior = true;
            for k in 0..G::DIM {
                match neighbours(&grid, idx, k) {
                    Some((lo, hi)) => div += (j.components[k][hi] - j.components[k][lo]) / (2.0 * grid.axis(k).dx()),
                    None => interior = false,
                }
            }
            if interior {
                let r = (r2[idx] - r0[idx]) / span + div;
                sum += r * r * grid.weight(idx);
            }
        }
        out.push(sum.sqrt());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{make_grid, Grid1D, Grid2D, WaveFunction1D};
    use crate::tdse::{gaussian_packet, propagate_1d, well_eigenstate, well_energy, Potential};
    use proptest::prelude::*;

    fn units() -> UnitSystem {
        UnitSystem::default()
    }

    fn well(n: usize, points: usize) -> (Grid1D, WaveFunction1D) {
        let grid = make_grid(0.0, 1.0, points, 1e-4).unwrap();
        let (psi, _) = well_eigenstate(n, &grid, &units()).unwrap();
        (grid, psi)
    }

    #[test]
    fn density_of_ground_state() {
        let (grid, psi) = well(1, 401);
        let rho = density(&psi);
        assert!((rho[200] - 2.0).abs() < 1e-12);
        assert!((grid.integrate(&rho) - 1.0).abs() < 1e-6);
        let rotated = psi.scaled(Complex64::from_polar(1.0, 0.7));
        for (a, b) in density(&rotated).iter().zip(&rho) {
            assert!((a - b).abs() < 1e-13);
        }
    }

    #[test]
    fn real_states_carry_no_current() {
        let (_, psi) = well(3, 301);
        let j = current(&psi, &units());
        assert!(j.component(0).iter().all(|x| *x == 0.0));
        let evolved = psi.scaled(Complex64::from_polar(1.0, -well_energy(3, &units()) * 0.37));
        assert!(current(&evolved, &units()).component(0).iter().all(|x| x.abs() < 1e-10));
    }

    #[test]
    fn plane_wave_current_and_velocity() {
        let k = 12.0;
        let grid = make_grid(-8.0, 8.0, 1601, 1e-3).unwrap();
        let psi = gaussian_packet(&grid, 0.0, 1.0, k, 1.0).unwrap();
        let j = current(&psi, &units());
        let rho = density(&psi);
        let c = 800;
        assert!((j.component(0)[c] - k * rho[c]).abs() < 0.01 * k * rho[c]);
        let (v, mask) = velocity_field(&psi, &units(), None);
        assert!(!mask[c]);
        assert!((v.component(0)[c] - k).abs() < 0.01 * k);
    }

    #[test]
    fn eigenstates_have_zero_velocity_and_constant_q() {
        for n in [1usize, 2, 5] {
            let (grid, psi) = well(n, 400);
            let (v, mask) = velocity_field(&psi, &units(), None);
            assert!(v.component(0).iter().zip(&mask).all(|(x, m)| *m || x.abs() < 1e-8));
            let q = quantum_potential(&psi, &units(), None);
            let e = well_energy(n, &units());
            let interior = |i: usize| i > 0 && i + 1 < grid.n_points();
            let worst = q
                .values
                .iter()
                .enumerate()
                .filter(|(i, _)| interior(*i) && !q.mask[*i])
                .fold(0.0f64, |m, (_, x)| m.max((x - e).abs() / e));
            assert!(worst < 5e-3, "n={n}: {worst}");
            assert!(q.masked_count() < 2 * n + 4);
        }
        let (_, psi) = well(2, 401);
        let (_, mask) = velocity_field(&psi, &units(), None);
        assert!(mask[200]);
    }

    #[test]
    fn gaussian_quantum_potential_matches_closed_form() {
        // a = exp(-x²/(4σ²)): a''/a = x²/(4σ⁴) - 1/(2σ²), so
        // Q = hbar²/(4 m σ²) (1 - x²/(2σ²))
        let sigma = 0.5;
        let grid = make_grid(-4.0, 4.0, 2001, 1e-3).unwrap();
        let psi = gaussian_packet(&grid, 0.0, sigma, 3.0, 1.0).unwrap();
        let q = quantum_potential(&psi, &units(), None);
        for i in (600..1400).step_by(50) {
            let x = grid.coord(i);
            let want = 1.0 / (4.0 * sigma * sigma) * (1.0 - x * x / (2.0 * sigma * sigma));
            assert!((q.values[i] - want).abs() < 1e-3 * (1.0 + want.abs()), "x={x}");
        }
    }

    #[test]
    fn constant_amplitude_has_zero_q() {
        let ax = make_grid(0.0, 1.0, 64, 1e-3).unwrap();
        let am = make_grid(-1.0, 1.0, 40, 1e-3).unwrap();
        let g = Grid2D::new(ax, am).unwrap();
        let psi = WaveFunction::from_fn(g, 0.0, |p| Complex64::from_polar(1.0, 3.0 * p[0] - p[1])).unwrap();
        let q = quantum_potential(&psi, &units(), None);
        assert!(q.values.iter().zip(&q.mask).all(|(x, m)| *m || x.abs() < 1e-9));
    }

    #[test]
    fn eigenstate_force_vanishes() {
        let (grid, psi) = well(1, 400);
        let f = total_potential_and_forces(&psi, &vec![0.0; 400], &units(), None).unwrap();
        let e = well_energy(1, &units());
        let worst = (2..grid.n_points() - 2)
            .filter(|i| !f.force_mask[*i])
            .fold(0.0f64, |m, i| m.max(f.force.component(0)[i].abs()));
        assert!(worst < 1e-6 * e, "{worst}");
    }

    #[test]
    fn hamilton_jacobi_for_eigenstate_and_free_packet() {
        let (grid, psi) = well(1, 400);
        let e1 = well_energy(1, &units());
        let series = propagate_1d(&psi, &Potential::InfiniteWell, &units(), 20, 10).unwrap();
        let r = hamilton_jacobi_residual(&series, &vec![0.0; grid.n_points()], &units()).unwrap();
        assert!(r.iter().all(|s| s.max_abs / e1 < 1e-2), "{r:?}");

        let g = make_grid(-10.0, 10.0, 2001, 1e-3).unwrap();
        let packet = gaussian_packet(&g, 0.0, 0.7, 2.0, 1.0).unwrap();
        let series = propagate_1d(&packet, &Potential::InfiniteWell, &units(), 20, 10).unwrap();
        let r = hamilton_jacobi_residual(&series, &vec![0.0; g.n_points()], &units()).unwrap();
        // characteristic energy: p0²/2m + hbar²/(8 m σ²)
        let e_char = 2.0 + 1.0 / (8.0 * 0.49);
        assert!(r.iter().all(|s| s.max_abs / e_char < 5e-2), "{r:?}");
    }

    #[test]
    fn continuity_holds_for_moving_packet() {
        let g = make_grid(-10.0, 10.0, 2001, 1e-3).unwrap();
        let packet = gaussian_packet(&g, -2.0, 0.7, 2.0, 1.0).unwrap();
        let series = propagate_1d(&packet, &Potential::InfiniteWell, &units(), 400, 5).unwrap();
        let res = continuity_residual(&series, &units()).unwrap();
        let max_rho = density(&packet).iter().fold(0.0f64, |m, r| m.max(*r));
        // characteristic time: σ / v
        let t_char = 0.7 / 2.0;
        assert!(res.iter().all(|r| *r < 1e-3 * max_rho / t_char), "{res:?}");
    }

    proptest! {
        #[test]
        fn derived_fields_are_phase_and_scale_invariant(theta in 0.0f64..std::f64::consts::TAU, c in 0.1f64..10.0, k in -5.0f64..5.0) {
            let g = make_grid(-5.0, 5.0, 200, 1e-3).unwrap();
            let psi = gaussian_packet(&g, 0.3, 0.8, k, 1.0).unwrap();
            let rotated = psi.scaled(Complex64::from_polar(1.0, theta));
            let (v0, _) = velocity_field(&psi, &units(), None);
            let (v1, _) = velocity_field(&rotated, &units(), None);
            for (a, b) in v0.component(0).iter().zip(v1.component(0)) {
                prop_assert!((a - b).abs() < 1e-9 * (1.0 + a.abs()));
            }
            let q0 = quantum_potential(&psi, &units(), None);
            let q1 = quantum_potential(&psi.scaled(Complex64::new(c, 0.0)), &units(), None);
            for i in 0..200 {
                prop_assert_eq!(q0.mask[i], q1.mask[i]);
                prop_assert!((q0.values[i] - q1.values[i]).abs() < 1e-8 * (1.0 + q0.values[i].abs()));
            }
        }

        #[test]
        fn real_fields_have_exactly_zero_velocity(vals in proptest::collection::vec(-3.0f64..3.0, 24)) {
            let g = make_grid(0.0, 1.0, 24, 1e-3).unwrap();
            let psi = WaveFunction::new(g, vals.iter().map(|x| Complex64::new(*x, 0.0)).collect(), 0.0).unwrap();
            let (v, _) = velocity_field(&psi, &units(), Some(1e-300));
            prop_assert!(v.component(0).iter().all(|x| *x == 0.0));
            prop_assert!(current(&psi, &units()).component(0).iter().all(|x| *x == 0.0));
        }
    }
}
