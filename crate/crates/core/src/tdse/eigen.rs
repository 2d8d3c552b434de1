use num_complex::Complex64;

use super::tridiag::lowest_eigenpairs;
use super::{Potential, DEFAULT_DELTA_WIDTH, DELTA_TRUNCATION};
use crate::error::{BohmError, Result};
use crate::grid::{Grid1D, UnitSystem, WaveFunction, WaveFunction1D};

const RESIDUAL_TOLERANCE: f64 = 1e-6;

/// Lowest eigenpairs of a 1D Hamiltonian, energies ascending.
#[derive(Debug, Clone)]
pub struct EigenSolution {
    pub energies: Vec<f64>,
    pub states: Vec<WaveFunction1D>,
}

/// Lowest `k` eigenpairs of the second-order finite-difference Hamiltonian
/// with Dirichlet walls at both grid ends.
///
/// Time-dependent potentials are frozen at `t = 0` (and `X = 0` for composite
/// evaluators); freeze a delta coupling explicitly with `DeltaCoupling::frozen`.
pub fn solve_stationary(potential: &Potential, grid: &Grid1D, k: usize, units: &UnitSystem) -> Result<EigenSolution> {
    let n = grid.n_points();
    if k == 0 || k > n / 4 {
        return Err(BohmError::Precondition(format!("k = {k} outside 1..={}", n / 4)));
    }
    let v = potential.sample_1d(grid, 0.0)?;
    let kinetic = units.hbar * units.hbar / (units.mass_m * grid.dx() * grid.dx());
    let diag: Vec<f64> = v[1..n - 1].iter().map(|vj| kinetic + vj).collect();
    let off = vec![-0.5 * kinetic; n - 3];
    let pairs = lowest_eigenpairs(&diag, &off, k)?;

    let mut energies = Vec::with_capacity(k);
    let mut states = Vec::with_capacity(k);
    for (idx, (e, vec)) in pairs.into_iter().enumerate() {
        let residual = tridiagonal_residual(&diag, -0.5 * kinetic, e, &vec);
        if residual > RESIDUAL_TOLERANCE * (1.0 + e.abs()) {
            return Err(BohmError::Numeric {
                iterations: idx + 1,
                detail: format!("eigenpair {idx} residual {residual:e} exceeds tolerance"),
            });
        }
        let mut values = Vec::with_capacity(n);
        values.push(Complex64::new(0.0, 0.0));
        values.extend(vec.iter().map(|x| Complex64::new(*x, 0.0)));
        values.push(Complex64::new(0.0, 0.0));
        let mut psi = WaveFunction::new(*grid, values, 0.0)?.normalize()?;
        // sign convention: first significant lobe positive
        let peak = psi.values().iter().fold(0.0f64, |m, z| m.max(z.re.abs()));
        if let Some(first) = psi.values().iter().find(|z| z.re.abs() > 1e-3 * peak) {
            if first.re < 0.0 {
                psi = psi.scaled(Complex64::new(-1.0, 0.0));
            }
        }
        energies.push(e);
        states.push(psi);
    }
    Ok(EigenSolution { energies, states })
}

fn tridiagonal_residual(diag: &[f64], off: f64, e: f64, v: &[f64]) -> f64 {
    let n = v.len();
    let mut r2 = 0.0;
    for j in 0..n {
        let mut hv = (diag[j] - e) * v[j];
        if j > 0 {
            hv += off * v[j - 1];
        }
        if j + 1 < n {
            hv += off * v[j + 1];
        }
        r2 += hv * hv;
    }
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    r2.sqrt() / norm
}

/// Jump of `dφ/dx` across a regularized delta at `x0` of default width.
pub fn slope_jump(state: &WaveFunction1D, x0: f64, window: usize) -> Result<f64> {
    let support = (DELTA_TRUNCATION * DEFAULT_DELTA_WIDTH).ceil() as usize;
    slope_jump_with_support(state, x0, window, support)
}

/// Jump of `dφ/dx` across `x0`. Centered-difference slopes at `window` nodes on
/// each side, outside `support` nodes around `x0`, are fitted by a line and
/// extrapolated to `x0`; the result is right minus left.
pub fn slope_jump_with_support(state: &WaveFunction1D, x0: f64, window: usize, support: usize) -> Result<f64> {
    let grid = state.grid();
    let n = grid.n_points();
    let centre = grid.nearest(x0);
    if window < 2 {
        return Err(BohmError::Precondition("slope fit needs at least 2 nodes per side".into()));
    }
    let reach = support + window + 1;
    if centre < reach || centre + reach > n - 1 {
        return Err(BohmError::Geometry(format!(
            "x0 = {x0} is within {reach} nodes of a wall; slope fit does not fit"
        )));
    }
    let phi: Vec<f64> = state.values().iter().map(|z| z.re).collect();
    let slope_at = |j: usize| (phi[j + 1] - phi[j - 1]) / (2.0 * grid.dx());
    let left: Vec<usize> = (centre - support - window..centre - support).collect();
    let right: Vec<usize> = (centre + support + 1..=centre + support + window).collect();
    let fit = |nodes: &[usize]| -> f64 {
        let xs: Vec<f64> = nodes.iter().map(|&j| grid.coord(j)).collect();
        let ys: Vec<f64> = nodes.iter().map(|&j| slope_at(j)).collect();
        line_fit_at(&xs, &ys, x0)
    };
    Ok(fit(&right) - fit(&left))
}

fn line_fit_at(xs: &[f64], ys: &[f64], at: f64) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    my + slope * (at - mx)
}

/// Real part of a 1D state at an off-node position.
#[cfg(test)]
pub(crate) fn value_at(state: &WaveFunction1D, x: f64) -> f64 {
    let re: Vec<f64> = state.values().iter().map(|z| z.re).collect();
    crate::grid::interpolate(state.grid(), &re, &[x]).value
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{inner_product, make_grid};
    use crate::tdse::{well_energy, DeltaCoupling, SwitchingProfile};
    use std::f64::consts::PI;

    fn units() -> UnitSystem {
        UnitSystem::default()
    }

    #[test]
    fn infinite_well_levels_within_half_percent() {
        let grid = make_grid(0.0, 1.0, 400, 1e-4).unwrap();
        let sol = solve_stationary(&Potential::InfiniteWell, &grid, 3, &units()).unwrap();
        for (k, e) in sol.energies.iter().enumerate() {
            let exact = well_energy(k + 1, &units());
            assert!((e - exact).abs() / exact < 5e-3);
        }
        for a in 0..3 {
            for b in 0..3 {
                let ip = inner_product(&sol.states[a], &sol.states[b]).unwrap();
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((ip.re - want).abs() < 1e-8 && ip.im.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn zero_profile_equals_infinite_well() {
        let grid = make_grid(0.0, 1.0, 200, 1e-4).unwrap();
        let a = solve_stationary(&Potential::InfiniteWell, &grid, 4, &units()).unwrap();
        let b = solve_stationary(&Potential::Static(vec![0.0; 200]), &grid, 4, &units()).unwrap();
        assert_eq!(a.energies, b.energies);
    }

    #[test]
    fn discrete_levels_match_closed_form_of_the_stencil() {
        // eigenvalues of the 3-point Laplacian: (hbar²/(m dx²)) (1 - cos(nπ dx / L))
        let grid = make_grid(0.0, 1.0, 129, 1e-4).unwrap();
        let sol = solve_stationary(&Potential::InfiniteWell, &grid, 5, &units()).unwrap();
        let dx = grid.dx();
        for (k, e) in sol.energies.iter().enumerate() {
            let n = (k + 1) as f64;
            let exact = (1.0 - (n * PI * dx).cos()) / (dx * dx);
            assert!((e - exact).abs() < 1e-9 * exact);
        }
    }

    #[test]
    fn too_many_levels_requested() {
        let grid = make_grid(0.0, 1.0, 40, 1e-4).unwrap();
        assert!(matches!(
            solve_stationary(&Potential::InfiniteWell, &grid, 11, &units()),
            Err(BohmError::Precondition(_))
        ));
    }

    fn frozen_ground_state(n: usize, x0: f64, s_eff: f64) -> (f64, WaveFunction1D, Grid1D) {
        // s_eff = ε g X; the coupling strength is -hbar s_eff
        let grid = make_grid(0.0, 1.0, n, 1e-4).unwrap();
        let window = SwitchingProfile::window(2.0).unwrap();
        let g0 = window.g(0.0);
        let c = DeltaCoupling::new(x0, s_eff / g0, window);
        let pot = c.frozen(&grid, &units(), 0.0, 1.0).unwrap();
        let sol = solve_stationary(&pot, &grid, 2, &units()).unwrap();
        (sol.energies[0], sol.states[0].clone(), grid)
    }

    #[test]
    fn first_order_shift_of_ground_level() {
        let x0 = 0.5;
        let s = 0.1;
        let (e, _, grid) = frozen_ground_state(400, x0, s);
        let e0 = solve_stationary(&Potential::InfiniteWell, &grid, 1, &units()).unwrap().energies[0];
        let predicted = -s * 2.0 * (PI * x0).sin().powi(2);
        assert!(((e - e0) - predicted).abs() < 0.05 * predicted.abs(), "{} vs {}", e - e0, predicted);
    }

    #[test]
    fn perturbative_slope_richardson() {
        // (E(s) - E(0))/s -> -|φ1(x0)|² with an O(s) remainder
        let x0 = 0.3;
        let (e_full, _, grid) = frozen_ground_state(400, x0, 0.2);
        let (e_half, _, _) = frozen_ground_state(400, x0, 0.1);
        let e0 = solve_stationary(&Potential::InfiniteWell, &grid, 1, &units()).unwrap().energies[0];
        let d_full = (e_full - e0) / 0.2;
        let d_half = (e_half - e0) / 0.1;
        let richardson = 2.0 * d_half - d_full;
        let d = crate::tdse::regularized_delta(x0, &grid).unwrap();
        let phi = crate::tdse::sample_well_mode(1, &grid, 1.0).unwrap();
        let coeff: f64 = -(0..grid.n_points()).map(|i| phi.values()[i].norm_sqr() * d[i] * grid.weight(i)).sum::<f64>();
        assert!((d_half - coeff).abs() < (d_full - coeff).abs());
        assert!((richardson - coeff).abs() < 1e-3 * coeff.abs(), "{richardson} vs {coeff}");
    }

    #[test]
    fn slope_jump_zero_coupling_and_sign_flip() {
        let grid = make_grid(0.0, 1.0, 800, 1e-4).unwrap();
        let sol = solve_stationary(&Potential::InfiniteWell, &grid, 1, &units()).unwrap();
        assert!(slope_jump(&sol.states[0], 0.5, 6).unwrap().abs() < 1e-3);

        let (_, plus, _) = frozen_ground_state(800, 0.5, 0.1);
        let (_, minus, _) = frozen_ground_state(800, 0.5, -0.1);
        let jp = slope_jump(&plus, 0.5, 6).unwrap() / value_at(&plus, 0.5);
        let jm = slope_jump(&minus, 0.5, 6).unwrap() / value_at(&minus, 0.5);
        assert!(jp < 0.0 && jm > 0.0);
        assert!((jp + jm).abs() < 0.02 * jp.abs(), "{jp} {jm}");
    }

    #[test]
    fn slope_jump_matches_green_function_condition() {
        // -2 m ε g X φ(x0) / hbar with ε g X = 0.1
        for n in [400usize, 800, 1600] {
            let (_, phi, _) = frozen_ground_state(n, 0.5, 0.1);
            let jump = slope_jump(&phi, 0.5, 6).unwrap();
            let expected = -2.0 * 0.1 * value_at(&phi, 0.5);
            assert!((jump - expected).abs() < 0.1 * expected.abs(), "n={n}: {jump} vs {expected}");
        }
    }

    #[test]
    fn slope_jump_geometry_error_near_wall() {
        let grid = make_grid(0.0, 1.0, 200, 1e-4).unwrap();
        let sol = solve_stationary(&Potential::InfiniteWell, &grid, 1, &units()).unwrap();
        assert!(matches!(slope_jump(&sol.states[0], 0.05, 6), Err(BohmError::Geometry(_))));
    }
}
