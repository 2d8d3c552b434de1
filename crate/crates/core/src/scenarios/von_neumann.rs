//! Impulsive system–meter coupling: each eigenvalue branch kicks the pointer
//! momentum by `hbar ε a`.

use nalgebra::{DMatrix, DVector};

use super::config::{ScenarioConfig, ScenarioKind};
use super::report::{Assertion, ScenarioReport, Series, StateSnapshot};
use super::precondition_kind;
use crate::error::{BohmError, Result};
use crate::fields::density;
use crate::grid::{inner_product, make_grid, Grid1D, UnitSystem, WaveFunction1D};
use crate::spectral::{momentum_density, MomentumDensity, DEFAULT_PADDING};
use crate::tdse::{gaussian_packet, impulsive_kick, Potential, Propagator1D, PHASE_STEP_GUARD};

pub const MIXTURE_L1_TOLERANCE: f64 = 0.01;
pub const WEIGHT_TOLERANCE_TWO: f64 = 0.01;
pub const WEIGHT_TOLERANCE_MANY: f64 = 0.02;
const CROSS_CHECK_L1: f64 = 0.01;

/// Closed-form pointer momentum density `Σ w_a |M(p - hbar ε a)|²` for a
/// Gaussian pointer of position width `sigma` and mean momentum `p0`.
pub fn mixture_density(p: f64, eigenvalues: &[f64], weights: &[f64], epsilon: f64, sigma: f64, p0: f64, hbar: f64) -> f64 {
    let total: f64 = weights.iter().sum();
    eigenvalues.iter().zip(weights).map(|(a, w)| w / total * branch_density(p, p0 + hbar * epsilon * a, sigma, hbar)).sum()
}

fn branch_density(p: f64, mean: f64, sigma: f64, hbar: f64) -> f64 {
    let sp = hbar / (2.0 * sigma);
    (-(p - mean).powi(2) / (2.0 * sp * sp)).exp() / (sp * (2.0 * std::f64::consts::PI).sqrt())
}

/// `∫ sqrt(ρ_a ρ_b)` on a common grid with trapezoid-free uniform weights.
fn bhattacharyya(a: &[f64], b: &[f64], step: f64) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x * y).sqrt()).sum::<f64>() * step
}

fn fit_weights(md: &MomentumDensity, basis: &[Vec<f64>]) -> Result<Vec<f64>> {
    let k = basis.len();
    let g = DMatrix::from_fn(md.p.len(), k, |i, j| basis[j][i]);
    let y = DVector::from_column_slice(&md.density);
    let svd = g.svd(true, true);
    let w = svd
        .solve(&y, 1e-12)
        .map_err(|e| BohmError::Numeric { iterations: 0, detail: format!("least-squares weight fit failed: {e}") })?;
    Ok(w.iter().copied().collect())
}

pub fn run_von_neumann(cfg: &ScenarioConfig) -> Result<ScenarioReport> {
    precondition_kind(cfg, ScenarioKind::VonNeumann)?;
    cfg.validate()?;
    let vn = &cfg.von_neumann;
    let units = cfg.units;
    let hbar = units.hbar;
    let sigma = cfg.pointer.sigma;
    let p0 = cfg.pointer.momentum;
    let total: f64 = vn.weights.iter().sum();
    let weights: Vec<f64> = vn.weights.iter().map(|w| w / total).collect();
    let centre = cfg.pointer.center;
    let axis = make_grid(centre - vn.half_width, centre + vn.half_width, vn.n_points, vn.dt)?;
    let pointer = gaussian_packet(&axis, centre, sigma, p0, hbar)?;

    let mut report = ScenarioReport::new(cfg.scenario, cfg.ensemble.seed);
    let branches: Vec<WaveFunction1D> =
        vn.eigenvalues.iter().map(|a| impulsive_kick(&pointer, vn.epsilon, *a)).collect::<Result<_>>()?;

    // the kicked branches are the only states worth dumping here
    if cfg.output.field_snapshots > 0 {
        report.snapshots = branches.iter().take(cfg.output.field_snapshots).map(StateSnapshot::of).collect();
    }

    // momentum space
    let densities: Vec<MomentumDensity> =
        branches.iter().map(|b| momentum_density(b.values(), &axis, hbar, DEFAULT_PADDING)).collect();
    let mut mixture = densities[0].clone();
    for d in mixture.density.iter_mut() {
        *d = 0.0;
    }
    for (md, w) in densities.iter().zip(&weights) {
        for (m, d) in mixture.density.iter_mut().zip(&md.density) {
            *m += w * d;
        }
    }
    let l1 = mixture.l1_distance(|p| mixture_density(p, &vn.eigenvalues, &weights, vn.epsilon, sigma, p0, hbar));
    report.scalar("mixture_l1", l1);
    report.assert(Assertion::below("mixture_l1", l1, MIXTURE_L1_TOLERANCE));
    for (k, a) in vn.eigenvalues.iter().enumerate() {
        report.scalar(&format!("branch_{k}_mean_momentum"), densities[k].mean());
        report.scalar(&format!("branch_{k}_predicted_momentum"), p0 + hbar * vn.epsilon * a);
    }

    let basis: Vec<Vec<f64>> = vn
        .eigenvalues
        .iter()
        .map(|a| mixture.p.iter().map(|p| branch_density(*p, p0 + hbar * vn.epsilon * a, sigma, hbar)).collect())
        .collect();
    let sp = hbar / (2.0 * sigma);
    let gaps: Vec<f64> = pair_gaps(&vn.eigenvalues);
    let min_gap = gaps.iter().copied().fold(f64::INFINITY, f64::min);
    let separation = hbar * vn.epsilon.abs() * min_gap;
    let threshold = 3.0 * sp;
    report.scalar("branch_separation", separation);
    report.scalar("distinguishability_threshold", threshold);
    let distinguishable = vn.eigenvalues.len() < 2 || separation >= threshold;
    if !distinguishable {
        report.warnings.push(format!(
            "branches indistinguishable: momentum separation {separation:.4e} below {threshold:.4e}"
        ));
    } else if vn.eigenvalues.len() >= 2 {
        let fitted = fit_weights(&mixture, &basis)?;
        let tol = if vn.eigenvalues.len() == 2 { WEIGHT_TOLERANCE_TWO } else { WEIGHT_TOLERANCE_MANY };
        for (k, (f, w)) in fitted.iter().zip(&weights).enumerate() {
            report.scalar(&format!("weight_{k}_fitted"), *f);
            if *w > 0.0 {
                report.assert(Assertion::relative(&format!("weight_{k}"), *f, *w, tol));
            }
        }
    }

    // momentum-space overlaps between branches
    let mut overlap_max = 0.0f64;
    for i in 0..branches.len() {
        for j in i + 1..branches.len() {
            let o = bhattacharyya(&densities[i].density, &densities[j].density, mixture.dp);
            overlap_max = overlap_max.max(o);
        }
    }
    report.scalar("momentum_overlap_max", overlap_max);

    if vn.epsilon == 0.0 {
        let identity = inner_product(&pointer, &branches[0])?.norm();
        report.assert(Assertion::absolute("zero_coupling_identity", identity, 1.0, 1e-12));
    }

    // position space: branches coincide at the kick and separate in free flight
    let meter_units = UnitSystem { mass_m: units.mass_meter, ..units };
    let mut spatial_initial = 0.0f64;
    let mut spatial_final = 0.0f64;
    let mut flown = Vec::with_capacity(branches.len());
    if vn.t_obs > 0.0 {
        let steps = (vn.t_obs / vn.dt).ceil().max(1.0) as usize;
        let flight = axis.with_dt(vn.t_obs / steps as f64)?;
        for b in &branches {
            let psi = WaveFunction1D::new(flight, b.values().to_vec(), 0.0)?;
            let mut prop = Propagator1D::new(psi, Potential::Static(vec![0.0; flight.n_points()]), meter_units)?;
            for _ in 0..steps {
                prop.step()?;
            }
            prop.check_integrity()?;
            edge_check(prop.state())?;
            flown.push(density(prop.state()));
        }
        let initial: Vec<Vec<f64>> = branches.iter().map(density).collect();
        for i in 0..branches.len() {
            for j in i + 1..branches.len() {
                spatial_initial = spatial_initial.max(bhattacharyya(&initial[i], &initial[j], axis.dx()));
                spatial_final = spatial_final.max(bhattacharyya(&flown[i], &flown[j], axis.dx()));
            }
        }
        report.scalar("spatial_overlap_initial", spatial_initial);
        report.scalar("spatial_overlap_t_obs", spatial_final);
        let st = sigma * (1.0 + (hbar * vn.t_obs / (2.0 * units.mass_meter * sigma * sigma)).powi(2)).sqrt();
        let d = hbar * vn.epsilon.abs() * min_gap * vn.t_obs / units.mass_meter;
        if min_gap.is_finite() {
            report.scalar("spatial_overlap_t_obs_free", (-d * d / (8.0 * st * st)).exp());
        }
    }

    if vn.cross_check_window > 0.0 && vn.epsilon != 0.0 {
        let worst = cross_check(&pointer, &axis, vn.eigenvalues.as_slice(), vn.epsilon, vn.cross_check_window, vn.dt, &densities, &units)?;
        report.scalar("cross_check_l1", worst);
        report.assert(Assertion::below("narrow_window_cross_check", worst, CROSS_CHECK_L1));
    }

    let mut s = Series::new("pointer_momentum_density", &[("P", "hbar/L"), ("density", "L/hbar")]);
    let p_span = hbar * vn.epsilon.abs() * vn.eigenvalues.iter().fold(0.0f64, |m, a| m.max(a.abs())) + 8.0 * sp;
    for (p, d) in mixture.p.iter().zip(&mixture.density).filter(|(p, _)| (**p - p0).abs() <= p_span) {
        s.push(vec![*p, *d]);
    }
    report.series.push(s);
    if !flown.is_empty() {
        let mut s = Series::new("pointer_position_density_t_obs", &[("X", "L"), ("density", "1/L")]);
        for i in 0..axis.n_points() {
            let rho: f64 = flown.iter().zip(&weights).map(|(f, w)| w * f[i]).sum();
            s.push(vec![axis.coord(i), rho]);
        }
        report.series.push(s);
    }
    Ok(report)
}

fn pair_gaps(a: &[f64]) -> Vec<f64> {
    let mut out = Vec::new();
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            out.push((a[i] - a[j]).abs());
        }
    }
    out
}

fn edge_check(psi: &WaveFunction1D) -> Result<()> {
    let g = psi.grid();
    let band = 0.05 * g.extent();
    let rho = density(psi);
    let p: f64 = (0..g.n_points())
        .filter(|i| g.coord(*i) < g.x_min() + band || g.coord(*i) > g.x_max() - band)
        .map(|i| g.weight(i) * rho[i])
        .sum();
    if p > 1e-6 {
        return Err(BohmError::DomainTooSmall(format!("pointer probability {p:.3e} near the edge of the meter axis")));
    }
    Ok(())
}

/// Propagate each branch through `-hbar ε a g(t) X` over a narrow window and
/// compare with the exact kick; returns the largest momentum-density L¹ gap.
#[allow(clippy::too_many_arguments)]
fn cross_check(
    pointer: &WaveFunction1D,
    axis: &Grid1D,
    eigenvalues: &[f64],
    epsilon: f64,
    window: f64,
    dt: f64,
    kicked: &[MomentumDensity],
    units: &UnitSystem,
) -> Result<f64> {
    let profile = crate::tdse::SwitchingProfile::window(window)?;
    let hbar = units.hbar;
    let meter_units = UnitSystem { mass_m: units.mass_meter, ..*units };
    let x_max = axis.x_min().abs().max(axis.x_max().abs());
    let mut worst = 0.0f64;
    for (a, exact) in eigenvalues.iter().zip(kicked) {
        let v_max = hbar * epsilon.abs() * a.abs() * profile.peak() * x_max;
        let guard = 0.9 * PHASE_STEP_GUARD * hbar / v_max.max(f64::MIN_POSITIVE);
        let steps = (window / dt.min(guard)).ceil().max(1.0) as usize;
        let g = axis.with_dt(window / steps as f64)?;
        let psi = WaveFunction1D::new(g, pointer.values().to_vec(), -0.5 * window)?;
        let (e, a) = (epsilon, *a);
        let f = std::sync::Arc::new(move |x: f64, _: f64, t: f64| -hbar * e * a * profile.g(t) * x);
        let mut prop = Propagator1D::new(psi, Potential::Composite(f), meter_units)?;
        for _ in 0..steps {
            prop.step()?;
        }
        prop.check_integrity()?;
        let md = momentum_density(prop.state().values(), &g, hbar, DEFAULT_PADDING);
        let l1 = md.density.iter().zip(&exact.density).map(|(x, y)| (x - y).abs()).sum::<f64>() * md.dp;
        worst = worst.max(l1);
    }
    Ok(worst)
}
