//! Sudden removal of the well walls: the eigenstate splits into two packets
//! running apart at `± hbar n π / (m L)`.

use super::config::{ScenarioConfig, ScenarioKind};
use super::report::{Assertion, ScenarioReport, Series};
use super::report::StateSnapshot;
use super::{precondition_kind, snapshot_steps, trajectory_series};
use crate::error::{BohmError, Result};
use crate::fields::{density, velocity_divergence, MaskedField};
use crate::grid::{interpolate, make_grid, Grid1D, WaveFunction1D};
use crate::spectral::{momentum_density, DEFAULT_PADDING};
use crate::tdse::{check_mode_resolution, sample_well_mode, Potential, Propagator1D};
use crate::trajectories::{
    density_along_path, equivariance_check, sample_ensemble, EnsembleIntegrator, Trajectory, VelocitySnapshot,
};

/// Probability allowed in the outer 5% of the open domain on either side.
pub const EDGE_PROBABILITY: f64 = 1e-2;
const EDGE_BAND: f64 = 0.05;
pub const SPLIT_TOLERANCE: f64 = 0.02;
pub const SPEED_TOLERANCE: f64 = 0.05;
pub const KS_THRESHOLD: f64 = 0.03;
const DENSITY_PATHS: usize = 20;
const DENSITY_TOLERANCE: f64 = 0.05;
/// Paths checked by the transport formula start where `ρ` exceeds this fraction of its maximum.
const DENSITY_BULK: f64 = 0.1;

fn edge_probability(psi: &WaveFunction1D) -> f64 {
    let g = psi.grid();
    let band = EDGE_BAND * g.extent();
    let rho = density(psi);
    (0..g.n_points())
        .filter(|i| {
            let x = g.coord(*i);
            x < g.x_min() + band || x > g.x_max() - band
        })
        .map(|i| g.weight(i) * rho[i])
        .sum()
}

pub fn run_wall_release(cfg: &ScenarioConfig) -> Result<ScenarioReport> {
    precondition_kind(cfg, ScenarioKind::WallRelease)?;
    cfg.validate()?;
    let units = cfg.units;
    let rc = cfg.release;
    let l = units.box_length;
    let n = rc.n;
    let speed = units.hbar * n as f64 * std::f64::consts::PI / (units.mass_m * l);
    let t_end = rc.travel * l / speed;
    let steps = (t_end / rc.dt).ceil().max(1.0) as usize;
    let half = 0.5 * rc.domain_factor * l;
    let grid = make_grid(0.5 * l - half, 0.5 * l + half, rc.n_points, t_end / steps as f64)?;
    check_mode_resolution(n, &grid, l)?;
    let psi0 = sample_well_mode(n, &grid, l)?.normalize()?;

    let mut report = ScenarioReport::new(cfg.scenario, cfg.ensemble.seed);
    report.scalar("speed_predicted", speed);
    report.scalar("t_end", t_end);
    report.scalar("steps", steps as f64);

    let ensemble = sample_ensemble(&psi0, cfg.ensemble.n_traj, cfg.ensemble.seed)?;
    if ensemble.low_statistics {
        report.warnings.push(format!("low statistics: {} trajectories", ensemble.len()));
    }
    let rho0 = density(&psi0);
    // the transport formula is evaluated from one box-crossing time on
    let settle = l / speed;

    let mut integrator = EnsembleIntegrator::new(grid, ensemble, None);
    let mut prop = Propagator1D::new(psi0.clone(), Potential::Static(vec![0.0; grid.n_points()]), units)?;
    let mut prev = VelocitySnapshot::from_state(&psi0, &units, None);
    let mut divergence: Vec<(f64, MaskedField)> = Vec::new();
    let mut settle_index = None;
    let mut rho_settle = Vec::new();
    let every = cfg.ensemble.snapshot_every;
    let mut snap_count = 1usize;
    let mut edge_max = 0.0f64;
    let dumps = snapshot_steps(steps, cfg.output.field_snapshots);
    for s in 1..=steps {
        prop.step()?;
        if dumps.contains(&s) {
            report.snapshots.push(StateSnapshot::of(prop.state()));
        }
        if s == 1 {
            let rho1 = density(prop.state());
            let change = rho1.iter().zip(&rho0).map(|(a, b)| (a - b).abs()).sum::<f64>() * grid.dx();
            report.scalar("first_step_density_l1_change", change);
        }
        if s % every == 0 || s == steps {
            prop.check_integrity()?;
            let state = prop.state();
            let edge = edge_probability(state);
            edge_max = edge_max.max(edge);
            if edge > EDGE_PROBABILITY {
                return Err(BohmError::DomainTooSmall(format!(
                    "probability {edge:.3e} in the outer {}% of the open domain at t = {:.4}",
                    100.0 * EDGE_BAND,
                    state.time()
                )));
            }
            let snap = VelocitySnapshot::from_state(state, &units, None);
            integrator.advance(&prev, &snap)?;
            if settle_index.is_none() && state.time() >= settle {
                settle_index = Some(snap_count);
                rho_settle = density(state);
            }
            if settle_index.is_some() {
                divergence.push((state.time(), velocity_divergence(state, &units, None)));
            }
            snap_count += 1;
            prev = snap;
        }
    }
    let ensemble = integrator.finish();
    let final_state = prop.into_state();
    report.scalar("edge_probability_max", edge_max);
    report.scalar("norm_drift", (final_state.norm() - 1.0).abs());
    report.scalar("rejected_fraction", ensemble.rejected_fraction());

    // momentum space
    let md = momentum_density(final_state.values(), &grid, units.hbar, DEFAULT_PADDING);
    let p_peak = units.hbar * n as f64 * std::f64::consts::PI / l;
    let plus = md.refined_peak_in(0.0, f64::INFINITY).unwrap_or(f64::NAN);
    let minus = md.refined_peak_in(f64::NEG_INFINITY, 0.0).unwrap_or(f64::NAN);
    // resolution of the unpadded transform over the open domain
    let bin = 2.0 * std::f64::consts::PI * units.hbar / (grid.n_points() as f64 * grid.dx());
    report.scalar("momentum_bin", bin);
    report.scalar("momentum_sample_spacing", md.dp);
    report.scalar("momentum_peak_plus", plus);
    report.scalar("momentum_peak_minus", minus);
    report.scalar("momentum_peak_predicted", p_peak);
    report.assert(Assertion::absolute("momentum_peak_plus", plus, p_peak, bin));
    report.assert(Assertion::absolute("momentum_peak_minus", minus, -p_peak, bin));
    let mut ps = Series::new("momentum_density", &[("p", "hbar/L"), ("density", "L/hbar")]);
    let p_max = 3.0 * p_peak;
    for (p, d) in md.p.iter().zip(&md.density).filter(|(p, _)| p.abs() <= p_max) {
        ps.push(vec![*p, *d]);
    }
    report.series.push(ps);

    // asymptotic motion
    let centre = 0.5 * l;
    let done: Vec<&Trajectory> = ensemble.trajectories.iter().filter(|t| t.is_completed()).collect();
    let speeds: Vec<f64> = done.iter().map(|t| late_speed(t)).collect();
    let right_final = done.iter().filter(|t| t.last()[0] > centre).count() as f64 / done.len().max(1) as f64;
    let consistent = done
        .iter()
        .zip(&speeds)
        .filter(|(t, v)| (t.initial()[0] > centre) == (**v > 0.0))
        .count() as f64
        / done.len().max(1) as f64;
    let mut abs_speeds: Vec<f64> = speeds.iter().map(|v| v.abs()).collect();
    abs_speeds.sort_by(f64::total_cmp);
    let median = if abs_speeds.is_empty() { f64::NAN } else { abs_speeds[abs_speeds.len() / 2] };
    let within = abs_speeds.iter().filter(|v| (*v / speed - 1.0).abs() <= SPEED_TOLERANCE).count() as f64
        / abs_speeds.len().max(1) as f64;
    report.scalar("right_fraction", right_final);
    report.scalar("side_consistent_fraction", consistent);
    report.scalar("speed_median", median);
    report.scalar("speed_fraction_within_tolerance", within);
    report.assert(Assertion::absolute("left_right_split", right_final, 0.5, SPLIT_TOLERANCE));
    report.assert(Assertion::above("starting_side_sets_direction", consistent, 0.99));
    report.assert(Assertion::relative("asymptotic_speed_median", median, speed, SPEED_TOLERANCE));

    let eq = equivariance_check(&ensemble, &final_state, KS_THRESHOLD)?;
    report.scalar("ks_final", eq.ks[0]);
    report.scalar("dkw_band", eq.dkw_band);
    report.assert(Assertion::below("equivariance_ks", eq.ks[0], KS_THRESHOLD));

    // density transported along individual paths
    let rho_t = density(&final_state);
    let mut worst = 0.0f64;
    let mut checked = 0usize;
    if let Some(k0) = settle_index {
        let rho_max = rho_settle.iter().fold(0.0f64, |m, r| m.max(*r));
        for tr in ensemble.trajectories.iter().filter(|t| t.is_completed()) {
            if checked == DENSITY_PATHS {
                break;
            }
            let tail = Trajectory {
                times: tr.times[k0..].to_vec(),
                positions: tr.positions[k0..].to_vec(),
                status: tr.status,
            };
            let start = interpolate(&grid, &rho_settle, &tail.positions[0][..1]).value;
            if start < DENSITY_BULK * rho_max {
                continue;
            }
            let path = match density_along_path(&grid, &tail, start, &divergence) {
                Ok(p) => p,
                Err(BohmError::TrajectoryIntegrity(_)) => continue,
                Err(e) => return Err(e),
            };
            let actual = interpolate(&grid, &rho_t, &tail.positions[tail.positions.len() - 1][..1]).value;
            worst = worst.max((path[path.len() - 1] / actual - 1.0).abs());
            checked += 1;
        }
    }
    report.scalar("density_reference_time", settle);
    report.scalar("density_paths_checked", checked as f64);
    report.scalar("density_along_path_rel", worst);
    report.assert(Assertion::below("density_along_path", worst, DENSITY_TOLERANCE));

    report.series.push(trajectory_series(&ensemble, cfg.output.trajectory_paths));
    report.series.push(final_density_series(&final_state, &grid));
    Ok(report)
}

/// Mean velocity over the last quarter of the path.
fn late_speed(t: &Trajectory) -> f64 {
    let n = t.times.len();
    let k = (3 * (n - 1)) / 4;
    if k + 1 >= n {
        return 0.0;
    }
    (t.positions[n - 1][0] - t.positions[k][0]) / (t.times[n - 1] - t.times[k])
}

fn final_density_series(psi: &WaveFunction1D, grid: &Grid1D) -> Series {
    let mut s = Series::new("final_density", &[("x", "L"), ("rho", "1/L")]);
    for (i, r) in density(psi).into_iter().enumerate() {
        s.push(vec![grid.coord(i), r]);
    }
    s
}
