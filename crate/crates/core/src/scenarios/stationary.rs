//! Eigenstate of the infinite well: zero velocity, constant quantum potential,
//! pinned trajectories confined to their nodal cells.

use super::config::{ScenarioConfig, ScenarioKind};
use super::report::{Assertion, ScenarioReport};
use super::report::StateSnapshot;
use super::{precondition_kind, snapshot_steps, trajectory_series};
use crate::error::Result;
use crate::fields::{quantum_potential, total_potential_and_forces, velocity_field};
use crate::grid::{make_grid, Lattice};
use crate::tdse::{solve_stationary, well_eigenstate, well_energy, Potential, Propagator1D};
use crate::trajectories::{equivariance_check, node_confinement_check, sample_ensemble, EnsembleIntegrator, VelocitySnapshot};

pub const MAX_STATIONARY_VELOCITY: f64 = 1e-8;
pub const Q_TOLERANCE: f64 = 5e-3;
pub const PINNING_TOLERANCE: f64 = 1e-8;

pub fn run_stationary_well(cfg: &ScenarioConfig) -> Result<ScenarioReport> {
    precondition_kind(cfg, ScenarioKind::StationaryWell)?;
    cfg.validate()?;
    let units = cfg.units;
    let n = cfg.well.n;
    let l = units.box_length;
    let t_end = cfg.well.periods * units.hbar / well_energy(n, &units);
    let steps = (t_end / cfg.grid.dt).ceil().max(1.0) as usize;
    let grid = make_grid(0.0, l, cfg.grid.n_x, t_end / steps as f64)?;
    let (phi, e_n) = well_eigenstate(n, &grid, &units)?;
    let mut report = ScenarioReport::new(cfg.scenario, cfg.ensemble.seed);
    report.scalar("n", n as f64);
    report.scalar("energy_analytic", e_n);
    report.scalar("t_end", t_end);
    report.scalar("steps", steps as f64);

    // statics at t = 0
    let v0 = vec![0.0; grid.n_points()];
    let q = quantum_potential(&phi, &units, None);
    let interior = |i: usize| i > 0 && i + 1 < grid.n_points();
    let q_dev = q
        .values
        .iter()
        .enumerate()
        .filter(|(i, _)| interior(*i) && !q.mask[*i])
        .fold(0.0f64, |m, (i, qv)| m.max((qv + v0[i] - e_n).abs() / e_n));
    report.scalar("q_masked_nodes", q.masked_count() as f64);
    report.assert(Assertion::below("q_plus_v_minus_energy_rel", q_dev, Q_TOLERANCE));
    let fields = total_potential_and_forces(&phi, &v0, &units, None)?;
    let f_max = (0..grid.len())
        .filter(|i| !fields.force_mask[*i])
        .fold(0.0f64, |m, i| m.max(fields.force.component(0)[i].abs()));
    report.scalar("force_max_abs", f_max);

    let numeric = solve_stationary(&Potential::InfiniteWell, &grid, n, &units)?;
    let e_num = numeric.energies[n - 1];
    report.scalar("energy_numeric", e_num);
    let qn = quantum_potential(&numeric.states[n - 1], &units, None);
    let qn_dev = qn
        .values
        .iter()
        .enumerate()
        .filter(|(i, _)| interior(*i) && !qn.mask[*i])
        .fold(0.0f64, |m, (_, qv)| m.max((qv - e_num).abs() / e_num));
    report.scalar("numeric_state_q_minus_energy_rel", qn_dev);

    // dynamics
    let ensemble = sample_ensemble(&phi, cfg.ensemble.n_traj, cfg.ensemble.seed)?;
    if ensemble.low_statistics {
        report.warnings.push(format!("low statistics: {} trajectories", ensemble.len()));
    }
    let mut integrator = EnsembleIntegrator::new(grid, ensemble, None);
    let mut prop = Propagator1D::new(phi.clone(), Potential::InfiniteWell, units)?;
    let mut prev = VelocitySnapshot::from_state(&phi, &units, None);
    let mut v_max = max_unmasked(&prev);
    let every = cfg.ensemble.snapshot_every;
    let dumps = snapshot_steps(steps, cfg.output.field_snapshots);
    for s in 1..=steps {
        prop.step()?;
        if dumps.contains(&s) {
            report.snapshots.push(StateSnapshot::of(prop.state()));
        }
        if s % every == 0 || s == steps {
            prop.check_integrity()?;
            let snap = VelocitySnapshot::from_state(prop.state(), &units, None);
            v_max = v_max.max(max_unmasked(&snap));
            integrator.advance(&prev, &snap)?;
            prev = snap;
        }
    }
    let ensemble = integrator.finish();
    let final_state = prop.into_state();
    report.scalar("norm_drift", (final_state.norm() - 1.0).abs());
    report.assert(Assertion::below("max_velocity", v_max, MAX_STATIONARY_VELOCITY));
    let (v_final, _) = velocity_field(&final_state, &units, None);
    report.scalar("final_velocity_max_abs", v_final.component(0).iter().fold(0.0f64, |m, x| m.max(x.abs())));

    let drift = ensemble.trajectories.iter().fold(0.0f64, |m, t| m.max(t.max_drift(0)));
    report.scalar("max_drift", drift);
    report.scalar("rejected_fraction", ensemble.rejected_fraction());
    report.assert(Assertion::below("trajectory_pinning", drift, PINNING_TOLERANCE * l));
    report.assert(Assertion::holds("ordering_preserved", ensemble.ordering_preserved()));
    if ensemble.len() >= 2 {
        let eq = equivariance_check(&ensemble, &final_state, 1.0)?;
        report.scalar("ks_final", eq.ks[0]);
        report.scalar("dkw_band", eq.dkw_band);
    }
    if n >= 2 {
        let conf = node_confinement_check(&ensemble, &phi, n, &units)?;
        report.scalar("cell_crossings", conf.crossings.len() as f64);
        report.assert(Assertion::holds("node_confinement", conf.passed));
    }
    report.series.push(trajectory_series(&ensemble, cfg.output.trajectory_paths));
    Ok(report)
}

fn max_unmasked(s: &VelocitySnapshot) -> f64 {
    s.velocity.component(0).iter().zip(&s.mask).filter(|(_, m)| !**m).fold(0.0f64, |a, (v, _)| a.max(v.abs()))
}
