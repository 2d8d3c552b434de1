//! The `fields` subcommand: ρ, v, Q, U and F on every node of a scenario's
//! characteristic state, without running the scenario.
//!
//! * stationary: the well eigenstate;
//! * release: the eigenstate just after the walls are removed;
//! * von Neumann: the unkicked pointer packet (meter mass);
//! * protective and sweep: the adiabatic state at mid-interaction, built from
//!   the frozen-coupling eigenstate at each meter node times the pointer
//!   packet, with the accumulated dynamical phase to first order in `ε`.

use bohmlab_core::fields::{total_potential_and_forces, DerivedFields};
use bohmlab_core::grid::Grid2D;
use bohmlab_core::tdse::{
    gaussian_packet, sample_well_mode, solve_stationary, well_eigenstate, well_energy, DeltaCoupling, SwitchingProfile,
};
use bohmlab_core::{
    inner_product, make_grid, Complex64, Lattice, Potential, Result, ScenarioConfig, ScenarioKind, ScenarioReport,
    Series, UnitSystem, WaveFunction, WaveFunction1D, WaveFunction2D,
};

pub const FIELDS_SERIES: &str = "fields";

pub fn field_report(cfg: &ScenarioConfig) -> Result<ScenarioReport> {
    cfg.validate()?;
    let units = cfg.units;
    let l = units.box_length;
    let mut report = ScenarioReport::new(cfg.scenario, cfg.ensemble.seed);
    match cfg.scenario {
        ScenarioKind::StationaryWell => {
            let grid = make_grid(0.0, l, cfg.grid.n_x, cfg.grid.dt)?;
            let (phi, e) = well_eigenstate(cfg.well.n, &grid, &units)?;
            report.scalar("energy", e);
            push_1d(&mut report, &phi, &units)?;
        }
        ScenarioKind::WallRelease => {
            let rc = cfg.release;
            let half = 0.5 * rc.domain_factor * l;
            let grid = make_grid(0.5 * l - half, 0.5 * l + half, rc.n_points, rc.dt)?;
            let psi = sample_well_mode(rc.n, &grid, l)?.normalize()?;
            report.scalar("energy", well_energy(rc.n, &units));
            push_1d(&mut report, &psi, &units)?;
        }
        ScenarioKind::VonNeumann => {
            let vn = &cfg.von_neumann;
            let c = cfg.pointer.center;
            let grid = make_grid(c - vn.half_width, c + vn.half_width, vn.n_points, vn.dt)?;
            let pointer = gaussian_packet(&grid, c, cfg.pointer.sigma, cfg.pointer.momentum, units.hbar)?;
            let meter_units = UnitSystem { mass_m: units.mass_meter, ..units };
            push_1d(&mut report, &pointer, &meter_units)?;
        }
        ScenarioKind::Protective | ScenarioKind::AdiabaticSweep => {
            let duration = if cfg.scenario == ScenarioKind::Protective {
                cfg.coupling.duration
            } else {
                cfg.sweep.durations[0]
            };
            let (psi, v) = adiabatic_midpoint(cfg, duration)?;
            report.scalar("duration", duration);
            let f = total_potential_and_forces(&psi, &v, &units, None)?;
            report.scalar("norm", psi.norm());
            report.scalar("time", psi.time());
            masked_counts(&mut report, &f);
            let grid = psi.grid();
            let mut s = Series::new(
                FIELDS_SERIES,
                &[
                    ("x", "L"),
                    ("X", "L"),
                    ("rho", "1/L^2"),
                    ("v_x", "L E/hbar"),
                    ("v_X", "L E/hbar"),
                    ("Q", "E"),
                    ("U", "E"),
                    ("F_x", "E/L"),
                    ("F_X", "E/L"),
                ],
            );
            for idx in 0..grid.len() {
                let [x, xm] = grid.coords_of(idx);
                let vel = if f.node_mask[idx] { [f64::NAN; 2] } else { f.velocity.at(idx) };
                let q = if f.potential_mask[idx] { [f64::NAN; 2] } else { [f.quantum_potential[idx], f.total_potential[idx]] };
                let force = if f.force_mask[idx] { [f64::NAN; 2] } else { f.force.at(idx) };
                s.push(vec![x, xm, f.rho[idx], vel[0], vel[1], q[0], q[1], force[0], force[1]]);
            }
            report.series.push(s);
        }
    }
    Ok(report)
}

fn masked_counts(report: &mut ScenarioReport, f: &DerivedFields) {
    let count = |m: &[bool]| m.iter().filter(|b| **b).count() as f64;
    report.scalar("velocity_masked_nodes", count(&f.node_mask));
    report.scalar("potential_masked_nodes", count(&f.potential_mask));
    report.scalar("force_masked_nodes", count(&f.force_mask));
}

fn push_1d(report: &mut ScenarioReport, psi: &WaveFunction1D, units: &UnitSystem) -> Result<()> {
    let grid = psi.grid();
    let f = total_potential_and_forces(psi, &vec![0.0; grid.n_points()], units, None)?;
    report.scalar("norm", psi.norm());
    report.scalar("time", psi.time());
    masked_counts(report, &f);
    let mut s = Series::new(
        FIELDS_SERIES,
        &[("x", "L"), ("rho", "1/L"), ("v", "L E/hbar"), ("Q", "E"), ("U", "E"), ("F", "E/L")],
    );
    for i in 0..grid.n_points() {
        let v = if f.node_mask[i] { f64::NAN } else { f.velocity.component(0)[i] };
        let (q, u) = if f.potential_mask[i] { (f64::NAN, f64::NAN) } else { (f.quantum_potential[i], f.total_potential[i]) };
        let force = if f.force_mask[i] { f64::NAN } else { f.force.component(0)[i] };
        s.push(vec![grid.coord(i), f.rho[i], v, q, u, force]);
    }
    report.series.push(s);
    Ok(())
}

/// Adiabatic state and coupling potential at `t = 0` of a window of length `duration`.
pub fn adiabatic_midpoint(cfg: &ScenarioConfig, duration: f64) -> Result<(WaveFunction2D, Vec<f64>)> {
    let units = cfg.units;
    let l = units.box_length;
    let n = cfg.well.n;
    let ax = make_grid(0.0, l, cfg.grid.n_x, cfg.grid.dt)?;
    let c = cfg.pointer.center;
    let hw = cfg.grid.meter_half_width;
    let am = make_grid(c - hw, c + hw, cfg.grid.n_meter, cfg.grid.dt)?;
    let grid = Grid2D::new(ax, am)?;
    let mut coupling = DeltaCoupling::new(cfg.coupling.x0, cfg.coupling.epsilon, SwitchingProfile::window(duration)?);
    coupling.width_factor = cfg.coupling.width_factor;
    let g0 = coupling.switching.g(0.0);
    let done = coupling.switching.cumulative(0.0);

    let bare = solve_stationary(&Potential::InfiniteWell, &ax, n, &units)?;
    let (phi_bare, e_bare) = (&bare.states[n - 1], bare.energies[n - 1]);
    let pointer = gaussian_packet(&am, c, cfg.pointer.sigma, cfg.pointer.momentum, units.hbar)?;
    let mut values = Vec::with_capacity(grid.len());
    for (j, m) in pointer.values().iter().enumerate() {
        let xm = am.coord(j);
        let frozen = coupling.frozen(&ax, &units, 0.0, xm)?;
        let sol = solve_stationary(&frozen, &ax, n, &units)?;
        let mut phi = sol.states[n - 1].clone();
        if inner_product(phi_bare, &phi)?.re < 0.0 {
            phi = phi.scaled(Complex64::new(-1.0, 0.0));
        }
        // ∫ (E_n(X, t) - E_n) dt up to t = 0, linear in g
        let shift = if g0 > 0.0 { (sol.energies[n - 1] - e_bare) / g0 * done } else { 0.0 };
        let phase = Complex64::from_polar(1.0, -shift / units.hbar);
        values.extend(phi.values().iter().map(|z| z * m * phase));
    }
    let psi = WaveFunction::new(grid, values, 0.0)?.normalize()?;
    let v = Potential::DeltaCoupling(coupling).sample_2d(&grid, &units, 0.0)?;
    Ok((psi, v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stationary_fields_are_static() {
        let cfg = ScenarioConfig::defaults_for(ScenarioKind::StationaryWell);
        let r = field_report(&cfg).unwrap();
        let s = r.series(FIELDS_SERIES).unwrap();
        assert_eq!(s.rows.len(), cfg.grid.n_x);
        let e = r.get("energy").unwrap();
        for row in &s.rows[5..cfg.grid.n_x - 5] {
            assert!(row[2].abs() < 1e-12);
            assert!((row[3] - e).abs() / e < 5e-3, "{row:?}");
        }
    }

    #[test]
    fn adiabatic_midpoint_shows_meter_force() {
        let mut cfg = ScenarioConfig::defaults_for(ScenarioKind::Protective);
        cfg.grid.n_meter = 64;
        let r = field_report(&cfg).unwrap();
        let s = r.series(FIELDS_SERIES).unwrap();
        assert_eq!(s.rows.len(), cfg.grid.n_x * 64);
        // bulk rows near the pointer centre: F_X ≈ hbar ε g(0) |φ₁(x₀)|², F_x ≈ 0
        let scale = 0.1 * (2.0 / 50.0) * 2.0;
        let l = cfg.units.box_length;
        let bulk: Vec<&Vec<f64>> = s
            .rows
            .iter()
            .filter(|r| (r[0] - 0.5).abs() > 0.1 && r[0] > 0.1 * l && r[0] < 0.9 * l && r[1].abs() < 10.0)
            .collect();
        assert!(!bulk.is_empty());
        for row in bulk {
            assert!((row[8] / scale - 1.0).abs() < 0.05, "{row:?}");
            assert!(row[7].abs() < 0.05 * scale, "{row:?}");
        }
    }
}
