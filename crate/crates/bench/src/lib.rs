//! Shared fixtures for the solver benchmarks in `benches/`.

use bohmlab_core::grid::Grid2D;
use bohmlab_core::tdse::{gaussian_packet, product_state, sample_well_mode, DeltaCoupling, SwitchingProfile};
use bohmlab_core::{make_grid, Potential, UnitSystem, WaveFunction1D, WaveFunction2D};

/// Moving Gaussian packet inside a harmonic trap on `n` points.
pub fn packet_1d(n: usize) -> (WaveFunction1D, Potential) {
    let grid = make_grid(-10.0, 10.0, n, 1e-3).expect("grid");
    let psi = gaussian_packet(&grid, -2.0, 0.7, 2.0, 1.0).expect("packet");
    let v = grid.coords().iter().map(|x| 0.5 * x * x).collect();
    (psi, Potential::Static(v))
}

/// Well ground state times a wide pointer packet, with the protective coupling.
pub fn protective_2d(n_x: usize, n_meter: usize) -> (WaveFunction2D, Potential, UnitSystem) {
    let units = UnitSystem::default();
    let grid = Grid2D::new(make_grid(0.0, 1.0, n_x, 0.01).expect("x grid"), make_grid(-90.0, 90.0, n_meter, 0.01).expect("meter grid"))
        .expect("2D grid");
    let phi = sample_well_mode(1, grid.axis_x(), 1.0).expect("mode");
    let chi = gaussian_packet(grid.axis_meter(), 0.0, 10.0, 0.0, 1.0).expect("pointer");
    let psi = product_state(&grid, phi.values(), chi.values(), -2.0).expect("product").normalize().expect("norm");
    let coupling = DeltaCoupling::new(0.5, 0.1, SwitchingProfile::window(50.0).expect("window"));
    (psi, Potential::DeltaCoupling(coupling), units)
}
