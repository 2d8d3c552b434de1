//! Inverse-CDF sampling of piecewise-linear densities and Kolmogorov–Smirnov distances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{BohmError, Result};
use crate::grid::{Grid1D, Lattice};

/// Density given by linear interpolation between nodal values.
#[derive(Debug, Clone)]
pub struct PiecewiseLinearDensity {
    xs: Vec<f64>,
    f: Vec<f64>,
    /// Normalized cumulative mass at each node.
    cdf: Vec<f64>,
}

impl PiecewiseLinearDensity {
    pub fn new(xs: Vec<f64>, f: Vec<f64>) -> Result<Self> {
        if xs.len() != f.len() || xs.len() < 2 {
            return Err(BohmError::GridMismatch("density and abscissae differ in length".into()));
        }
        if f.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(BohmError::InvalidConfig("density must be finite and non-negative".into()));
        }
        let mut cdf = Vec::with_capacity(xs.len());
        cdf.push(0.0);
        for i in 1..xs.len() {
            let m = 0.5 * (xs[i] - xs[i - 1]) * (f[i] + f[i - 1]);
            cdf.push(cdf[i - 1] + m);
        }
        let total = cdf[cdf.len() - 1];
        if !(total > 0.0) {
            return Err(BohmError::DegenerateState("density has zero mass".into()));
        }
        cdf.iter_mut().for_each(|c| *c /= total);
        let f = f.into_iter().map(|v| v / total).collect();
        Ok(Self { xs, f, cdf })
    }

    pub fn on_axis(axis: &Grid1D, f: Vec<f64>) -> Result<Self> {
        Self::new(axis.coords(), f)
    }

    fn cell_of(&self, x: f64) -> usize {
        match self.xs.binary_search_by(|p| p.partial_cmp(&x).unwrap()) {
            Ok(i) => i.min(self.xs.len() - 2),
            Err(0) => 0,
            Err(i) => (i - 1).min(self.xs.len() - 2),
        }
    }

    /// Exact CDF of the interpolated density.
    pub fn cdf(&self, x: f64) -> f64 {
        let n = self.xs.len();
        if x <= self.xs[0] {
            return 0.0;
        }
        if x >= self.xs[n - 1] {
            return 1.0;
        }
        let i = self.cell_of(x);
        let h = self.xs[i + 1] - self.xs[i];
        let s = x - self.xs[i];
        let (f0, f1) = (self.f[i], self.f[i + 1]);
        self.cdf[i] + f0 * s + (f1 - f0) * s * s / (2.0 * h)
    }

    /// Inverse CDF, solving the quadratic inside the cell exactly.
    pub fn quantile(&self, u: f64) -> f64 {
        let n = self.xs.len();
        let u = u.clamp(0.0, 1.0);
        let i = match self.cdf.binary_search_by(|c| c.partial_cmp(&u).unwrap()) {
            Ok(i) => return self.xs[i],
            Err(0) => 0,
            Err(i) => (i - 1).min(n - 2),
        };
        let h = self.xs[i + 1] - self.xs[i];
        let (f0, f1) = (self.f[i], self.f[i + 1]);
        let r = u - self.cdf[i];
        // f0 s + (f1 - f0) s²/(2h) = r, in cancellation-free form
        let disc = (f0 * f0 + 2.0 * (f1 - f0) * r / h).max(0.0);
        let denom = f0 + disc.sqrt();
        let s = if denom > 0.0 { 2.0 * r / denom } else { 0.0 };
        self.xs[i] + s.clamp(0.0, h)
    }
}

/// Marginal of a nodal density along axis `k` (trapezoid over the other axis).
pub fn marginal<G: Lattice>(grid: &G, rho: &[f64], k: usize) -> Vec<f64> {
    if G::DIM == 1 {
        return rho.to_vec();
    }
    let nx = grid.axis(0).n_points();
    let nm = grid.axis(1).n_points();
    let mut out = vec![0.0; grid.axis(k).n_points()];
    for j in 0..nm {
        for i in 0..nx {
            let r = rho[j * nx + i];
            if k == 0 {
                out[i] += r * grid.axis(1).weight(j);
            } else {
                out[j] += r * grid.axis(0).weight(i);
            }
        }
    }
    out
}

/// Deterministic draws from the (bi)linearly interpolated `ρ`: marginal in
/// `x`, then the conditional in `X` interpolated between neighbouring columns.
pub fn sample_positions<G: Lattice>(grid: &G, rho: &[f64], n: usize, seed: u64) -> Result<Vec<[f64; 2]>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let axis_x = grid.axis(0);
    let marg = PiecewiseLinearDensity::on_axis(axis_x, marginal(grid, rho, 0))?;
    if G::DIM == 1 {
        return Ok((0..n).map(|_| [marg.quantile(rng.random::<f64>()), 0.0]).collect());
    }
    let nx = axis_x.n_points();
    let axis_m = grid.axis(1);
    let nm = axis_m.n_points();
    let column = |i: usize| -> Vec<f64> { (0..nm).map(|j| rho[j * nx + i]).collect() };
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let (u, w) = (rng.random::<f64>(), rng.random::<f64>());
        let x = marg.quantile(u);
        let s = ((x - axis_x.x_min()) / axis_x.dx()).clamp(0.0, (nx - 1) as f64);
        let i = (s.floor() as usize).min(nx - 2);
        let t = s - i as f64;
        let (c0, c1) = (column(i), column(i + 1));
        // the bilinear density restricted to this x
        let conditional: Vec<f64> = c0.iter().zip(&c1).map(|(a, b)| (1.0 - t) * a + t * b).collect();
        let cond = PiecewiseLinearDensity::on_axis(axis_m, conditional)?;
        out.push([x, cond.quantile(w)]);
    }
    Ok(out)
}

/// Kolmogorov–Smirnov distance between samples and a target density.
pub fn ks_distance(samples: &[f64], target: &PiecewiseLinearDensity) -> f64 {
    let mut s: Vec<f64> = samples.iter().copied().filter(|x| x.is_finite()).collect();
    s.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = s.len() as f64;
    s.iter().enumerate().fold(0.0f64, |d, (i, x)| {
        let f = target.cdf(*x);
        d.max((f - i as f64 / n).abs()).max(((i + 1) as f64 / n - f).abs())
    })
}

/// Dvoretzky–Kiefer–Wolfowitz band half-width at confidence `alpha`.
pub fn dkw_epsilon(n: usize, alpha: f64) -> f64 {
    ((2.0 / alpha).ln() / (2.0 * n as f64)).sqrt()
}
