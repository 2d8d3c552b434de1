//! Momentum-space densities by zero-padded FFT.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::grid::{Grid1D, WaveFunction2D};

/// Zero-padding factor used for momentum densities.
pub const DEFAULT_PADDING: usize = 4;

/// `|ψ̃(p)|²` on an ascending momentum grid with spacing `dp`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentumDensity {
    pub p: Vec<f64>,
    pub density: Vec<f64>,
    pub dp: f64,
}

impl MomentumDensity {
    pub fn total(&self) -> f64 {
        self.density.iter().sum::<f64>() * self.dp
    }

    pub fn mean(&self) -> f64 {
        self.p.iter().zip(&self.density).map(|(p, d)| p * d).sum::<f64>() * self.dp / self.total()
    }

    /// Momentum of the largest density value with `lo ≤ p ≤ hi`.
    pub fn peak_in(&self, lo: f64, hi: f64) -> Option<f64> {
        self.p
            .iter()
            .zip(&self.density)
            .filter(|(p, _)| **p >= lo && **p <= hi)
            .fold(None, |best: Option<(f64, f64)>, (p, d)| match best {
                Some((_, bd)) if bd >= *d => best,
                _ => Some((*p, *d)),
            })
            .map(|(p, _)| p)
    }

    /// Peak position refined between bins by the vertex of the parabola
    /// through the largest sample in `[lo, hi]` and its two neighbours.
    pub fn refined_peak_in(&self, lo: f64, hi: f64) -> Option<f64> {
        let k = (0..self.p.len())
            .filter(|&k| self.p[k] >= lo && self.p[k] <= hi)
            .max_by(|&a, &b| self.density[a].total_cmp(&self.density[b]))?;
        if k == 0 || k + 1 == self.p.len() {
            return Some(self.p[k]);
        }
        let (a, b, c) = (self.density[k - 1], self.density[k], self.density[k + 1]);
        let curv = a - 2.0 * b + c;
        if curv >= 0.0 {
            return Some(self.p[k]);
        }
        Some(self.p[k] + 0.5 * (a - c) / curv * self.dp)
    }

    /// `∫ |ρ(p) - f(p)| dp`.
    pub fn l1_distance(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.p.iter().zip(&self.density).map(|(p, d)| (d - f(*p)).abs()).sum::<f64>() * self.dp
    }
}

fn padded_power(values: &[Complex64], pad: usize, planner: &mut FftPlanner<f64>) -> Vec<f64> {
    let n = values.len() * pad.max(1);
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    buf[..values.len()].copy_from_slice(values);
    planner.plan_fft_forward(n).process(&mut buf);
    buf.iter().map(|z| z.norm_sqr()).collect()
}

/// Reorder FFT output to ascending momenta and attach the normalization
/// `dx² / (2π hbar)`, so that `Σ ρ dp` equals the trapezoidal norm.
fn assemble(power: Vec<f64>, dx: f64, hbar: f64) -> MomentumDensity {
    let n = power.len();
    let dp = 2.0 * std::f64::consts::PI * hbar / (n as f64 * dx);
    let scale = dx * dx / (2.0 * std::f64::consts::PI * hbar);
    let first_negative = n - n / 2;
    let mut p = Vec::with_capacity(n);
    let mut density = Vec::with_capacity(n);
    for k in 0..n {
        let m = (k + first_negative) % n;
        let signed = if m >= first_negative { m as isize - n as isize } else { m as isize };
        p.push(signed as f64 * dp);
        density.push(power[m] * scale);
    }
    MomentumDensity { p, density, dp }
}

/// Momentum density of a 1D state sampled on `axis`.
pub fn momentum_density(values: &[Complex64], axis: &Grid1D, hbar: f64, pad: usize) -> MomentumDensity {
    let mut planner = FftPlanner::new();
    assemble(padded_power(values, pad, &mut planner), axis.dx(), hbar)
}

/// Marginal momentum density of the meter coordinate of a 2D state.
pub fn pointer_momentum_density(psi: &WaveFunction2D, hbar: f64, pad: usize) -> MomentumDensity {
    let grid = psi.grid();
    let nx = grid.nx();
    let nm = grid.n_meter();
    let mut planner = FftPlanner::new();
    let mut acc = vec![0.0; nm * pad.max(1)];
    let mut column = vec![Complex64::new(0.0, 0.0); nm];
    for i in 0..nx {
        let w = grid.axis_x().weight(i);
        for (j, c) in column.iter_mut().enumerate() {
            *c = psi.values()[j * nx + i];
        }
        if column.iter().all(|z| z.norm_sqr() == 0.0) {
            continue;
        }
        for (a, p) in acc.iter_mut().zip(padded_power(&column, pad, &mut planner)) {
            *a += w * p;
        }
    }
    assemble(acc, grid.axis_meter().dx(), hbar)
}
