//! Tridiagonal kernels: the complex Cayley (Crank–Nicolson) solve and a real
//! symmetric eigensolver (Sturm bisection + inverse iteration).

use num_complex::Complex64;

use crate::error::{BohmError, Result};

/// Pre-factored `(1 + iα H)` for a tridiagonal `H` with constant off-diagonal,
/// acting on the interior nodes of a Dirichlet line.
#[derive(Debug, Clone)]
pub(crate) struct CayleyFactor {
    /// `iα h_off`, shared by both off-diagonals.
    off: Complex64,
    /// Modified super-diagonal `c'_j` of the Thomas sweep.
    upper: Vec<Complex64>,
    inv_pivot: Vec<Complex64>,
}

impl CayleyFactor {
    /// `alpha = dt / (2 hbar)`, `diag` holds `H_jj` for the interior nodes.
    pub fn new(alpha: f64, diag: &[f64], off: f64) -> Self {
        let mut f = Self { off: Complex64::new(0.0, alpha * off), upper: Vec::new(), inv_pivot: Vec::new() };
        f.refactor(alpha, diag);
        f
    }

    pub fn refactor(&mut self, alpha: f64, diag: &[f64]) {
        let n = diag.len();
        self.upper.resize(n, Complex64::new(0.0, 0.0));
        self.inv_pivot.resize(n, Complex64::new(0.0, 0.0));
        let mut prev_upper = Complex64::new(0.0, 0.0);
        for (j, d) in diag.iter().enumerate() {
            let pivot = Complex64::new(1.0, alpha * d) - self.off * prev_upper;
            let inv = pivot.inv();
            self.inv_pivot[j] = inv;
            prev_upper = self.off * inv;
            self.upper[j] = prev_upper;
        }
    }

    pub fn off(&self) -> Complex64 {
        self.off
    }

    pub fn upper(&self, j: usize) -> Complex64 {
        self.upper[j]
    }

    pub fn inv_pivot(&self, j: usize) -> Complex64 {
        self.inv_pivot[j]
    }

    /// Solve in place for `x` with `(1 + iαH) x = rhs`.
    pub fn solve(&self, rhs: &mut [Complex64]) {
        let n = rhs.len();
        let mut prev = Complex64::new(0.0, 0.0);
        for j in 0..n {
            prev = (rhs[j] - self.off * prev) * self.inv_pivot[j];
            rhs[j] = prev;
        }
        for j in (0..n.saturating_sub(1)).rev() {
            rhs[j] = rhs[j] - self.upper[j] * rhs[j + 1];
        }
    }
}

/// `out = (1 - iαH) psi` on the interior of a Dirichlet line. `psi` includes the
/// two boundary nodes, `out` only the interior.
pub(crate) fn cayley_rhs(alpha: f64, diag: &[f64], off: f64, psi: &[Complex64], out: &mut [Complex64]) {
    let n = diag.len();
    debug_assert_eq!(psi.len(), n + 2);
    for j in 0..n {
        let h_psi = psi[j + 1] * diag[j] + (psi[j] + psi[j + 2]) * off;
        out[j] = psi[j + 1] + Complex64::new(0.0, -alpha) * h_psi;
    }
}

/// Number of eigenvalues of the symmetric tridiagonal `(diag, off)` below `lambda`.
fn sturm_count(diag: &[f64], off: &[f64], lambda: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for (j, d) in diag.iter().enumerate() {
        let b2 = if j == 0 { 0.0 } else { off[j - 1] * off[j - 1] };
        q = d - lambda - if j == 0 { 0.0 } else { b2 / q };
        if q == 0.0 {
            q = -f64::EPSILON * (d.abs() + lambda.abs()).max(f64::MIN_POSITIVE);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

const BISECTION_LIMIT: usize = 200;
const INVERSE_ITERATIONS: usize = 4;

/// Lowest `k` eigenpairs of a real symmetric tridiagonal matrix, ascending.
/// Eigenvectors are unit vectors in the Euclidean norm.
pub(crate) fn lowest_eigenpairs(diag: &[f64], off: &[f64], k: usize) -> Result<Vec<(f64, Vec<f64>)>> {
    let n = diag.len();
    assert_eq!(off.len() + 1, n);
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for j in 0..n {
        let r = if j > 0 { off[j - 1].abs() } else { 0.0 } + if j + 1 < n { off[j].abs() } else { 0.0 };
        lo = lo.min(diag[j] - r);
        hi = hi.max(diag[j] + r);
    }
    let scale = lo.abs().max(hi.abs()).max(1.0);
    let mut pairs: Vec<(f64, Vec<f64>)> = Vec::with_capacity(k);
    for idx in 0..k {
        let (mut a, mut b) = (lo, hi);
        let mut iters = 0;
        while b - a > 4.0 * f64::EPSILON * scale {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            if sturm_count(diag, off, mid) > idx {
                b = mid;
            } else {
                a = mid;
            }
            iters += 1;
            if iters > BISECTION_LIMIT {
                return Err(BohmError::Numeric {
                    iterations: iters,
                    detail: format!("bisection for eigenvalue {idx} stalled in [{a}, {b}]"),
                });
            }
        }
        let lambda = 0.5 * (a + b);
        let v = inverse_iteration(diag, off, lambda, scale, &pairs)?;
        pairs.push((lambda, v));
    }
    Ok(pairs)
}

fn inverse_iteration(
    diag: &[f64],
    off: &[f64],
    lambda: f64,
    scale: f64,
    previous: &[(f64, Vec<f64>)],
) -> Result<Vec<f64>> {
    let n = diag.len();
    // deterministic, non-symmetric start vector
    let mut v: Vec<f64> = (0..n).map(|j| 1.0 + 0.5 * ((j as f64) * 0.618_033_988_75).fract()).collect();
    let shift = lambda + 1e3 * f64::EPSILON * scale;
    for it in 0..INVERSE_ITERATIONS {
        v = solve_shifted(diag, off, shift, &v);
        for (mu, u) in previous {
            if (mu - lambda).abs() < 1e-8 * scale {
                let p: f64 = u.iter().zip(&v).map(|(a, b)| a * b).sum();
                v.iter_mut().zip(u).for_each(|(x, y)| *x -= p * y);
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(BohmError::Numeric {
                iterations: it + 1,
                detail: format!("inverse iteration for eigenvalue {lambda} broke down"),
            });
        }
        v.iter_mut().for_each(|x| *x /= norm);
    }
    Ok(v)
}

/// Solve `(T - shift) y = b` by Gaussian elimination with partial pivoting.
fn solve_shifted(diag: &[f64], off: &[f64], shift: f64, b: &[f64]) -> Vec<f64> {
    let n = diag.len();
    // row j holds up to three coefficients starting at column j: (u0, u1, u2)
    let mut u0: Vec<f64> = diag.iter().map(|d| d - shift).collect();
    let mut u1: Vec<f64> = off.to_vec();
    u1.push(0.0);
    let mut u2 = vec![0.0; n];
    let mut lower = off.to_vec();
    let mut y = b.to_vec();
    let tiny = f64::EPSILON * diag.iter().fold(0.0f64, |m, d| m.max(d.abs())).max(1.0);
    for j in 0..n.saturating_sub(1) {
        if lower[j].abs() > u0[j].abs() {
            // swap rows j and j+1
            let (a0, a1, a2) = (u0[j], u1[j], u2[j]);
            u0[j] = lower[j];
            u1[j] = u0[j + 1];
            u2[j] = u1[j + 1];
            lower[j] = a0;
            u0[j + 1] = a1;
            u1[j + 1] = a2;
            y.swap(j, j + 1);
        }
        if u0[j] == 0.0 {
            u0[j] = tiny;
        }
        let m = lower[j] / u0[j];
        u0[j + 1] -= m * u1[j];
        u1[j + 1] -= m * u2[j];
        y[j + 1] -= m * y[j];
    }
    if u0[n - 1] == 0.0 {
        u0[n - 1] = tiny;
    }
    let mut x = vec![0.0; n];
    for j in (0..n).rev() {
        let mut s = y[j];
        if j + 1 < n {
            s -= u1[j] * x[j + 1];
        }
        if j + 2 < n {
            s -= u2[j] * x[j + 2];
        }
        x[j] = s / u0[j];
    }
    x
}
