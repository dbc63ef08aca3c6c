use serde::Serialize;

use super::{NumericsError, SquareMatrix};
use crate::graph;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerOptions {
    /// Relative width of the Collatz-Wielandt bracket at which iteration stops.
    pub tol: f64,
    /// Iteration budget per irreducible block.
    pub max_iter: usize,
}

impl Default for PowerOptions {
    fn default() -> Self {
        Self { tol: 1e-12, max_iter: 100_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralResult {
    pub radius: f64,
    /// Perron vector scaled to sum 1; only produced for irreducible input.
    pub vector: Option<Vec<f64>>,
    pub iterations: usize,
    pub converged: bool,
}

/// Spectral radius of a nonnegative matrix.
///
/// The nonzero pattern is split into strongly connected components and the
/// radius is the largest Perron root among the diagonal blocks. Each
/// irreducible block is handled by shifted power iteration: for a positive
/// iterate `x`, `min_i (Bx)_i / x_i <= rho(B) <= max_i (Bx)_i / x_i`, so the
/// iteration stops once that bracket is narrower than `tol` relative to its
/// upper end and reports the midpoint.
pub fn spectral_radius(
    m: &SquareMatrix,
    opts: &PowerOptions,
) -> Result<SpectralResult, NumericsError> {
    let k = m.dim();
    for i in 0..k {
        for j in 0..k {
            let value = m.get(i, j);
            if value < 0.0 {
                return Err(NumericsError::NonNegativityViolated { row: i, col: j, value });
            }
        }
    }

    let components = graph::strongly_connected_components(&m.pattern());
    if components.len() == 1 {
        return Ok(perron_block(m, opts));
    }

    let mut radius = 0.0f64;
    let mut iterations = 0;
    let mut converged = true;
    for component in components {
        if component.len() == 1 {
            radius = radius.max(m.get(component[0], component[0]));
            continue;
        }
        let block = perron_block(&m.principal(&component), opts);
        radius = radius.max(block.radius);
        iterations += block.iterations;
        converged &= block.converged;
    }
    Ok(SpectralResult { radius, vector: None, iterations, converged })
}

fn perron_block(b: &SquareMatrix, opts: &PowerOptions) -> SpectralResult {
    let k = b.dim();
    if k == 1 {
        return SpectralResult {
            radius: b.get(0, 0),
            vector: Some(vec![1.0]),
            iterations: 0,
            converged: true,
        };
    }

    // Any positive shift makes an irreducible block primitive. Tying it to
    // a lower bound on the Perron root keeps the convergence ratio
    // independent of the overall scale of the block.
    let min_row_sum = (0..k).map(|i| b.row(i).iter().sum::<f64>()).fold(f64::INFINITY, f64::min);
    let max_diag = (0..k).map(|i| b.get(i, i)).fold(0.0, f64::max);
    let shift = min_row_sum.max(max_diag);

    let mut x = vec![1.0; k];
    let mut lo = 0.0;
    let mut hi = f64::INFINITY;
    let mut iterations = 0;
    let mut converged = false;
    while iterations < opts.max_iter {
        let bx = b.mul_vec(&x);
        lo = f64::INFINITY;
        hi = 0.0f64;
        for (num, den) in bx.iter().zip(&x) {
            let ratio = num / den;
            lo = lo.min(ratio);
            hi = hi.max(ratio);
        }
        iterations += 1;
        if hi - lo <= opts.tol * hi {
            converged = true;
            break;
        }
        let mut next: Vec<f64> = bx.iter().zip(&x).map(|(v, xi)| v + shift * xi).collect();
        let scale = next.iter().copied().fold(0.0, f64::max);
        next.iter_mut().for_each(|v| *v /= scale);
        x = next;
    }

    let total: f64 = x.iter().sum();
    SpectralResult {
        radius: 0.5 * (lo + hi),
        vector: Some(x.into_iter().map(|v| v / total).collect()),
        iterations,
        converged,
    }
}

/// `alpha * (rho(c) - 1)`, the spectral radius of `alpha * (c - I)` for a
/// complete pairwise comparison matrix `c`.
pub fn scaled_shift_radius(
    c: &SquareMatrix,
    alpha: f64,
    opts: &PowerOptions,
) -> Result<f64, NumericsError> {
    let rho = spectral_radius(c, opts)?.radius;
    Ok(alpha * (rho - 1.0))
}
