//! Dense kernels shared by the consistency and HRE modules: Perron root by
//! bracketed power iteration, Gaussian elimination with a row-scaled
//! singularity test, and the Gershgorin diagonal-dominance check.

mod matrix;
mod solve;
mod spectral;

use thiserror::Error;

pub use matrix::SquareMatrix;
pub use solve::{residual_inf, solve, Solution, SolveResult, DEFAULT_SINGULAR_TOL};
pub use spectral::{scaled_shift_radius, spectral_radius, PowerOptions, SpectralResult};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    #[error("matrix must have dimension at least 1")]
    Empty,
    #[error("expected {expected} values, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("cell ({row},{col}) is not finite")]
    NonFinite { row: usize, col: usize },
    #[error("cell ({row},{col}) = {value} is negative")]
    NonNegativityViolated { row: usize, col: usize, value: f64 },
}

/// True when every row is strictly diagonally dominant, i.e. zero lies
/// outside every Gershgorin disc, so the matrix is invertible.
pub fn gershgorin_excludes_zero(m: &SquareMatrix) -> bool {
    (0..m.dim()).all(|i| {
        let radius: f64 = m
            .row(i)
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, v)| v.abs())
            .sum();
        m.get(i, i).abs() > radius
    })
}
