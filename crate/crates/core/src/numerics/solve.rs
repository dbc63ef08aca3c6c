use serde::Serialize;

use super::{NumericsError, SquareMatrix};

/// Default relative pivot threshold below which a system is declared singular.
pub const DEFAULT_SINGULAR_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Solution {
    Unique(Vec<f64>),
    Singular,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveResult {
    pub solution: Solution,
    /// Smallest `|pivot| / max_j |a_rj|` over the elimination, where `r` is
    /// the original row that supplied the pivot.
    pub pivot_floor: f64,
}

impl SolveResult {
    pub fn is_singular(&self) -> bool {
        matches!(self.solution, Solution::Singular)
    }

    pub fn unique(&self) -> Option<&[f64]> {
        match &self.solution {
            Solution::Unique(x) => Some(x),
            Solution::Singular => None,
        }
    }
}

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
///
/// The system is reported singular when some pivot falls below
/// `singular_tol` times the largest absolute coefficient of the original row
/// it came from. Floating point rarely produces an exact zero pivot for
/// singular matrices with irrational entries, hence the relative threshold.
pub fn solve(a: &SquareMatrix, b: &[f64], singular_tol: f64) -> Result<SolveResult, NumericsError> {
    let k = a.dim();
    if b.len() != k {
        return Err(NumericsError::DimensionMismatch { expected: k, found: b.len() });
    }
    if let Some(p) = b.iter().position(|v| !v.is_finite()) {
        return Err(NumericsError::NonFinite { row: p, col: 0 });
    }

    let row_scale: Vec<f64> = (0..k)
        .map(|i| a.row(i).iter().fold(0.0f64, |m, v| m.max(v.abs())))
        .collect();
    if row_scale.contains(&0.0) {
        return Ok(SolveResult { solution: Solution::Singular, pivot_floor: 0.0 });
    }

    if k == 1 {
        let pivot_floor = 1.0;
        return Ok(SolveResult {
            solution: Solution::Unique(vec![b[0] / a.get(0, 0)]),
            pivot_floor,
        });
    }

    let mut u = a.to_rows();
    let mut rhs = b.to_vec();
    let mut origin: Vec<usize> = (0..k).collect();
    let mut pivot_floor = f64::INFINITY;

    for col in 0..k {
        let pivot_row = (col..k)
            .max_by(|&p, &q| u[p][col].abs().total_cmp(&u[q][col].abs()))
            .expect("non-empty pivot range");
        u.swap(col, pivot_row);
        rhs.swap(col, pivot_row);
        origin.swap(col, pivot_row);

        let pivot = u[col][col];
        pivot_floor = pivot_floor.min(pivot.abs() / row_scale[origin[col]]);
        if pivot == 0.0 {
            return Ok(SolveResult { solution: Solution::Singular, pivot_floor: 0.0 });
        }
        for row in (col + 1)..k {
            let factor = u[row][col] / pivot;
            if factor == 0.0 {
                continue;
            }
            u[row][col] = 0.0;
            for j in (col + 1)..k {
                u[row][j] -= factor * u[col][j];
            }
            rhs[row] -= factor * rhs[col];
        }
    }

    if pivot_floor < singular_tol {
        return Ok(SolveResult { solution: Solution::Singular, pivot_floor });
    }

    let mut x = vec![0.0; k];
    for i in (0..k).rev() {
        let tail: f64 = ((i + 1)..k).map(|j| u[i][j] * x[j]).sum();
        x[i] = (rhs[i] - tail) / u[i][i];
    }
    Ok(SolveResult { solution: Solution::Unique(x), pivot_floor })
}

/// `||a x - b||_inf`.
pub fn residual_inf(a: &SquareMatrix, x: &[f64], b: &[f64]) -> f64 {
    a.mul_vec(x)
        .iter()
        .zip(b)
        .map(|(ax, bi)| (ax - bi).abs())
        .fold(0.0, f64::max)
}
