//! Classic prioritization methods for side-by-side comparison with HRE:
//! the eigenvector method, the geometric mean method, and their extensions
//! to incomplete matrices (Harker's eigenvector, logarithmic least squares).
//! Every result is normalized to sum 1.

use thiserror::Error;

use crate::consistency::harker_matrix;
use crate::hre::PriorityVector;
use crate::numerics::{self, spectral_radius, NumericsError, PowerOptions, SquareMatrix};
use crate::pcm::PcMatrix;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BaselineError {
    #[error("matrix has missing entries")]
    MatrixIncomplete,
    #[error("comparison graph is not strongly connected")]
    NotIrreducible,
    #[error("power iteration did not converge after {0} iterations")]
    NoConvergence(usize),
    #[error("log least-squares system is singular")]
    SingularLaplacian,
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

fn normalized(c: &PcMatrix, raw: Vec<f64>) -> PriorityVector {
    let total: f64 = raw.iter().sum();
    PriorityVector {
        labels: c.labels().to_vec(),
        weights: raw.into_iter().map(|w| w / total).collect(),
        computed: vec![true; c.n()],
    }
}

fn principal_eigenvector(m: &SquareMatrix) -> Result<Vec<f64>, BaselineError> {
    let spectral = spectral_radius(m, &PowerOptions::default())?;
    if !spectral.converged {
        return Err(BaselineError::NoConvergence(spectral.iterations));
    }
    spectral.vector.ok_or(BaselineError::NotIrreducible)
}

/// Principal eigenvector of a complete matrix.
pub fn evm(c: &PcMatrix) -> Result<PriorityVector, BaselineError> {
    if !c.is_complete() {
        return Err(BaselineError::MatrixIncomplete);
    }
    Ok(normalized(c, principal_eigenvector(&harker_matrix(c))?))
}

/// Row geometric means of a complete matrix.
pub fn gmm(c: &PcMatrix) -> Result<PriorityVector, BaselineError> {
    if !c.is_complete() {
        return Err(BaselineError::MatrixIncomplete);
    }
    let n = c.n() as f64;
    let raw = (0..c.n())
        .map(|i| {
            let log_sum: f64 = (0..c.n()).filter_map(|j| c.get(i, j)).map(f64::ln).sum();
            (log_sum / n).exp()
        })
        .collect();
    Ok(normalized(c, raw))
}

/// Principal eigenvector of Harker's auxiliary matrix.
pub fn harker_evm(c: &PcMatrix) -> Result<PriorityVector, BaselineError> {
    if !c.is_irreducible() {
        return Err(BaselineError::NotIrreducible);
    }
    Ok(normalized(c, principal_eigenvector(&harker_matrix(c))?))
}

/// Logarithmic least squares over the known entries: minimizes
/// `sum (ln c_ij - x_i + x_j)^2`. The normal equations are the graph
/// Laplacian system `L x = r`, solved with `x_0` pinned to zero.
pub fn incomplete_gmm(c: &PcMatrix) -> Result<PriorityVector, BaselineError> {
    if !c.is_irreducible() {
        return Err(BaselineError::NotIrreducible);
    }
    let n = c.n();
    if n == 1 {
        return Ok(normalized(c, vec![1.0]));
    }
    let graph = c.comparison_graph();
    let mut laplacian = SquareMatrix::zeros(n - 1);
    let mut rhs = vec![0.0; n - 1];
    for i in 1..n {
        let succ = graph.successors(i);
        laplacian.set(i - 1, i - 1, succ.len() as f64);
        for &j in succ {
            if j > 0 {
                laplacian.set(i - 1, j - 1, -1.0);
            }
            rhs[i - 1] += c.get(i, j).expect("edge implies known entry").ln();
        }
    }
    let solved = numerics::solve(&laplacian, &rhs, numerics::DEFAULT_SINGULAR_TOL)?;
    let logs = solved.unique().ok_or(BaselineError::SingularLaplacian)?;
    let raw = std::iter::once(1.0).chain(logs.iter().map(|x| x.exp())).collect();
    Ok(normalized(c, raw))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: &[f64], b: &[f64], tol: f64) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() <= tol, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn consistent_weights_recovered() {
        let c = PcMatrix::from_weights(&[1.0, 2.0, 4.0]).unwrap();
        let expected = [1.0 / 7.0, 2.0 / 7.0, 4.0 / 7.0];
        assert_close(&evm(&c).unwrap().weights, &expected, 1e-12);
        assert_close(&gmm(&c).unwrap().weights, &expected, 1e-15);
        let partial = c.without_pair(0, 2);
        assert_close(&harker_evm(&partial).unwrap().weights, &expected, 1e-12);
        assert_close(&incomplete_gmm(&partial).unwrap().weights, &expected, 1e-12);
    }

    #[test]
    fn two_by_two_closed_form() {
        // eigenvector of [[1,3],[1/3,1]] is (3,1); geometric means are (sqrt 3, 1/sqrt 3)
        let c = PcMatrix::from_values(&[vec![1.0, 3.0], vec![1.0 / 3.0, 1.0]]).unwrap();
        assert_close(&evm(&c).unwrap().weights, &[0.75, 0.25], 1e-12);
        assert_close(&gmm(&c).unwrap().weights, &[0.75, 0.25], 1e-15);
        assert_close(&incomplete_gmm(&c).unwrap().weights, &[0.75, 0.25], 1e-15);
    }

    #[test]
    fn all_ones_uniform() {
        let c = PcMatrix::from_values(&vec![vec![1.0; 4]; 4]).unwrap();
        assert_close(&evm(&c).unwrap().weights, &[0.25; 4], 1e-15);
        assert_close(&gmm(&c).unwrap().weights, &[0.25; 4], 1e-15);
    }

    #[test]
    fn lls_equals_gmm_on_complete() {
        let c = PcMatrix::from_values(&[
            vec![1.0, 3.0, 0.5, 2.0],
            vec![1.0 / 3.0, 1.0, 4.0, 0.2],
            vec![2.0, 0.25, 1.0, 7.0],
            vec![0.5, 5.0, 1.0 / 7.0, 1.0],
        ])
        .unwrap();
        assert_close(&incomplete_gmm(&c).unwrap().weights, &gmm(&c).unwrap().weights, 1e-12);
        assert_close(&harker_evm(&c).unwrap().weights, &evm(&c).unwrap().weights, 0.0);
    }

    #[test]
    fn error_paths() {
        let c = PcMatrix::from_weights(&[1.0, 2.0, 4.0, 8.0]).unwrap();
        let partial = c.without_pair(0, 1);
        assert_eq!(evm(&partial), Err(BaselineError::MatrixIncomplete));
        assert_eq!(gmm(&partial), Err(BaselineError::MatrixIncomplete));
        let split = c.without_pair(0, 2).without_pair(0, 3).without_pair(1, 2).without_pair(1, 3);
        assert_eq!(harker_evm(&split), Err(BaselineError::NotIrreducible));
        assert_eq!(incomplete_gmm(&split), Err(BaselineError::NotIrreducible));
    }
}
