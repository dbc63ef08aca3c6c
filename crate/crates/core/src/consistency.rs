//! Saaty's consistency index for complete matrices, Harker's index for
//! incomplete ones, and the consistent completion of a consistent
//! irreducible matrix.

use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

use crate::numerics::{spectral_radius, NumericsError, PowerOptions, SquareMatrix};
use crate::pcm::{MissingScope, PcMatrix};

/// Relative tolerance for treating a known entry as consistent with the
/// spanning-tree reconstruction.
pub const CONSISTENCY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConsistencyError {
    #[error("matrix has missing entries")]
    HasMissingEntries,
    #[error("consistency index needs n >= 2, got n = {0}")]
    TooSmall(usize),
    #[error("comparison graph is not strongly connected")]
    NotIrreducible,
    #[error("row {} has no known comparisons", .0 + 1)]
    HasAllMissingRow(usize),
    #[error(
        "matrix is not consistent: c({},{}) = {found} but the spanning tree implies {expected}",
        .row + 1, .col + 1
    )]
    NotConsistent { row: usize, col: usize, expected: f64, found: f64 },
    #[error("power iteration did not converge after {0} iterations")]
    NoConvergence(usize),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ConsistencyKind {
    Saaty,
    Harker,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConsistencyReport {
    pub index_value: f64,
    pub kind: ConsistencyKind,
    pub dimension: usize,
    pub radius_used: f64,
}

/// `(rho(C) - n) / (n - 1)` for a complete matrix.
pub fn saaty_ci(c: &PcMatrix) -> Result<ConsistencyReport, ConsistencyError> {
    if !c.is_complete() {
        return Err(ConsistencyError::HasMissingEntries);
    }
    index_of(&harker_matrix(c), c.n(), ConsistencyKind::Saaty)
}

/// The auxiliary matrix `H`: `h_ii = 1 + s_i`, zero at Missing cells, `c_ij`
/// elsewhere. `s_i` counts Missing cells over the whole row of `c`.
pub fn harker_matrix(c: &PcMatrix) -> SquareMatrix {
    let n = c.n();
    let rows: Vec<usize> = (0..n).collect();
    let missing = c.missing_counts(&rows, &MissingScope::AllColumns);
    let mut h = SquareMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let value = if i == j {
                1.0 + missing.counts[i] as f64
            } else {
                c.get(i, j).unwrap_or(0.0)
            };
            h.set(i, j, value);
        }
    }
    h
}

/// `(rho(H) - n) / (n - 1)`. On complete input this is bitwise equal to
/// [`saaty_ci`].
pub fn harker_ci(c: &PcMatrix) -> Result<ConsistencyReport, ConsistencyError> {
    let n = c.n();
    if n < 2 {
        return Err(ConsistencyError::TooSmall(n));
    }
    if let Some(row) = (0..n).find(|&i| (0..n).all(|j| j == i || !c.is_known(i, j))) {
        return Err(ConsistencyError::HasAllMissingRow(row));
    }
    if !c.is_irreducible() {
        return Err(ConsistencyError::NotIrreducible);
    }
    index_of(&harker_matrix(c), n, ConsistencyKind::Harker)
}

/// Harker-style index without the irreducibility precondition. The
/// applicability theorems only need `rho(H_k)`, which stays meaningful for a
/// reducible unknown block.
pub(crate) fn harker_index_unchecked(c: &PcMatrix) -> Result<ConsistencyReport, ConsistencyError> {
    let kind = if c.is_complete() { ConsistencyKind::Saaty } else { ConsistencyKind::Harker };
    index_of(&harker_matrix(c), c.n(), kind)
}

fn index_of(
    m: &SquareMatrix,
    n: usize,
    kind: ConsistencyKind,
) -> Result<ConsistencyReport, ConsistencyError> {
    if n < 2 {
        return Err(ConsistencyError::TooSmall(n));
    }
    let spectral = spectral_radius(m, &PowerOptions::default())?;
    if !spectral.converged {
        return Err(ConsistencyError::NoConvergence(spectral.iterations));
    }
    let rho = spectral.radius;
    Ok(ConsistencyReport {
        index_value: (rho - n as f64) / (n as f64 - 1.0),
        kind,
        dimension: n,
        radius_used: rho,
    })
}

/// Weights implied by a BFS spanning tree rooted at `root` (root weight 1),
/// after checking every known entry against them.
pub fn tree_weights(c: &PcMatrix, root: usize) -> Result<Vec<f64>, ConsistencyError> {
    let n = c.n();
    let graph = c.comparison_graph();
    if !graph.is_irreducible() {
        return Err(ConsistencyError::NotIrreducible);
    }
    let mut weights = vec![f64::NAN; n];
    weights[root] = 1.0;
    let mut queue = VecDeque::from([root]);
    while let Some(i) = queue.pop_front() {
        for &j in graph.successors(i) {
            if weights[j].is_nan() {
                // c_ij = w_i / w_j
                weights[j] = weights[i] / c.get(i, j).expect("edge implies known entry");
                queue.push_back(j);
            }
        }
    }
    for (i, j) in graph.edges() {
        let found = c.get(i, j).expect("edge implies known entry");
        let expected = weights[i] / weights[j];
        if (found - expected).abs() > CONSISTENCY_TOL * found {
            return Err(ConsistencyError::NotConsistent { row: i, col: j, expected, found });
        }
    }
    Ok(weights)
}

/// The complete consistent matrix agreeing with every known entry of `c`.
pub fn consistent_completion(c: &PcMatrix) -> Result<PcMatrix, ConsistencyError> {
    consistent_completion_from_root(c, 0)
}

/// Same as [`consistent_completion`] with the spanning tree grown from `root`.
pub fn consistent_completion_from_root(
    c: &PcMatrix,
    root: usize,
) -> Result<PcMatrix, ConsistencyError> {
    let weights = tree_weights(c, root)?;
    let n = c.n();
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Some(c.get(i, j).unwrap_or(weights[i] / weights[j])))
                .collect()
        })
        .collect();
    Ok(PcMatrix::new(c.labels().to_vec(), rows).expect("same shape as input"))
}
