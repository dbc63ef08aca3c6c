use super::{HreError, LinearSystem, SystemVariant, Variant};
use crate::numerics::SquareMatrix;
use crate::pcm::{HreProblem, MissingScope};

/// Picks the complete or incomplete assembler for `variant` from the
/// Missing pattern of the problem matrix.
pub fn assemble(p: &HreProblem, variant: Variant) -> Result<LinearSystem, HreError> {
    let complete = p.matrix().is_complete();
    match (variant, complete) {
        (Variant::Arithmetic, true) => assemble_arithmetic_complete(p),
        (Variant::Arithmetic, false) => assemble_arithmetic_incomplete(p),
        (Variant::Geometric, true) => assemble_geometric_complete(p),
        (Variant::Geometric, false) => assemble_geometric_incomplete(p),
    }
}

/// `A_k w = b` with unit diagonal, `-c_ij / (n-1)` off the diagonal and
/// `b_i = sum_ref c_ij w_j / (n-1)`.
pub fn assemble_arithmetic_complete(p: &HreProblem) -> Result<LinearSystem, HreError> {
    if !p.matrix().is_complete() {
        return Err(HreError::MatrixIncomplete);
    }
    Ok(arithmetic(p, SystemVariant::ArithmeticComplete))
}

/// Like the complete case but row `i` is scaled by `1 / (n - s_i - 1)` and
/// Missing comparisons drop out; `s_i` counts Missing cells over the whole
/// row.
pub fn assemble_arithmetic_incomplete(p: &HreProblem) -> Result<LinearSystem, HreError> {
    check_incomplete_preconditions(p)?;
    Ok(arithmetic(p, SystemVariant::ArithmeticIncomplete))
}

/// Log-weight system with diagonal `n - 1`, `-1` off the diagonal and
/// `b_i = sum_{j != i} ln c_ij + sum_ref ln w_j`.
pub fn assemble_geometric_complete(p: &HreProblem) -> Result<LinearSystem, HreError> {
    if !p.matrix().is_complete() {
        return Err(HreError::MatrixIncomplete);
    }
    Ok(geometric(p, SystemVariant::GeometricComplete))
}

/// Log-weight system with diagonal `n - s_i - 1`, `-1` for known and `0` for
/// Missing unknown-unknown comparisons, and the log-sums over known
/// comparisons on the right.
pub fn assemble_geometric_incomplete(p: &HreProblem) -> Result<LinearSystem, HreError> {
    check_incomplete_preconditions(p)?;
    Ok(geometric(p, SystemVariant::GeometricIncomplete))
}

fn check_incomplete_preconditions(p: &HreProblem) -> Result<(), HreError> {
    let counts = p.matrix().missing_counts(p.unknowns(), &MissingScope::AllColumns);
    let n = p.n();
    for (&row, &s) in counts.rows.iter().zip(&counts.counts) {
        if s + 1 >= n {
            return Err(HreError::IsolatedRow(row));
        }
    }
    if !p.matrix().is_irreducible() {
        return Err(HreError::NotIrreducible);
    }
    Ok(())
}

/// Number of known comparisons per unknown row, `n - s_i - 1`.
fn known_counts(p: &HreProblem) -> Vec<f64> {
    let n = p.n();
    p.matrix()
        .missing_counts(p.unknowns(), &MissingScope::AllColumns)
        .counts
        .into_iter()
        .map(|s| (n - s - 1) as f64)
        .collect()
}

fn arithmetic(p: &HreProblem, variant: SystemVariant) -> LinearSystem {
    let c = p.matrix();
    let unknowns = p.unknowns();
    let k = unknowns.len();
    let denominators = known_counts(p);
    let mut coefficients = SquareMatrix::identity(k);
    let mut rhs = vec![0.0; k];
    for (a, &i) in unknowns.iter().enumerate() {
        let m = denominators[a];
        for (b, &j) in unknowns.iter().enumerate() {
            if a != b {
                let d = c.get(i, j).unwrap_or(0.0);
                coefficients.set(a, b, -d / m);
            }
        }
        let known_refs: f64 = p
            .references()
            .iter()
            .filter_map(|&(j, w)| c.get(i, j).map(|cij| cij * w))
            .sum();
        rhs[a] = known_refs / m;
    }
    LinearSystem { coefficients, rhs, variant, unknowns: unknowns.to_vec() }
}

fn geometric(p: &HreProblem, variant: SystemVariant) -> LinearSystem {
    let c = p.matrix();
    let unknowns = p.unknowns();
    let k = unknowns.len();
    let diagonal = known_counts(p);
    let mut coefficients = SquareMatrix::zeros(k);
    let mut rhs = vec![0.0; k];
    for (a, &i) in unknowns.iter().enumerate() {
        coefficients.set(a, a, diagonal[a]);
        for (b, &j) in unknowns.iter().enumerate() {
            if a != b && c.is_known(i, j) {
                coefficients.set(a, b, -1.0);
            }
        }
        let log_ratios: f64 = (0..p.n())
            .filter(|&j| j != i)
            .filter_map(|j| c.get(i, j))
            .map(f64::ln)
            .sum();
        let log_refs: f64 = p
            .references()
            .iter()
            .filter(|&&(j, _)| c.is_known(i, j))
            .map(|&(_, w)| w.ln())
            .sum();
        rhs[a] = log_ratios + log_refs;
    }
    LinearSystem { coefficients, rhs, variant, unknowns: unknowns.to_vec() }
}
