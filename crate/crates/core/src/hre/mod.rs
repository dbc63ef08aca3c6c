//! Heuristic Rating Estimation: assembly of the arithmetic and geometric
//! systems for complete and incomplete matrices, the sufficient-condition
//! checks for a unique solution, and ranking.
//!
//! Unknown alternatives are estimated from their comparisons with every
//! other alternative. In the arithmetic variant an unknown weight is the
//! mean of `c_ij * w_j` over its known comparisons (Missing cells contribute
//! the weight itself); in the geometric variant it is the geometric mean of
//! the same products, which is linear in log-weights.

mod applicability;
mod assemble;
mod rank;

use serde::Serialize;
use thiserror::Error;

use crate::consistency::ConsistencyError;
use crate::numerics::{self, NumericsError, SolveResult, SquareMatrix};
use crate::pcm::PcmError;

pub use applicability::{check_applicability, ThresholdBound, ATTAINMENT_TOL};
pub use assemble::{
    assemble, assemble_arithmetic_complete, assemble_arithmetic_incomplete,
    assemble_geometric_complete, assemble_geometric_incomplete,
};
pub use rank::{rank, RankOptions, RankOutcome, RankWarning, REFERENCE_TOL};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HreError {
    #[error("matrix has missing entries; use the incomplete assembler")]
    MatrixIncomplete,
    #[error("comparison graph is not strongly connected")]
    NotIrreducible,
    #[error("alternative {} has no known comparisons", .0 + 1)]
    IsolatedRow(usize),
    #[error(
        "SingularSystem: the {variant:?} HRE matrix is singular (smallest scaled pivot {pivot_floor:e}); {}",
        report.summary()
    )]
    SingularSystem { variant: SystemVariant, pivot_floor: f64, report: Box<ApplicabilityReport> },
    #[error("NonpositiveSolution: computed weights are not positive for alternatives {indices:?}")]
    NonpositiveSolution { indices: Vec<usize>, weights: Vec<f64> },
    #[error(transparent)]
    Problem(#[from] PcmError),
    #[error(transparent)]
    Consistency(#[from] ConsistencyError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Arithmetic,
    Geometric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SystemVariant {
    ArithmeticComplete,
    ArithmeticIncomplete,
    GeometricComplete,
    GeometricIncomplete,
}

impl SystemVariant {
    pub fn is_geometric(self) -> bool {
        matches!(self, Self::GeometricComplete | Self::GeometricIncomplete)
    }
}

/// `coefficients * x = rhs` over the unknowns, in `unknowns` order. For the
/// geometric variants `x` holds natural-log weights.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearSystem {
    pub coefficients: SquareMatrix,
    pub rhs: Vec<f64>,
    pub variant: SystemVariant,
    pub unknowns: Vec<usize>,
}

impl LinearSystem {
    pub fn solve(&self, singular_tol: f64) -> Result<SolveResult, NumericsError> {
        numerics::solve(&self.coefficients, &self.rhs, singular_tol)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Theorem {
    CompleteArithmetic,
    IncompleteArithmetic,
    CorollaryEqualMissing,
    CorollaryHalfN,
    GeometricAlways,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Guaranteed,
    NotGuaranteed,
}

/// Whether a sufficient condition for a unique HRE solution holds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ApplicabilityReport {
    pub theorem: Theorem,
    pub k: usize,
    pub n: usize,
    /// Consistency index of the unknown block (Saaty or Harker).
    pub ci_value: Option<f64>,
    pub threshold: Option<f64>,
    /// `threshold - ci_value`.
    pub slack: Option<f64>,
    pub s_max: Option<usize>,
    pub s_min: Option<usize>,
    pub verdict: Verdict,
    /// Every threshold that was evaluated, including non-applicable corollaries.
    pub bounds: Vec<ThresholdBound>,
    pub note: String,
}

impl ApplicabilityReport {
    pub fn is_guaranteed(&self) -> bool {
        self.verdict == Verdict::Guaranteed
    }

    pub fn summary(&self) -> String {
        match (self.ci_value, self.threshold) {
            (Some(ci), Some(t)) => format!(
                "{:?}: CI = {ci} vs threshold {t} -> {:?}",
                self.theorem, self.verdict
            ),
            _ => format!("{:?}: {:?} ({})", self.theorem, self.verdict, self.note),
        }
    }
}

/// Weights for all `n` alternatives in the original order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PriorityVector {
    pub labels: Vec<String>,
    pub weights: Vec<f64>,
    /// `true` where the weight was computed, `false` where it was given.
    pub computed: Vec<bool>,
}

impl PriorityVector {
    /// Weights rescaled to sum 1.
    pub fn normalized(&self) -> Vec<f64> {
        let total: f64 = self.weights.iter().sum();
        self.weights.iter().map(|w| w / total).collect()
    }

    pub fn weight_of(&self, label: &str) -> Option<f64> {
        self.labels.iter().position(|l| l == label).map(|i| self.weights[i])
    }
}
