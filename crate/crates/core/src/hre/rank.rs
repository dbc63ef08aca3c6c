use serde::Serialize;

use super::{
    assemble, check_applicability, ApplicabilityReport, HreError, PriorityVector, SystemVariant,
    Variant,
};
use crate::numerics::{Solution, DEFAULT_SINGULAR_TOL};
use crate::pcm::HreProblem;

/// Relative tolerance for `c_pq = w_p / w_q` among reference alternatives.
pub const REFERENCE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankOptions {
    pub singular_tol: f64,
    /// Turn a non-positive computed weight into an error.
    pub strict: bool,
}

impl Default for RankOptions {
    fn default() -> Self {
        Self { singular_tol: DEFAULT_SINGULAR_TOL, strict: false }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RankWarning {
    /// Some computed weight is zero or negative.
    NonpositiveSolution { indices: Vec<usize> },
    /// A comparison between two references disagrees with their weights.
    ReferenceInconsistent { row: usize, col: usize, given: f64, implied: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankOutcome {
    pub priorities: PriorityVector,
    pub report: ApplicabilityReport,
    pub system: SystemVariant,
    pub pivot_floor: f64,
    pub warnings: Vec<RankWarning>,
}

/// Assembles, certifies and solves the HRE system of `variant`.
///
/// The applicability report and the solver are independent: a problem at
/// the theorem threshold is reported `NotGuaranteed` and may still solve,
/// and the solver alone decides `SingularSystem`.
pub fn rank(p: &HreProblem, variant: Variant, options: &RankOptions) -> Result<RankOutcome, HreError> {
    let system = assemble(p, variant)?;
    let report = check_applicability(p, variant);
    let solved = system.solve(options.singular_tol)?;
    let values = match solved.solution {
        Solution::Unique(x) => x,
        Solution::Singular => {
            return Err(HreError::SingularSystem {
                variant: system.variant,
                pivot_floor: solved.pivot_floor,
                report: Box::new(report),
            })
        }
    };

    let c = p.matrix();
    let n = p.n();
    let mut weights = vec![0.0; n];
    let mut computed = vec![false; n];
    for (&i, &x) in system.unknowns.iter().zip(&values) {
        weights[i] = if system.variant.is_geometric() { x.exp() } else { x };
        computed[i] = true;
    }
    for &(i, w) in p.references() {
        weights[i] = w;
    }

    let mut warnings = Vec::new();
    let nonpositive: Vec<usize> = system
        .unknowns
        .iter()
        .copied()
        .filter(|&i| weights[i].partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater))
        .collect();
    if !nonpositive.is_empty() {
        if options.strict {
            let weights = nonpositive.iter().map(|&i| weights[i]).collect();
            return Err(HreError::NonpositiveSolution { indices: nonpositive, weights });
        }
        warnings.push(RankWarning::NonpositiveSolution { indices: nonpositive });
    }
    for &(row, wp) in p.references() {
        for &(col, wq) in p.references() {
            if row >= col {
                continue;
            }
            if let Some(given) = c.get(row, col) {
                let implied = wp / wq;
                if (given - implied).abs() > REFERENCE_TOL * given {
                    warnings.push(RankWarning::ReferenceInconsistent { row, col, given, implied });
                }
            }
        }
    }

    Ok(RankOutcome {
        priorities: PriorityVector { labels: c.labels().to_vec(), weights, computed },
        report,
        system: system.variant,
        pivot_floor: solved.pivot_floor,
        warnings,
    })
}
