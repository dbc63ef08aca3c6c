//! The machine-readable report printed on stdout. Field order is fixed by
//! declaration order, so serialization is deterministic.

use hre_core::baselines::BaselineError;
use hre_core::{
    ApplicabilityReport, ConsistencyError, ConsistencyReport, HreError, SystemVariant, Variant,
    Violation,
};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub command: &'static str,
    pub status: Status,
    pub exit_code: i32,
    pub alternatives: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unknowns: Option<Vec<String>>,
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub validation: Option<ValidationSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub consistency: Option<ConsistencyReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub applicability: Option<ApplicabilityReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub priorities: Option<Vec<Priority>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub baselines: Option<Vec<Baseline>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub completion: Option<Vec<Vec<f64>>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<Warning>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<Failure>,
}

impl RunReport {
    pub fn new(command: &'static str, alternatives: Vec<String>, method: Method) -> Self {
        Self {
            command,
            status: Status::Ok,
            exit_code: 0,
            alternatives,
            unknowns: None,
            method,
            validation: None,
            consistency: None,
            applicability: None,
            priorities: None,
            baselines: None,
            completion: None,
            warnings: Vec::new(),
            failure: None,
        }
    }

    pub fn fail(&mut self, failure: Failure) {
        self.status = Status::Failed;
        self.exit_code = failure.exit_code();
        self.failure = Some(failure);
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("reports always serialize");
        text.push('\n');
        text
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Method {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<Variant>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub system: Option<SystemVariant>,
    pub singular_tol: f64,
    pub strict: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pivot_floor: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_us: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationSection {
    pub clean: bool,
    pub complete: bool,
    pub irreducible: bool,
    pub missing_pairs: usize,
    pub violations: Vec<Violation>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Priority {
    pub name: String,
    pub weight: f64,
    pub normalized: f64,
    pub computed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Baseline {
    pub method: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Warning {
    NonpositiveSolution { alternatives: Vec<String> },
    ReferenceInconsistent { row: String, col: String, given: f64, implied: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum Failure {
    InvalidMatrix,
    TooSmall { n: usize },
    SingularSystem { pivot_floor: f64 },
    NonpositiveSolution { alternatives: Vec<String>, weights: Vec<f64> },
    NotConsistent { row: String, col: String, expected: f64, found: f64 },
    NotIrreducible,
    IsolatedAlternative { alternative: String },
    NoConvergence { iterations: usize },
    Numerics,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;
pub const EXIT_IRREDUCIBLE: i32 = 4;

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::InvalidMatrix | Failure::TooSmall { .. } | Failure::Numerics => EXIT_INVALID,
            Failure::SingularSystem { .. }
            | Failure::NonpositiveSolution { .. }
            | Failure::NotConsistent { .. }
            | Failure::NoConvergence { .. } => EXIT_NUMERIC,
            Failure::NotIrreducible | Failure::IsolatedAlternative { .. } => EXIT_IRREDUCIBLE,
        }
    }

    pub fn from_hre(err: &HreError, labels: &[String]) -> Self {
        match err {
            HreError::SingularSystem { pivot_floor, .. } => Failure::SingularSystem { pivot_floor: *pivot_floor },
            HreError::NonpositiveSolution { indices, weights } => Failure::NonpositiveSolution {
                alternatives: indices.iter().map(|&i| labels[i].clone()).collect(),
                weights: weights.clone(),
            },
            HreError::NotIrreducible => Failure::NotIrreducible,
            HreError::IsolatedRow(i) => Failure::IsolatedAlternative { alternative: labels[*i].clone() },
            HreError::Consistency(e) => Self::from_consistency(e, labels),
            HreError::MatrixIncomplete | HreError::Problem(_) => Failure::InvalidMatrix,
            HreError::Numerics(_) => Failure::Numerics,
        }
    }

    pub fn from_consistency(err: &ConsistencyError, labels: &[String]) -> Self {
        match err {
            ConsistencyError::NotConsistent { row, col, expected, found } => Failure::NotConsistent {
                row: labels[*row].clone(),
                col: labels[*col].clone(),
                expected: *expected,
                found: *found,
            },
            ConsistencyError::NotIrreducible => Failure::NotIrreducible,
            ConsistencyError::HasAllMissingRow(i) => {
                Failure::IsolatedAlternative { alternative: labels[*i].clone() }
            }
            ConsistencyError::TooSmall(n) => Failure::TooSmall { n: *n },
            ConsistencyError::NoConvergence(iterations) => Failure::NoConvergence { iterations: *iterations },
            ConsistencyError::HasMissingEntries => Failure::InvalidMatrix,
            ConsistencyError::Numerics(_) => Failure::Numerics,
        }
    }

    pub fn from_baseline(err: &BaselineError) -> Self {
        match err {
            BaselineError::NotIrreducible => Failure::NotIrreducible,
            BaselineError::NoConvergence(iterations) => Failure::NoConvergence { iterations: *iterations },
            BaselineError::MatrixIncomplete => Failure::InvalidMatrix,
            BaselineError::SingularLaplacian => Failure::SingularSystem { pivot_floor: 0.0 },
            BaselineError::Numerics(_) => Failure::Numerics,
        }
    }
}
