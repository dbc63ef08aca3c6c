//! Heuristic Rating Estimation (HRE) over pairwise comparison matrices.
//!
//! The crate ranks alternatives whose weights are unknown against a set of
//! reference alternatives with fixed weights, using either the arithmetic or
//! the geometric HRE variant, for complete and incomplete comparison data.
//! Before solving, [`hre::check_applicability`] reports whether the known
//! sufficient conditions guarantee a unique solution.
//!
//! Module map:
//! - [`pcm`]: comparison matrices, validation, comparison graph, HRE problems
//! - [`numerics`]: spectral radius, pivoted linear solve, Gershgorin test
//! - [`consistency`]: Saaty CI, Harker CI-bar, consistent completion
//! - [`hre`]: system assembly, applicability reports, ranking
//! - [`baselines`]: EVM, GMM and their incomplete counterparts

pub mod baselines;
pub mod consistency;
pub mod graph;
pub mod hre;
pub mod numerics;
pub mod pcm;

pub use consistency::{ConsistencyError, ConsistencyKind, ConsistencyReport};
pub use hre::{
    ApplicabilityReport, HreError, LinearSystem, PriorityVector, RankOptions, RankOutcome,
    SystemVariant, Theorem, Variant, Verdict,
};
pub use numerics::{NumericsError, SolveResult, SpectralResult, SquareMatrix};
pub use pcm::{
    ComparisonGraph, HreProblem, MissingCounts, MissingScope, PcMatrix, PcmError,
    ValidationReport, Violation,
};
