//! Pairwise comparison matrices, their validation, comparison graphs and the
//! HRE problem partition into unknown and reference alternatives.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graph;

/// Relative tolerance on `c_ij * c_ji == 1`.
pub const RECIPROCITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PcmError {
    #[error("matrix is not square: row {row} has {len} cells, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("matrix must have at least one alternative")]
    Empty,
    #[error("{labels} labels supplied for a {n}x{n} matrix")]
    LabelCount { labels: usize, n: usize },
    #[error("duplicate alternative label {0:?}")]
    DuplicateLabel(String),
    #[error("alternative index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("matrix is not a valid pairwise comparison matrix: {0}")]
    InvalidMatrix(ValidationReport),
    #[error("at least one unknown alternative is required")]
    NoUnknowns,
    #[error("at least one reference alternative is required")]
    NoReferences,
    #[error("alternative {0} is listed more than once among unknowns and references")]
    DuplicateMember(usize),
    #[error("alternative {0} is neither unknown nor reference")]
    Unassigned(usize),
    #[error("reference weight for alternative {index} must be positive and finite, got {weight}")]
    BadReferenceWeight { index: usize, weight: f64 },
}

/// An `n x n` pairwise comparison matrix whose off-diagonal cells may be
/// Missing (`None`).
///
/// Construction only checks the shape; [`PcMatrix::validate`] reports
/// reciprocity, positivity and Missing-pattern violations as data.
#[derive(Debug, Clone, PartialEq)]
pub struct PcMatrix {
    n: usize,
    cells: Vec<Option<f64>>,
    labels: Vec<String>,
}

fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("a{i}")).collect()
}

impl PcMatrix {
    pub fn new(labels: Vec<String>, rows: Vec<Vec<Option<f64>>>) -> Result<Self, PcmError> {
        let n = rows.len();
        if n == 0 {
            return Err(PcmError::Empty);
        }
        if labels.len() != n {
            return Err(PcmError::LabelCount { labels: labels.len(), n });
        }
        let mut seen = HashSet::with_capacity(n);
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(PcmError::DuplicateLabel(label.clone()));
            }
        }
        let mut cells = Vec::with_capacity(n * n);
        for (row, values) in rows.into_iter().enumerate() {
            if values.len() != n {
                return Err(PcmError::NotSquare { row, len: values.len(), expected: n });
            }
            cells.extend(values);
        }
        Ok(Self { n, cells, labels })
    }

    /// Matrix with default labels `a1..an`.
    pub fn from_rows(rows: Vec<Vec<Option<f64>>>) -> Result<Self, PcmError> {
        Self::new(default_labels(rows.len()), rows)
    }

    /// Complete matrix with default labels.
    pub fn from_values(rows: &[Vec<f64>]) -> Result<Self, PcmError> {
        Self::from_rows(rows.iter().map(|r| r.iter().copied().map(Some).collect()).collect())
    }

    /// Builds a matrix from its strict upper triangle; the diagonal is set to
    /// 1 and every lower cell to the exact reciprocal of its mirror (or
    /// Missing). Cells on or below the diagonal of `rows` are ignored.
    pub fn from_upper_triangle(
        labels: Vec<String>,
        rows: Vec<Vec<Option<f64>>>,
    ) -> Result<Self, PcmError> {
        let mut m = Self::new(labels, rows)?;
        let n = m.n;
        for i in 0..n {
            m.cells[i * n + i] = Some(1.0);
            for j in (i + 1)..n {
                m.cells[j * n + i] = m.cells[i * n + j].map(|c| 1.0 / c);
            }
        }
        Ok(m)
    }

    /// The consistent complete matrix `c_ij = w_i / w_j`.
    pub fn from_weights(weights: &[f64]) -> Result<Self, PcmError> {
        let rows = weights
            .iter()
            .map(|wi| weights.iter().map(|wj| Some(wi / wj)).collect())
            .collect();
        Self::from_rows(rows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        self.cells[i * self.n + j]
    }

    pub fn is_known(&self, i: usize, j: usize) -> bool {
        self.get(i, j).is_some()
    }

    pub fn is_complete(&self) -> bool {
        self.cells.iter().all(Option::is_some)
    }

    pub fn rows(&self) -> Vec<Vec<Option<f64>>> {
        self.cells.chunks(self.n).map(<[_]>::to_vec).collect()
    }

    /// Returns a copy with both `(i, j)` and `(j, i)` set to Missing.
    pub fn without_pair(&self, i: usize, j: usize) -> Self {
        let mut m = self.clone();
        if i != j {
            m.cells[i * self.n + j] = None;
            m.cells[j * self.n + i] = None;
        }
        m
    }

    /// The principal submatrix over `indices`, in the given order.
    pub fn submatrix(&self, indices: &[usize]) -> Result<Self, PcmError> {
        for &index in indices {
            if index >= self.n {
                return Err(PcmError::IndexOutOfRange { index, n: self.n });
            }
        }
        let labels = indices.iter().map(|&i| self.labels[i].clone()).collect();
        let rows = indices
            .iter()
            .map(|&i| indices.iter().map(|&j| self.get(i, j)).collect())
            .collect();
        Self::new(labels, rows)
    }

    pub fn validate(&self) -> ValidationReport {
        let n = self.n;
        let mut violations = Vec::new();
        for i in 0..n {
            match self.get(i, i) {
                Some(1.0) => {}
                value => violations.push(Violation::NonUnitDiagonal { index: i, value }),
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                if let Some(value) = self.get(i, j) {
                    if !value.is_finite() {
                        violations.push(Violation::NonFiniteEntry { row: i, col: j });
                    } else if value <= 0.0 {
                        violations.push(Violation::NonPositiveEntry { row: i, col: j, value });
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                match (self.get(i, j), self.get(j, i)) {
                    (Some(a), Some(b)) => {
                        if !(a.is_finite() && b.is_finite() && a > 0.0 && b > 0.0) {
                            continue;
                        }
                        let product = a * b;
                        if (product - 1.0).abs() > RECIPROCITY_TOL * product.max(1.0) {
                            violations.push(Violation::BrokenReciprocity { row: i, col: j, product });
                        }
                    }
                    (None, None) => {}
                    _ => violations.push(Violation::AsymmetricMissing { row: i, col: j }),
                }
            }
        }
        ValidationReport { violations }
    }

    pub fn comparison_graph(&self) -> ComparisonGraph {
        let n = self.n;
        let adjacency = (0..n)
            .map(|i| (0..n).filter(|&j| j != i && self.is_known(i, j)).collect())
            .collect();
        ComparisonGraph { adjacency }
    }

    pub fn is_irreducible(&self) -> bool {
        self.comparison_graph().is_irreducible()
    }

    /// Missing counts `s_i` for the requested rows under the given column scope.
    pub fn missing_counts(&self, rows: &[usize], scope: &MissingScope) -> MissingCounts {
        let counts: Vec<usize> = rows
            .iter()
            .map(|&i| {
                let missing = |j: usize| j != i && !self.is_known(i, j);
                match scope {
                    MissingScope::AllColumns => (0..self.n).filter(|&j| missing(j)).count(),
                    MissingScope::Columns(cols) => cols.iter().filter(|&&j| missing(j)).count(),
                }
            })
            .collect();
        MissingCounts {
            rows: rows.to_vec(),
            s_max: counts.iter().copied().max().unwrap_or(0),
            s_min: counts.iter().copied().min().unwrap_or(0),
            counts,
        }
    }
}

/// A single defect found by [`PcMatrix::validate`]. Indices are 0-based;
/// the `Display` form is 1-based.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NonUnitDiagonal { index: usize, value: Option<f64> },
    NonFiniteEntry { row: usize, col: usize },
    NonPositiveEntry { row: usize, col: usize, value: f64 },
    BrokenReciprocity { row: usize, col: usize, product: f64 },
    AsymmetricMissing { row: usize, col: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::NonUnitDiagonal { index, value: Some(v) } => {
                write!(f, "diagonal cell ({0},{0}) is {v}, expected 1", index + 1)
            }
            Violation::NonUnitDiagonal { index, value: None } => {
                write!(f, "diagonal cell ({0},{0}) is missing", index + 1)
            }
            Violation::NonFiniteEntry { row, col } => {
                write!(f, "cell ({},{}) is not finite", row + 1, col + 1)
            }
            Violation::NonPositiveEntry { row, col, value } => {
                write!(f, "cell ({},{}) = {value} is not positive", row + 1, col + 1)
            }
            Violation::BrokenReciprocity { row, col, product } => write!(
                f,
                "cells ({0},{1})/({1},{0}) are not reciprocal (product {product})",
                row + 1,
                col + 1
            ),
            Violation::AsymmetricMissing { row, col } => write!(
                f,
                "exactly one of cells ({0},{1})/({1},{0}) is missing",
                row + 1,
                col + 1
            ),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("no violations");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Directed graph with an edge `i -> j` for every known off-diagonal `c_ij`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonGraph {
    adjacency: Vec<Vec<usize>>,
}

impl ComparisonGraph {
    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(i, succ)| succ.iter().map(move |&j| (i, j)))
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].contains(&j)
    }

    /// Strong connectivity of the graph.
    pub fn is_irreducible(&self) -> bool {
        graph::is_strongly_connected(&self.adjacency)
    }
}

/// Which columns count towards `s_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MissingScope {
    /// Every column of the row (the HRE system matrices and the Harker
    /// matrix of the full problem use this).
    AllColumns,
    /// Only the listed columns, e.g. the unknown block `C_k`.
    Columns(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MissingCounts {
    pub rows: Vec<usize>,
    pub counts: Vec<usize>,
    pub s_max: usize,
    pub s_min: usize,
}

/// A comparison matrix split into unknown alternatives and reference
/// alternatives with fixed positive weights.
#[derive(Debug, Clone, PartialEq)]
pub struct HreProblem {
    matrix: PcMatrix,
    unknowns: Vec<usize>,
    references: Vec<(usize, f64)>,
}

impl HreProblem {
    /// `unknowns` keeps the caller's order; references are stored sorted by
    /// index. The matrix must pass validation.
    pub fn new(
        matrix: PcMatrix,
        unknowns: Vec<usize>,
        mut references: Vec<(usize, f64)>,
    ) -> Result<Self, PcmError> {
        let n = matrix.n();
        if unknowns.is_empty() {
            return Err(PcmError::NoUnknowns);
        }
        if references.is_empty() {
            return Err(PcmError::NoReferences);
        }
        let mut seen = vec![false; n];
        for &index in unknowns.iter().chain(references.iter().map(|(i, _)| i)) {
            if index >= n {
                return Err(PcmError::IndexOutOfRange { index, n });
            }
            if std::mem::replace(&mut seen[index], true) {
                return Err(PcmError::DuplicateMember(index));
            }
        }
        if let Some(index) = seen.iter().position(|s| !s) {
            return Err(PcmError::Unassigned(index));
        }
        for &(index, weight) in &references {
            if !(weight.is_finite() && weight > 0.0) {
                return Err(PcmError::BadReferenceWeight { index, weight });
            }
        }
        let report = matrix.validate();
        if !report.is_clean() {
            return Err(PcmError::InvalidMatrix(report));
        }
        references.sort_by_key(|&(i, _)| i);
        Ok(Self { matrix, unknowns, references })
    }

    /// Unknowns are the complement of `references`, in index order.
    pub fn from_references(matrix: PcMatrix, references: Vec<(usize, f64)>) -> Result<Self, PcmError> {
        let unknowns = (0..matrix.n())
            .filter(|i| !references.iter().any(|(r, _)| r == i))
            .collect();
        Self::new(matrix, unknowns, references)
    }

    pub fn matrix(&self) -> &PcMatrix {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    /// Number of unknown alternatives.
    pub fn k(&self) -> usize {
        self.unknowns.len()
    }

    pub fn unknowns(&self) -> &[usize] {
        &self.unknowns
    }

    pub fn references(&self) -> &[(usize, f64)] {
        &self.references
    }

    pub fn reference_weight(&self, index: usize) -> Option<f64> {
        self.references.iter().find(|(i, _)| *i == index).map(|(_, w)| *w)
    }

    /// Unknowns first, then references.
    pub fn canonical_order(&self) -> Vec<usize> {
        self.unknowns
            .iter()
            .copied()
            .chain(self.references.iter().map(|(i, _)| *i))
            .collect()
    }

    /// The unknown block `C_k` in unknown order.
    pub fn unknown_block(&self) -> PcMatrix {
        self.matrix
            .submatrix(&self.unknowns)
            .expect("unknown indices are in range")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: Vec<Vec<Option<f64>>>) -> PcMatrix {
        PcMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn consistent_matrix_is_clean() {
        let c = PcMatrix::from_values(&[
            vec![1.0, 2.0, 4.0],
            vec![0.5, 1.0, 2.0],
            vec![0.25, 0.5, 1.0],
        ])
        .unwrap();
        assert!(c.validate().is_clean());
    }

    #[test]
    fn broken_reciprocity_names_the_pair() {
        let c = PcMatrix::from_values(&[vec![1.0, 2.0], vec![3.0, 1.0]]).unwrap();
        let report = c.validate();
        assert_eq!(
            report.violations,
            vec![Violation::BrokenReciprocity { row: 0, col: 1, product: 6.0 }]
        );
    }

    #[test]
    fn asymmetric_missing_is_reported() {
        let c = m(vec![vec![Some(1.0), None], vec![Some(0.5), Some(1.0)]]);
        assert_eq!(
            c.validate().violations,
            vec![Violation::AsymmetricMissing { row: 0, col: 1 }]
        );
    }

    #[test]
    fn missing_diagonal_and_nonpositive_entries() {
        let c = m(vec![
            vec![None, Some(-1.0)],
            vec![Some(f64::INFINITY), Some(1.0)],
        ]);
        let v = c.validate().violations;
        assert!(v.contains(&Violation::NonUnitDiagonal { index: 0, value: None }));
        assert!(v.contains(&Violation::NonPositiveEntry { row: 0, col: 1, value: -1.0 }));
        assert!(v.contains(&Violation::NonFiniteEntry { row: 1, col: 0 }));
        assert_eq!(v.len(), 3);
    }

    #[test]
    fn reciprocity_tolerance_is_relative() {
        let c = PcMatrix::from_values(&[vec![1.0, 3.0], vec![1.0 / 3.0 * (1.0 + 5e-10), 1.0]])
            .unwrap();
        assert!(c.validate().is_clean());
        let c = PcMatrix::from_values(&[vec![1.0, 3.0], vec![1.0 / 3.0 * (1.0 + 5e-9), 1.0]])
            .unwrap();
        assert!(!c.validate().is_clean());
    }

    #[test]
    fn shape_errors() {
        assert_eq!(PcMatrix::from_rows(vec![]), Err(PcmError::Empty));
        assert!(matches!(
            PcMatrix::from_rows(vec![vec![Some(1.0)], vec![Some(1.0), Some(1.0)]]),
            Err(PcmError::NotSquare { row: 0, .. })
        ));
        assert!(matches!(
            PcMatrix::new(vec!["x".into(), "x".into()], vec![vec![Some(1.0); 2]; 2]),
            Err(PcmError::DuplicateLabel(_))
        ));
    }

    #[test]
    fn upper_triangle_ingestion_fills_reciprocals() {
        let c = PcMatrix::from_upper_triangle(
            default_labels(3),
            vec![
                vec![Some(7.0), Some(3.0), None],
                vec![Some(9.0), Some(7.0), Some(0.3)],
                vec![Some(9.0), Some(9.0), Some(7.0)],
            ],
        )
        .unwrap();
        assert!(c.validate().is_clean());
        assert_eq!(c.get(1, 0), Some(1.0 / 3.0));
        assert_eq!(c.get(2, 0), None);
        assert_eq!(c.get(2, 2), Some(1.0));
    }

    #[test]
    fn graph_edge_counts() {
        let full = PcMatrix::from_weights(&[1.0, 2.0, 4.0]).unwrap();
        assert_eq!(full.comparison_graph().edge_count(), 6);
        let g = full.without_pair(0, 2).comparison_graph();
        assert_eq!(g.edge_count(), 4);
        assert!(!g.has_edge(0, 2) && !g.has_edge(2, 0));
        let two = PcMatrix::from_weights(&[1.0, 2.0]).unwrap().comparison_graph();
        assert_eq!(two.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 0)]);
    }

    #[test]
    fn irreducibility() {
        let full = PcMatrix::from_weights(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert!(full.is_irreducible());
        let split = full
            .without_pair(0, 2)
            .without_pair(0, 3)
            .without_pair(1, 2)
            .without_pair(1, 3);
        assert!(!split.is_irreducible());
        let single = PcMatrix::from_values(&[vec![1.0]]).unwrap();
        assert!(single.is_irreducible());
    }

    #[test]
    fn missing_counts_by_scope() {
        let c = PcMatrix::from_weights(&[1.0, 2.0, 4.0]).unwrap();
        let all = c.missing_counts(&[0, 1, 2], &MissingScope::AllColumns);
        assert_eq!((all.counts.clone(), all.s_max, all.s_min), (vec![0, 0, 0], 0, 0));

        let c = c.without_pair(0, 2);
        let all = c.missing_counts(&[0, 1, 2], &MissingScope::AllColumns);
        assert_eq!(all.counts, vec![1, 0, 1]);
        assert_eq!((all.s_max, all.s_min), (1, 0));
        let block = c.missing_counts(&[0, 1], &MissingScope::Columns(vec![0, 1]));
        assert_eq!(block.counts, vec![0, 0]);
    }

    #[test]
    fn problem_partition_checks() {
        let c = PcMatrix::from_weights(&[1.0, 2.0, 4.0]).unwrap();
        assert_eq!(HreProblem::new(c.clone(), vec![], vec![(0, 1.0)]), Err(PcmError::NoUnknowns));
        assert_eq!(HreProblem::new(c.clone(), vec![0, 1, 2], vec![]), Err(PcmError::NoReferences));
        assert_eq!(
            HreProblem::new(c.clone(), vec![0, 1], vec![(1, 2.0), (2, 4.0)]),
            Err(PcmError::DuplicateMember(1))
        );
        assert_eq!(HreProblem::new(c.clone(), vec![0], vec![(2, 4.0)]), Err(PcmError::Unassigned(1)));
        assert!(matches!(
            HreProblem::new(c.clone(), vec![0, 1], vec![(2, 0.0)]),
            Err(PcmError::BadReferenceWeight { index: 2, .. })
        ));
        let p = HreProblem::from_references(c, vec![(2, 4.0), (1, 2.0)]).unwrap();
        assert_eq!(p.unknowns(), &[0]);
        assert_eq!(p.references(), &[(1, 2.0), (2, 4.0)]);
        assert_eq!(p.canonical_order(), vec![0, 1, 2]);
        assert_eq!(p.k(), 1);
    }

    #[test]
    fn invalid_matrix_rejected_by_problem() {
        let c = PcMatrix::from_values(&[vec![1.0, 2.0], vec![3.0, 1.0]]).unwrap();
        assert!(matches!(
            HreProblem::new(c, vec![0], vec![(1, 1.0)]),
            Err(PcmError::InvalidMatrix(_))
        ));
    }
}
