//! Problem files: JSON documents, CSV matrices and reference sidecars.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use hre_core::{HreProblem, PcMatrix, PcmError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("ParseError at line {line}, column {column}: {message}")]
    Parse { line: u64, column: u64, message: String },
    #[error("SchemaError in `{field}`: {message}")]
    Schema { field: String, message: String },
}

impl InputError {
    fn schema(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self::Schema { field: field.into(), message: message.into() }
    }
}

/// On-disk description of a ranking problem. Missing cells are `null`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub alternatives: Vec<String>,
    pub matrix: Vec<Vec<Option<f64>>>,
    #[serde(default)]
    pub reference: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comment: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl ProblemFile {
    pub fn parse(text: &str, format: Format) -> Result<Self, InputError> {
        match format {
            Format::Json => Self::from_json(text),
            Format::Csv => Self::from_csv(text),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, InputError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let file: Self = serde_path_to_error::deserialize(de).map_err(|err| {
            let path = err.path().to_string();
            let inner = err.into_inner();
            match inner.classify() {
                serde_json::error::Category::Data => {
                    InputError::schema(if path == "." { "(root)".into() } else { path }, strip_position(&inner))
                }
                _ => InputError::Parse {
                    line: inner.line() as u64,
                    column: inner.column() as u64,
                    message: strip_position(&inner),
                },
            }
        })?;
        file.check()?;
        Ok(file)
    }

    /// Header row of names, then one row per alternative. Cells are decimals,
    /// exact fractions `a/b`, or `?` for Missing.
    pub fn from_csv(text: &str) -> Result<Self, InputError> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .flexible(true)
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let alternatives: Vec<String> = reader
            .headers()
            .map_err(csv_error)?
            .iter()
            .map(str::to_owned)
            .collect();
        let mut matrix = Vec::new();
        for record in reader.records() {
            let record = record.map_err(csv_error)?;
            let line = record.position().map_or(0, |p| p.line());
            let row = record
                .iter()
                .enumerate()
                .map(|(col, cell)| {
                    parse_cell(cell).map_err(|message| InputError::Parse {
                        line,
                        column: col as u64 + 1,
                        message,
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            matrix.push(row);
        }
        let file = Self { alternatives, matrix, reference: BTreeMap::new(), comment: None };
        file.check()?;
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("problem files always serialize")
    }

    /// CSV form of the matrix; references and comment are not part of it.
    pub fn to_csv(&self) -> String {
        let mut out = self.alternatives.join(",");
        out.push('\n');
        for row in &self.matrix {
            let cells: Vec<String> = row
                .iter()
                .map(|c| c.map_or_else(|| "?".to_owned(), |v| format!("{v:?}")))
                .collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    /// Shape, naming and reference-weight checks.
    pub fn check(&self) -> Result<(), InputError> {
        let n = self.alternatives.len();
        if n == 0 {
            return Err(InputError::schema("alternatives", "at least one alternative is required"));
        }
        let mut seen = BTreeSet::new();
        for name in &self.alternatives {
            if name.is_empty() {
                return Err(InputError::schema("alternatives", "names must be non-empty"));
            }
            if !seen.insert(name.as_str()) {
                return Err(InputError::schema("alternatives", format!("duplicate name {name:?}")));
            }
        }
        if self.matrix.len() != n {
            return Err(InputError::schema(
                "matrix",
                format!("{} rows for {n} alternatives", self.matrix.len()),
            ));
        }
        for (i, row) in self.matrix.iter().enumerate() {
            if row.len() != n {
                return Err(InputError::schema(
                    format!("matrix[{i}]"),
                    format!("{} cells, expected {n}", row.len()),
                ));
            }
        }
        for (name, &weight) in &self.reference {
            if !seen.contains(name.as_str()) {
                return Err(InputError::schema(
                    format!("reference.{name}"),
                    "not one of the alternatives",
                ));
            }
            if !(weight.is_finite() && weight > 0.0) {
                return Err(InputError::schema(
                    format!("reference.{name}"),
                    format!("weight must be positive and finite, got {weight}"),
                ));
            }
        }
        Ok(())
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.alternatives.iter().position(|a| a == name)
    }

    pub fn to_matrix(&self) -> Result<PcMatrix, InputError> {
        PcMatrix::new(self.alternatives.clone(), self.matrix.clone())
            .map_err(|e| InputError::schema("matrix", e.to_string()))
    }

    /// Splits the alternatives into unknowns and references.
    ///
    /// Without `unknowns` the unknowns are the complement of the reference
    /// map. With it, every other alternative is a reference and must have a
    /// weight unless `placeholder_weights` is set, in which case absent
    /// weights are taken as 1.
    pub fn to_problem(
        &self,
        unknowns: Option<&[String]>,
        placeholder_weights: bool,
    ) -> Result<HreProblem, ProblemError> {
        let matrix = self.to_matrix()?;
        let unknown_idx: Vec<usize> = match unknowns {
            Some(names) => names
                .iter()
                .map(|name| {
                    self.index_of(name).ok_or_else(|| {
                        InputError::schema("--unknowns", format!("{name:?} is not one of the alternatives"))
                    })
                })
                .collect::<Result<_, _>>()?,
            None => (0..self.alternatives.len())
                .filter(|&i| !self.reference.contains_key(&self.alternatives[i]))
                .collect(),
        };
        let mut references = Vec::new();
        for (i, name) in self.alternatives.iter().enumerate() {
            if unknown_idx.contains(&i) {
                continue;
            }
            match self.reference.get(name) {
                Some(&w) => references.push((i, w)),
                None if placeholder_weights => references.push((i, 1.0)),
                None => {
                    return Err(InputError::schema(
                        "reference",
                        format!("no weight for reference alternative {name:?}"),
                    )
                    .into())
                }
            }
        }
        HreProblem::new(matrix, unknown_idx, references).map_err(|e| match e {
            PcmError::InvalidMatrix(report) => ProblemError::Invalid(report),
            PcmError::NoUnknowns => InputError::schema("reference", "every alternative has a reference weight; nothing to estimate").into(),
            PcmError::NoReferences => InputError::schema("reference", "at least one reference alternative is required").into(),
            PcmError::DuplicateMember(i) => {
                InputError::schema("--unknowns", format!("{:?} is listed twice", self.alternatives[i])).into()
            }
            other => InputError::schema("reference", other.to_string()).into(),
        })
    }
}

#[derive(Debug, Error)]
pub enum ProblemError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error("matrix is not a valid pairwise comparison matrix: {0}")]
    Invalid(hre_core::ValidationReport),
}

/// Reads `name,weight` rows (with that header) from a reference sidecar.
pub fn parse_reference_csv(text: &str) -> Result<BTreeMap<String, f64>, InputError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader.headers().map_err(csv_error)?.clone();
    if headers.iter().collect::<Vec<_>>() != ["name", "weight"] {
        return Err(InputError::Parse {
            line: 1,
            column: 1,
            message: "reference file header must be `name,weight`".into(),
        });
    }
    let mut out = BTreeMap::new();
    for record in reader.records() {
        let record = record.map_err(csv_error)?;
        let line = record.position().map_or(0, |p| p.line());
        let weight = match parse_cell(&record[1]) {
            Ok(Some(w)) => w,
            Ok(None) => {
                return Err(InputError::Parse { line, column: 2, message: "reference weight cannot be missing".into() })
            }
            Err(message) => return Err(InputError::Parse { line, column: 2, message }),
        };
        if out.insert(record[0].to_owned(), weight).is_some() {
            return Err(InputError::Parse {
                line,
                column: 1,
                message: format!("duplicate reference {:?}", &record[0]),
            });
        }
    }
    Ok(out)
}

/// Parses `name=weight`.
pub fn parse_reference_flag(arg: &str) -> Result<(String, f64), String> {
    let (name, weight) = arg.split_once('=').ok_or("expected name=weight")?;
    match parse_cell(weight.trim())? {
        Some(w) => Ok((name.trim().to_owned(), w)),
        None => Err("reference weight cannot be missing".into()),
    }
}

/// A decimal, an exact fraction `a/b` of integers, or `?`.
pub fn parse_cell(cell: &str) -> Result<Option<f64>, String> {
    if cell == "?" {
        return Ok(None);
    }
    if let Some((num, den)) = cell.split_once('/') {
        let num: u64 = num.trim().parse().map_err(|_| format!("bad fraction numerator in {cell:?}"))?;
        let den: u64 = den.trim().parse().map_err(|_| format!("bad fraction denominator in {cell:?}"))?;
        const EXACT: u64 = 1 << 53;
        if den == 0 {
            return Err(format!("zero denominator in {cell:?}"));
        }
        if num > EXACT || den > EXACT {
            return Err(format!("fraction terms in {cell:?} exceed 2^53"));
        }
        // both terms are exact doubles, so the quotient is correctly rounded
        return Ok(Some(num as f64 / den as f64));
    }
    let value: f64 = cell.parse().map_err(|_| format!("not a number: {cell:?}"))?;
    if !value.is_finite() {
        return Err(format!("not a finite number: {cell:?}"));
    }
    Ok(Some(value))
}

fn csv_error(err: csv::Error) -> InputError {
    let (line, message) = match err.kind() {
        csv::ErrorKind::Utf8 { pos, err } => (pos.as_ref().map_or(0, |p| p.line()), err.to_string()),
        csv::ErrorKind::UnequalLengths { pos, .. } => {
            (pos.as_ref().map_or(0, |p| p.line()), "row length differs from header".into())
        }
        _ => (0, err.to_string()),
    };
    InputError::Parse { line, column: 1, message }
}

fn strip_position(err: &serde_json::Error) -> String {
    let text = err.to_string();
    match text.rfind(" at line ") {
        Some(pos) => text[..pos].to_owned(),
        None => text,
    }
}
