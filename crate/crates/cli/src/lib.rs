//! The `hre` command-line tool: reads a problem file, runs one command and
//! prints a report. Diagnostics go to stderr; stdout carries only the report.

pub mod input;
pub mod report;
mod text;

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hre_core::baselines::{evm, gmm, harker_evm, incomplete_gmm};
use hre_core::consistency::{consistent_completion, harker_ci, saaty_ci};
use hre_core::hre::{check_applicability, rank, RankOptions, RankWarning};
use hre_core::numerics::DEFAULT_SINGULAR_TOL;
use hre_core::{HreError, PcMatrix, Variant};

use input::{parse_reference_csv, parse_reference_flag, Format, InputError, ProblemError, ProblemFile};
use report::{
    Baseline, Failure, Method, Priority, RunReport, ValidationSection, Warning, EXIT_INVALID,
    EXIT_OK, EXIT_USAGE,
};

#[derive(Debug, Parser)]
#[command(
    name = "hre",
    version,
    about = "Rank alternatives from pairwise comparisons with Heuristic Rating Estimation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check reciprocity, positivity and the Missing pattern.
    Validate(InputArg),
    /// Saaty's index for complete matrices, Harker's for incomplete ones.
    Consistency(InputArg),
    /// Report whether a unique HRE solution is guaranteed.
    Check(InputArg),
    /// Solve the HRE system and print the weights.
    Rank(InputArg),
    /// Eigenvector, geometric-mean and their incomplete counterparts.
    Baseline(InputArg),
    /// Fill Missing cells of a consistent matrix.
    Complete(InputArg),
}

#[derive(Debug, Args)]
pub struct InputArg {
    /// Problem file (JSON or CSV); `-` reads stdin.
    pub input: PathBuf,
}

#[derive(Debug, Args)]
pub struct Options {
    #[arg(long, global = true, value_enum, default_value_t = VariantArg::Arithmetic)]
    pub variant: VariantArg,
    /// Comma-separated unknown alternatives; all others become references.
    #[arg(long, global = true, value_delimiter = ',')]
    pub unknowns: Option<Vec<String>>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Treat a non-positive computed weight as an error.
    #[arg(long, global = true)]
    pub strict: bool,
    /// Relative pivot below which a system counts as singular.
    #[arg(long = "tol-singular", global = true, default_value_t = DEFAULT_SINGULAR_TOL)]
    pub tol_singular: f64,
    /// Seed for randomized diagnostics; recorded in the report.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Reference weight `name=weight` for CSV input; repeatable.
    #[arg(long = "ref", global = true, value_parser = parse_reference_flag)]
    pub refs: Vec<(String, f64)>,
    /// CSV file with `name,weight` rows for CSV input.
    #[arg(long = "ref-file", global = true)]
    pub ref_file: Option<PathBuf>,
    /// Input format; inferred from the file extension when omitted.
    #[arg(long = "input-format", global = true, value_enum)]
    pub input_format: Option<InputFormat>,
    /// Include elapsed wall-clock time in the report.
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Arithmetic,
    Geometric,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Arithmetic => Variant::Arithmetic,
            VariantArg::Geometric => Variant::Geometric,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Json,
    Csv,
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&cli, err) {
        Ok(report) => {
            let rendered = match cli.options.format {
                OutputFormat::Json => report.to_json(),
                OutputFormat::Text => text::render(&report),
            };
            let _ = out.write_all(rendered.as_bytes());
            report.exit_code
        }
        Err(Abort { code, message }) => {
            let _ = writeln!(err, "error: {message}");
            code
        }
    }
}

/// Failure before a report can be produced.
struct Abort {
    code: i32,
    message: String,
}

impl Abort {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<InputError> for Abort {
    fn from(e: InputError) -> Self {
        Self { code: EXIT_INVALID, message: e.to_string() }
    }
}

fn execute(cli: &Cli, err: &mut dyn Write) -> Result<RunReport, Abort> {
    let opts = &cli.options;
    if !(opts.tol_singular.is_finite() && opts.tol_singular > 0.0) {
        return Err(Abort::usage("--tol-singular must be positive and finite"));
    }
    let (name, path) = match &cli.command {
        Command::Validate(a) => ("validate", &a.input),
        Command::Consistency(a) => ("consistency", &a.input),
        Command::Check(a) => ("check", &a.input),
        Command::Rank(a) => ("rank", &a.input),
        Command::Baseline(a) => ("baseline", &a.input),
        Command::Complete(a) => ("complete", &a.input),
    };
    let file = load_problem(path, opts)?;
    let matrix = file.to_matrix()?;
    let labels = file.alternatives.clone();

    let uses_variant = matches!(cli.command, Command::Check(_) | Command::Rank(_));
    let method = Method {
        variant: uses_variant.then(|| opts.variant.into()),
        system: None,
        singular_tol: opts.tol_singular,
        strict: opts.strict,
        seed: opts.seed,
        pivot_floor: None,
        elapsed_us: None,
    };
    let mut report = RunReport::new(name, labels.clone(), method);
    let started = Instant::now();

    report.validation = Some(validation_section(&matrix));
    let clean = report.validation.as_ref().is_some_and(|v| v.clean);
    if !clean {
        report.fail(Failure::InvalidMatrix);
        for v in &report.validation.as_ref().unwrap().violations {
            let _ = writeln!(err, "invalid: {v}");
        }
    } else {
        match &cli.command {
            Command::Validate(_) => {}
            Command::Consistency(_) => consistency(&matrix, &mut report, err),
            Command::Check(_) => check(&file, opts, &mut report)?,
            Command::Rank(_) => rank_command(&file, opts, &mut report, err)?,
            Command::Baseline(_) => baseline(&matrix, &mut report, err),
            Command::Complete(_) => complete(&matrix, &mut report, err),
        }
    }
    if opts.timings {
        report.method.elapsed_us = Some(started.elapsed().as_micros() as u64);
    }
    Ok(report)
}

fn load_problem(path: &Path, opts: &Options) -> Result<ProblemFile, Abort> {
    let format = match opts.input_format {
        Some(InputFormat::Json) => Format::Json,
        Some(InputFormat::Csv) => Format::Csv,
        None if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) => Format::Csv,
        None => Format::Json,
    };
    let mut file = ProblemFile::parse(&read_source(path)?, format)?;
    let has_ref_flags = !opts.refs.is_empty() || opts.ref_file.is_some();
    match format {
        Format::Json if has_ref_flags => {
            return Err(Abort::usage(
                "--ref and --ref-file apply to CSV input; JSON input carries its own \"reference\" map",
            ))
        }
        Format::Json => {}
        Format::Csv => {
            if let Some(ref_path) = &opts.ref_file {
                file.reference = parse_reference_csv(&read_source(ref_path)?)?;
            }
            file.reference.extend(opts.refs.iter().cloned());
            file.check()?;
        }
    }
    Ok(file)
}

fn read_source(path: &Path) -> Result<String, InputError> {
    let mut text = String::new();
    let result = if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut text)
    } else {
        std::fs::File::open(path).and_then(|mut f| f.read_to_string(&mut text))
    };
    result.map_err(|source| InputError::Io { path: path.display().to_string(), source })?;
    Ok(text)
}

fn validation_section(c: &PcMatrix) -> ValidationSection {
    let violations = c.validate().violations;
    let n = c.n();
    let missing_pairs = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .filter(|&(i, j)| !c.is_known(i, j) && !c.is_known(j, i))
        .count();
    ValidationSection {
        clean: violations.is_empty(),
        complete: c.is_complete(),
        irreducible: c.is_irreducible(),
        missing_pairs,
        violations,
    }
}

fn consistency(c: &PcMatrix, report: &mut RunReport, err: &mut dyn Write) {
    let result = if c.is_complete() { saaty_ci(c) } else { harker_ci(c) };
    match result {
        Ok(r) => report.consistency = Some(r),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            report.fail(Failure::from_consistency(&e, c.labels()));
        }
    }
}

fn check(file: &ProblemFile, opts: &Options, report: &mut RunReport) -> Result<(), Abort> {
    let problem = problem_for(file, opts, true, report)?;
    report.applicability = Some(check_applicability(&problem, opts.variant.into()));
    Ok(())
}

fn rank_command(
    file: &ProblemFile,
    opts: &Options,
    report: &mut RunReport,
    err: &mut dyn Write,
) -> Result<(), Abort> {
    let problem = problem_for(file, opts, false, report)?;
    let labels = &file.alternatives;
    let options = RankOptions { singular_tol: opts.tol_singular, strict: opts.strict };
    match rank(&problem, opts.variant.into(), &options) {
        Ok(outcome) => {
            let normalized = outcome.priorities.normalized();
            report.priorities = Some(
                labels
                    .iter()
                    .enumerate()
                    .map(|(i, name)| Priority {
                        name: name.clone(),
                        weight: outcome.priorities.weights[i],
                        normalized: normalized[i],
                        computed: outcome.priorities.computed[i],
                    })
                    .collect(),
            );
            report.method.system = Some(outcome.system);
            report.method.pivot_floor = Some(outcome.pivot_floor);
            report.applicability = Some(outcome.report);
            for w in outcome.warnings {
                let warning = match w {
                    RankWarning::NonpositiveSolution { indices } => Warning::NonpositiveSolution {
                        alternatives: indices.iter().map(|&i| labels[i].clone()).collect(),
                    },
                    RankWarning::ReferenceInconsistent { row, col, given, implied } => {
                        Warning::ReferenceInconsistent {
                            row: labels[row].clone(),
                            col: labels[col].clone(),
                            given,
                            implied,
                        }
                    }
                };
                let _ = writeln!(err, "warning: {}", text::describe_warning(&warning));
                report.warnings.push(warning);
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if let HreError::SingularSystem { variant, report: applicability, .. } = &e {
                report.method.system = Some(*variant);
                report.applicability = Some((**applicability).clone());
            }
            if let HreError::SingularSystem { pivot_floor, .. } = &e {
                report.method.pivot_floor = Some(*pivot_floor);
            }
            report.fail(Failure::from_hre(&e, labels));
        }
    }
    Ok(())
}

/// Builds the problem, recording the unknown set in the report.
fn problem_for(
    file: &ProblemFile,
    opts: &Options,
    placeholder_weights: bool,
    report: &mut RunReport,
) -> Result<hre_core::HreProblem, Abort> {
    match file.to_problem(opts.unknowns.as_deref(), placeholder_weights) {
        Ok(p) => {
            report.unknowns = Some(p.unknowns().iter().map(|&i| file.alternatives[i].clone()).collect());
            Ok(p)
        }
        Err(ProblemError::Input(e)) => Err(e.into()),
        // validation ran before this point
        Err(ProblemError::Invalid(r)) => Err(Abort { code: EXIT_INVALID, message: r.to_string() }),
    }
}

fn baseline(c: &PcMatrix, report: &mut RunReport, err: &mut dyn Write) {
    if !c.is_irreducible() {
        let _ = writeln!(err, "error: comparison graph is not strongly connected");
        report.fail(Failure::NotIrreducible);
        return;
    }
    type Method = fn(&PcMatrix) -> Result<hre_core::PriorityVector, hre_core::baselines::BaselineError>;
    let methods: [(&'static str, Method, bool); 4] = [
        ("evm", evm, true),
        ("gmm", gmm, true),
        ("harker_evm", harker_evm, false),
        ("incomplete_gmm", incomplete_gmm, false),
    ];
    let mut entries = Vec::new();
    for (name, method, needs_complete) in methods {
        if needs_complete && !c.is_complete() {
            entries.push(Baseline { method: name, weights: None, skipped: Some("requires a complete matrix".into()) });
            continue;
        }
        match method(c) {
            Ok(v) => entries.push(Baseline { method: name, weights: Some(v.weights), skipped: None }),
            Err(e) => {
                let _ = writeln!(err, "error: {name}: {e}");
                report.fail(Failure::from_baseline(&e));
                return;
            }
        }
    }
    report.baselines = Some(entries);
}

fn complete(c: &PcMatrix, report: &mut RunReport, err: &mut dyn Write) {
    match consistent_completion(c) {
        Ok(full) => {
            report.completion = Some(
                full.rows()
                    .into_iter()
                    .map(|r| r.into_iter().map(|v| v.expect("completion fills every cell")).collect())
                    .collect(),
            )
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            report.fail(Failure::from_consistency(&e, c.labels()));
        }
    }
}
