//! Human-readable rendering; numbers are rounded to 6 significant digits.

use std::fmt::Write as _;

use crate::report::{Failure, RunReport, Status, Warning};

pub(crate) fn sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let rounded: f64 = format!("{x:.5e}").parse().expect("formatted float parses");
    let magnitude = rounded.abs().log10().floor();
    if (-5.0..15.0).contains(&magnitude) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

pub(crate) fn describe_warning(w: &Warning) -> String {
    match w {
        Warning::NonpositiveSolution { alternatives } => {
            format!("non-positive weight computed for {}", alternatives.join(", "))
        }
        Warning::ReferenceInconsistent { row, col, given, implied } => format!(
            "c({row},{col}) = {} but the reference weights imply {}",
            sig6(*given),
            sig6(*implied)
        ),
    }
}

fn describe_failure(f: &Failure) -> String {
    match f {
        Failure::InvalidMatrix => "invalid matrix".into(),
        Failure::TooSmall { n } => format!("needs at least 2 alternatives, got {n}"),
        Failure::SingularSystem { pivot_floor } => {
            format!("SingularSystem (smallest scaled pivot {})", sig6(*pivot_floor))
        }
        Failure::NonpositiveSolution { alternatives, .. } => {
            format!("NonpositiveSolution for {}", alternatives.join(", "))
        }
        Failure::NotConsistent { row, col, expected, found } => format!(
            "NotConsistent: c({row},{col}) = {} but {} is implied",
            sig6(*found),
            sig6(*expected)
        ),
        Failure::NotIrreducible => "NotIrreducible".into(),
        Failure::IsolatedAlternative { alternative } => {
            format!("NotIrreducible: {alternative} has no known comparisons")
        }
        Failure::NoConvergence { iterations } => format!("no convergence after {iterations} iterations"),
        Failure::Numerics => "numerical failure".into(),
    }
}

fn opt(x: Option<f64>) -> String {
    x.map_or_else(|| "-".into(), sig6)
}

pub(crate) fn render(r: &RunReport) -> String {
    let mut s = String::new();
    let status = match r.status {
        Status::Ok => "ok",
        Status::Failed => "failed",
    };
    let _ = writeln!(s, "{}: {status} (exit {})", r.command, r.exit_code);
    if let Some(v) = r.method.variant {
        let _ = write!(s, "variant: {v:?}");
        if let Some(sys) = r.method.system {
            let _ = write!(s, " ({sys:?})");
        }
        s.push('\n');
    }
    if let Some(u) = &r.unknowns {
        let _ = writeln!(s, "unknowns: {}", u.join(", "));
    }
    if let Some(v) = &r.validation {
        let _ = writeln!(
            s,
            "matrix: {} alternatives, {}, {}, {} missing pairs",
            r.alternatives.len(),
            if v.complete { "complete" } else { "incomplete" },
            if v.irreducible { "irreducible" } else { "reducible" },
            v.missing_pairs
        );
        for violation in &v.violations {
            let _ = writeln!(s, "  invalid: {violation}");
        }
    }
    if let Some(c) = &r.consistency {
        let _ = writeln!(s, "{:?} index: {} (radius {})", c.kind, sig6(c.index_value), sig6(c.radius_used));
    }
    if let Some(a) = &r.applicability {
        let _ = writeln!(
            s,
            "applicability: {:?} k={} n={} ci={} threshold={} -> {:?}",
            a.theorem,
            a.k,
            a.n,
            opt(a.ci_value),
            opt(a.threshold),
            a.verdict
        );
        if let (Some(hi), Some(lo)) = (a.s_max, a.s_min) {
            let _ = writeln!(s, "  s_max={hi} s_min={lo}");
        }
    }
    if let Some(ps) = &r.priorities {
        let width = ps.iter().map(|p| p.name.len()).max().unwrap_or(0);
        let _ = writeln!(s, "weights:");
        for p in ps {
            let _ = writeln!(
                s,
                "  {:width$}  {:>12}  {:>12}  {}",
                p.name,
                sig6(p.weight),
                sig6(p.normalized),
                if p.computed { "computed" } else { "reference" }
            );
        }
    }
    if let Some(bs) = &r.baselines {
        for b in bs {
            match (&b.weights, &b.skipped) {
                (Some(w), _) => {
                    let cells: Vec<String> = w.iter().map(|&x| sig6(x)).collect();
                    let _ = writeln!(s, "{}: {}", b.method, cells.join(" "));
                }
                (None, Some(reason)) => {
                    let _ = writeln!(s, "{}: skipped ({reason})", b.method);
                }
                (None, None) => {}
            }
        }
    }
    if let Some(rows) = &r.completion {
        let _ = writeln!(s, "completion:");
        for row in rows {
            let cells: Vec<String> = row.iter().map(|&x| sig6(x)).collect();
            let _ = writeln!(s, "  {}", cells.join(" "));
        }
    }
    for w in &r.warnings {
        let _ = writeln!(s, "warning: {}", describe_warning(w));
    }
    if let Some(f) = &r.failure {
        let _ = writeln!(s, "failure: {}", describe_failure(f));
    }
    s
}
