use serde::Serialize;

use super::{ApplicabilityReport, Theorem, Variant, Verdict};
use crate::consistency::harker_index_unchecked;
use crate::pcm::{HreProblem, MissingScope};

/// A consistency index within this distance (relative to `max(1, |t|)`) of a
/// threshold `t` counts as attaining it. The theorems need strict
/// inequality, and an index computed from a numerically exact boundary case
/// lands a few ulps on either side.
pub const ATTAINMENT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdBound {
    pub theorem: Theorem,
    pub threshold: f64,
    /// Whether the hypotheses of this bound hold for the problem.
    pub applies: bool,
}

/// Evaluates the sufficient conditions for a unique solution of the HRE
/// system of `variant`, choosing the complete or incomplete theorem from
/// the Missing pattern.
///
/// Arithmetic, complete: `CI(C_k) < (n-k)/(k-1)`.
///
/// Arithmetic, incomplete: `CI(C_k) < (n-k-s_max+s_min)/(k-1)` where the
/// index is Harker's over the unknown block `C_k`, `s_min` counts Missing
/// cells inside `C_k` and `s_max` counts Missing cells over the full rows
/// of the unknowns. The full-row `s_max` is what the system matrix divides
/// by; bounding it with block-only counts can certify singular systems.
///
/// Geometric: always invertible. `k = 1`: always invertible.
pub fn check_applicability(p: &HreProblem, variant: Variant) -> ApplicabilityReport {
    let n = p.n();
    let k = p.k();
    let complete = p.matrix().is_complete();
    let base = |theorem, note: &str| ApplicabilityReport {
        theorem,
        k,
        n,
        ci_value: None,
        threshold: None,
        slack: None,
        s_max: None,
        s_min: None,
        verdict: Verdict::Guaranteed,
        bounds: Vec::new(),
        note: note.to_string(),
    };

    if variant == Variant::Geometric {
        return base(
            Theorem::GeometricAlways,
            "the geometric system matrix is strictly diagonally dominant",
        );
    }
    let theorem = if complete { Theorem::CompleteArithmetic } else { Theorem::IncompleteArithmetic };
    if k == 1 {
        return base(theorem, "k = 1: the system matrix is the scalar 1");
    }

    let block = p.unknown_block();
    let ci = match harker_index_unchecked(&block) {
        Ok(report) => report.index_value,
        Err(e) => {
            let mut report = base(theorem, &format!("consistency index unavailable: {e}"));
            report.verdict = Verdict::NotGuaranteed;
            return report;
        }
    };

    let (nf, kf) = (n as f64, k as f64);
    let mut report = base(theorem, "");
    report.ci_value = Some(ci);

    if complete {
        report.bounds.push(ThresholdBound {
            theorem,
            threshold: (nf - kf) / (kf - 1.0),
            applies: true,
        });
    } else {
        let s_min = p
            .matrix()
            .missing_counts(p.unknowns(), &MissingScope::Columns(p.unknowns().to_vec()))
            .s_min;
        let s_max = p.matrix().missing_counts(p.unknowns(), &MissingScope::AllColumns).s_max;
        report.s_max = Some(s_max);
        report.s_min = Some(s_min);
        let spread = (s_max - s_min) as f64;
        report.bounds = vec![
            ThresholdBound {
                theorem: Theorem::IncompleteArithmetic,
                threshold: (nf - kf - spread) / (kf - 1.0),
                applies: true,
            },
            ThresholdBound {
                theorem: Theorem::CorollaryEqualMissing,
                threshold: (nf - kf) / (kf - 1.0),
                applies: s_max == s_min,
            },
            ThresholdBound {
                theorem: Theorem::CorollaryHalfN,
                threshold: (nf - 2.0 * kf + 2.0) / (kf - 1.0),
                applies: 2 * k <= n + 1 && s_max - s_min + 2 <= k,
            },
        ];
    }

    // first bound wins ties
    let best = report
        .bounds
        .iter()
        .filter(|b| b.applies)
        .fold(None::<&ThresholdBound>, |acc, b| match acc {
            Some(a) if a.threshold >= b.threshold => Some(a),
            _ => Some(b),
        })
        .expect("the main theorem always applies")
        .clone();

    report.theorem = best.theorem;
    report.threshold = Some(best.threshold);
    report.slack = Some(best.threshold - ci);
    let margin = ATTAINMENT_TOL * best.threshold.abs().max(1.0);
    if ci < best.threshold - margin {
        report.verdict = Verdict::Guaranteed;
        report.note = "consistency index strictly below the threshold".into();
    } else {
        report.verdict = Verdict::NotGuaranteed;
        report.note = if (ci - best.threshold).abs() <= margin {
            "consistency index attains the threshold; the system may be singular".into()
        } else {
            "consistency index exceeds the threshold; invertibility is not certified".into()
        };
    }
    report
}
