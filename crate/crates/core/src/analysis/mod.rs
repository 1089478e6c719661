//! Bound certification and limit diagnostics for an [`RSequence`].
//!
//! Every check is a pure function of the sequence. Margins are computed in
//! the sequence's own backend, so exact runs certify by true rational
//! comparison while float runs use an absolute margin tolerance.

mod bounds;
mod propositions;
mod scan;

use serde::Serialize;

pub use bounds::{
    check_conjecture, check_prop1, check_splitting, check_theorem, theorem_bounds, TheoremBounds,
};
pub use propositions::{
    limit_uniformity, proposition_decay, proposition_limit, ConvergenceReport, ConvergenceSample,
    UniformityRow, UniformityTable,
};
pub use scan::{
    scan_conjecture, scan_grid, C2Region, ScanOptions, ScanReport, ScanRow, CONJECTURE_INEQUALITIES,
};

use crate::error::{Error, Result};
use crate::numerics::{Backend, Real, Scalar, Verdict};
use crate::sequence::{LambdaParam, RSequence};

/// Default absolute margin tolerance for float-backend bound checks.
pub const DEFAULT_MARGIN_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalysisOptions {
    /// Absolute margin tolerance (float backend only).
    pub tol: f64,
    /// Permit λ <= 2; reports then carry a regime warning.
    pub allow_unproven: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            tol: DEFAULT_MARGIN_TOL,
            allow_unproven: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportKind {
    Theorem,
    Conjecture,
    Splitting,
    Prop1,
}

/// A failed inequality. `margin` is `lhs - rhs` for lower bounds and
/// `rhs - lhs` for upper bounds: negative, or zero for a strict bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ViolationRecord {
    /// The inequality's own parameter (e.g. `n` in `R_{4n+2}`).
    pub n: usize,
    /// Multiplier `k` for the splitting check.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    /// Subscript of the checked value `R_index`.
    pub index: usize,
    pub inequality: String,
    pub lhs: Scalar,
    pub rhs: Scalar,
    pub margin: Scalar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AttainmentKind {
    /// A non-strict bound is met with equality.
    Sharp,
    /// A base value sits on an endpoint its strict inequality excludes;
    /// reported for information, not as a violation.
    Boundary,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Attainment {
    pub n: usize,
    pub index: usize,
    pub inequality: String,
    pub kind: AttainmentKind,
}

/// An interval-backend comparison that could not be decided.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Undecided {
    pub n: usize,
    pub index: usize,
    pub inequality: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LambdaRepr {
    pub decimal: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
}

impl From<&LambdaParam> for LambdaRepr {
    fn from(l: &LambdaParam) -> Self {
        LambdaRepr {
            decimal: l.value().decimal_string(),
            exact: l.value().exact_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    pub kind: ReportKind,
    pub lambda: LambdaRepr,
    pub backend: Backend,
    /// Number of sequence values (or value pairs) examined.
    pub checked_count: usize,
    pub violations: Vec<ViolationRecord>,
    pub attainments: Vec<Attainment>,
    pub undecided: Vec<Undecided>,
    pub regime_warning: bool,
    pub tolerance: f64,
    pub warnings: Vec<String>,
}

impl BoundsReport {
    fn new(kind: ReportKind, seq: &RSequence, opts: &AnalysisOptions) -> Self {
        let regime_warning = !seq.lambda().regime_ok();
        let mut warnings = Vec::new();
        if regime_warning {
            warnings.push("lambda <= 2: outside the proven regime".to_string());
        }
        BoundsReport {
            kind,
            lambda: seq.lambda().into(),
            backend: seq.backend(),
            checked_count: 0,
            violations: Vec::new(),
            attainments: Vec::new(),
            undecided: Vec::new(),
            regime_warning,
            tolerance: if seq.backend() == Backend::Float {
                opts.tol
            } else {
                0.0
            },
            warnings,
        }
    }

    fn finish(mut self) -> Self {
        if !self.undecided.is_empty() {
            self.warnings.push(format!(
                "{} comparisons undecided at interval resolution",
                self.undecided.len()
            ));
        }
        self
    }

    /// No violations among the checked indices.
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations_of<'a>(
        &'a self,
        inequality: &'a str,
    ) -> impl Iterator<Item = &'a ViolationRecord> + 'a {
        self.violations
            .iter()
            .filter(move |v| v.inequality == inequality)
    }

    /// Distinct inequality identifiers with at least one violation, sorted.
    pub fn violated_inequalities(&self) -> Vec<String> {
        let mut ids: Vec<String> = self
            .violations
            .iter()
            .map(|v| v.inequality.clone())
            .collect();
        ids.sort();
        ids.dedup();
        ids
    }
}

fn check_regime(seq: &RSequence, opts: &AnalysisOptions) -> Result<()> {
    if !seq.lambda().regime_ok() && !opts.allow_unproven {
        return Err(Error::UnprovenRegime);
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Lower,
    Upper,
}

/// How a single inequality is evaluated.
#[derive(Debug, Clone, Copy)]
struct Bound<'a> {
    id: &'a str,
    side: Side,
    strict: bool,
}

impl<'a> Bound<'a> {
    const fn lower(id: &'a str, strict: bool) -> Self {
        Bound {
            id,
            side: Side::Lower,
            strict,
        }
    }

    const fn upper(id: &'a str, strict: bool) -> Self {
        Bound {
            id,
            side: Side::Upper,
            strict,
        }
    }
}

struct Checker<'r> {
    report: &'r mut BoundsReport,
    tol: f64,
    track_attainment: bool,
}

impl Checker<'_> {
    /// Checks `value` against `limit`. When `relax` is set, a strict bound is
    /// checked non-strictly and equality is logged as a boundary attainment.
    fn check<T: Real>(
        &mut self,
        n: usize,
        k: Option<usize>,
        index: usize,
        value: &T,
        limit: &T,
        bound: Bound<'_>,
        relax: bool,
    ) {
        let margin = match bound.side {
            Side::Lower => value.sub(limit),
            Side::Upper => limit.sub(value),
        };
        let strict = bound.strict && !relax;
        match margin.check_nonnegative(strict, self.tol) {
            Verdict::Holds => {
                if self.track_attainment && margin.touches_zero(self.tol) {
                    let kind = if bound.strict {
                        AttainmentKind::Boundary
                    } else {
                        AttainmentKind::Sharp
                    };
                    self.report.attainments.push(Attainment {
                        n,
                        index,
                        inequality: bound.id.to_string(),
                        kind,
                    });
                }
            }
            Verdict::Fails => self.report.violations.push(ViolationRecord {
                n,
                k,
                index,
                inequality: bound.id.to_string(),
                lhs: value.clone().into_scalar(),
                rhs: limit.clone().into_scalar(),
                margin: margin.into_scalar(),
            }),
            Verdict::Inconclusive => self.report.undecided.push(Undecided {
                n,
                index,
                inequality: bound.id.to_string(),
            }),
        }
    }
}
