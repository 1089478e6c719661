use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;

use super::{check_conjecture, AnalysisOptions, DEFAULT_MARGIN_TOL};
use crate::error::{Error, Result};
use crate::numerics::{format_ratio, ratio_to_f64, Backend};
use crate::sequence::{generate, GenerateOptions, LambdaParam, DEFAULT_EXACT_CAP};

pub const CONJECTURE_INEQUALITIES: [&str; 8] = [
    "c1-lower", "c1-upper", "c2-lower", "c2-upper", "c3-lower", "c3-upper", "c4-lower", "c4-upper",
];

/// Hard ceiling on the number of grid points, independent of the budget.
const MAX_GRID_POINTS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanOptions {
    pub n_max: usize,
    pub backend: Backend,
    pub tol: f64,
    /// Upper bound on `points × N × backend weight` (float weight 1,
    /// interval 64, exact 256).
    pub budget: u64,
    pub exact_cap: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            n_max: 10_000,
            backend: Backend::Float,
            tol: DEFAULT_MARGIN_TOL,
            budget: 2_000_000_000,
            exact_cap: DEFAULT_EXACT_CAP,
        }
    }
}

/// One grid point. `first_violation` maps each conjecture inequality to the
/// smallest violating `n` (the value checked is `R_{4n + class}`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub lambda: String,
    pub lambda_exact: String,
    pub first_violation: BTreeMap<String, Option<usize>>,
    pub violated: bool,
}

impl ScanRow {
    pub fn c2_violated(&self) -> bool {
        ["c2-lower", "c2-upper"]
            .iter()
            .any(|id| self.first_violation.get(*id).copied().flatten().is_some())
    }
}

/// The λ rows where the `[R_6, R_2]` window fails.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct C2Region {
    pub lo: String,
    pub hi: String,
    pub rows: usize,
    /// The violating rows are consecutive in grid order.
    pub contiguous: bool,
    /// The first grid point is among the violating rows.
    pub starts_at_grid_start: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub backend: Backend,
    pub n_max: usize,
    pub rows: Vec<ScanRow>,
    pub c2_region: Option<C2Region>,
}

impl ScanReport {
    pub fn any_violation(&self) -> bool {
        self.rows.iter().any(|r| r.violated)
    }
}

/// `lo, lo + step, ...` up to and including `hi`, in exact arithmetic.
pub fn scan_grid(
    lo: &BigRational,
    hi: &BigRational,
    step: &BigRational,
) -> Result<Vec<BigRational>> {
    let two = BigRational::from_integer(2.into());
    if lo <= &two {
        return Err(Error::Usage("scan needs lambda_lo > 2".into()));
    }
    if lo > hi {
        return Err(Error::Usage("scan needs lambda_lo <= lambda_hi".into()));
    }
    if !step.is_positive() {
        return Err(Error::Usage("scan step must be positive".into()));
    }
    let count = ((hi - lo) / step).floor();
    let count = ratio_to_f64(&count).unwrap_or(f64::INFINITY);
    if count >= MAX_GRID_POINTS as f64 {
        return Err(Error::Budget(format!(
            "grid has more than {MAX_GRID_POINTS} points; widen the step"
        )));
    }
    let mut grid = Vec::with_capacity(count as usize + 1);
    let mut x = lo.clone();
    while &x <= hi {
        grid.push(x.clone());
        x += step;
    }
    Ok(grid)
}

/// Runs the conjecture check at every λ of `grid` (in parallel) and records
/// the first violation per inequality. Rows follow grid order.
pub fn scan_conjecture(grid: &[BigRational], opts: &ScanOptions) -> Result<ScanReport> {
    let weight: u64 = match opts.backend {
        Backend::Float => 1,
        Backend::Interval => 64,
        Backend::Exact => 256,
    };
    let work = (grid.len() as u64)
        .saturating_mul(opts.n_max as u64 + 1)
        .saturating_mul(weight);
    if work > opts.budget {
        return Err(Error::Budget(format!(
            "{} grid points × N = {} on the {} backend exceeds the work budget {}; \
             reduce the grid, N, or switch to the float backend",
            grid.len(),
            opts.n_max,
            opts.backend,
            opts.budget
        )));
    }
    let gen_opts = GenerateOptions {
        exact_cap: opts.exact_cap,
        ..GenerateOptions::default()
    };
    let check_opts = AnalysisOptions {
        tol: opts.tol,
        allow_unproven: false,
    };
    let rows = grid
        .par_iter()
        .map(|lam| -> Result<ScanRow> {
            let param = LambdaParam::from_ratio(lam, opts.backend)?;
            let seq = generate(&param, opts.n_max, &gen_opts)?;
            let report = check_conjecture(&seq, &check_opts)?;
            let mut first_violation: BTreeMap<String, Option<usize>> = CONJECTURE_INEQUALITIES
                .iter()
                .map(|id| (id.to_string(), None))
                .collect();
            for v in &report.violations {
                let slot = first_violation.entry(v.inequality.clone()).or_default();
                if slot.map_or(true, |n| v.n < n) {
                    *slot = Some(v.n);
                }
            }
            Ok(ScanRow {
                lambda: format!("{:?}", ratio_to_f64(lam)?),
                lambda_exact: format_ratio(lam),
                first_violation,
                violated: !report.violations.is_empty(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let c2_region = c2_region(&rows);
    Ok(ScanReport {
        backend: opts.backend,
        n_max: opts.n_max,
        rows,
        c2_region,
    })
}

fn c2_region(rows: &[ScanRow]) -> Option<C2Region> {
    let hits: Vec<usize> = rows
        .iter()
        .enumerate()
        .filter(|(_, r)| r.c2_violated())
        .map(|(i, _)| i)
        .collect();
    let (&first, &last) = (hits.first()?, hits.last()?);
    Some(C2Region {
        lo: rows[first].lambda.clone(),
        hi: rows[last].lambda.clone(),
        rows: hits.len(),
        contiguous: last - first + 1 == hits.len(),
        starts_at_grid_start: first == 0,
    })
}
