use std::fs::File;

use bellissard::analysis::{
    self, check_conjecture, check_prop1, check_splitting, check_theorem, limit_uniformity,
    proposition_decay, scan_conjecture, scan_grid, AnalysisOptions, BoundsReport,
    ConvergenceReport, LambdaRepr, ScanOptions, CONJECTURE_INEQUALITIES,
};
use bellissard::operators::{mode_frequencies, Gap, IdsSample, ModeFrequency};
use bellissard::sequence::DEFAULT_EXACT_CAP;
use bellissard::{
    build_almost_mathieu, build_bellissard, build_dyson, eigenvalues, generate, parse_decimal,
    spectrum_report, verify_recurrences, Backend, ChainBoundary, GenerateOptions, JacobiMatrix,
    LambdaParam, RSequence,
};
use serde::Serialize;

use crate::args::{BoundaryArg, Cli, Command, Common, SpectrumArgs};
use crate::chain::read_chain;
use crate::emit::{float, Emission, Table};
use crate::{Failure, Outcome};

pub const EXACT_CAP_ENV: &str = "BELLISSARD_EXACT_CAP";
const DEFAULT_IDENTITY_TOL: f64 = 1e-10;
const DEFAULT_STABILITY_TOL: f64 = 1e-9;

pub fn execute(cli: &Cli) -> Outcome<Emission> {
    let c = &cli.common;
    match &cli.command {
        Command::Gen => gen(c),
        Command::Verify => bounds(c, |seq, opts| check_theorem(seq, opts)),
        Command::Conjecture => bounds(c, |seq, opts| check_conjecture(seq, opts)),
        Command::Prop1 => bounds(c, |seq, opts| check_prop1(seq, opts)),
        Command::Splitting { r, k_max } => {
            let block = 1usize
                .checked_shl(*r)
                .filter(|b| *b <= c.n + 1)
                .ok_or_else(|| Failure(format!("2^r exceeds N + 1 = {}", c.n + 1)))?;
            let k_max = k_max.unwrap_or((c.n + 1 - block) / block);
            bounds(c, |seq, opts| check_splitting(seq, *r, k_max, opts))
        }
        Command::Identities => identities(c),
        Command::Scan {
            lo,
            hi,
            step,
            budget,
        } => scan(c, lo, hi, step, *budget),
        Command::Decay { p, k_max } => decay(c, *p, *k_max),
        Command::Limits { p, s, k_max } => limits(c, p, s, *k_max),
        Command::Spectrum { spec, matrix_out } => {
            let seq = sequence(c, c.n)?;
            let m = build_bellissard(&seq, c.n)?;
            if let Some(path) = matrix_out {
                let file = File::create(path).map_err(Failure::io)?;
                matrix_table(&m).write_csv(file)?;
            }
            spectrum(c, &m, spec, Some(seq.lambda().into()), false)
        }
        Command::Dyson {
            chain,
            boundary,
            spec,
        } => {
            let boundary = match boundary {
                BoundaryArg::Free => ChainBoundary::Free,
                BoundaryArg::Fixed => ChainBoundary::Fixed,
            };
            let file =
                File::open(chain).map_err(|e| Failure(format!("{}: {e}", chain.display())))?;
            let m = build_dyson(&read_chain(file, boundary)?)?;
            spectrum(c, &m, spec, None, true)
        }
        Command::Mathieu {
            coupling,
            alpha,
            theta,
            spec,
        } => {
            let m = build_almost_mathieu(*coupling, *alpha, *theta, c.n)?;
            spectrum(c, &m, spec, None, false)
        }
    }
}

fn exact_cap() -> Outcome<usize> {
    match std::env::var(EXACT_CAP_ENV) {
        Ok(text) => text.trim().parse().map_err(|_| {
            Failure(format!(
                "{EXACT_CAP_ENV}={text:?} is not a nonnegative integer"
            ))
        }),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_EXACT_CAP),
        Err(e) => Err(Failure(format!("{EXACT_CAP_ENV}: {e}"))),
    }
}

fn lambda(c: &Common) -> Outcome<LambdaParam> {
    let text = c
        .lambda
        .as_deref()
        .ok_or_else(|| Failure("--lambda is required for this subcommand".into()))?;
    Ok(LambdaParam::parse(text, c.backend.into())?)
}

fn sequence(c: &Common, n_max: usize) -> Outcome<RSequence> {
    let opts = GenerateOptions {
        exact_cap: exact_cap()?,
        ..GenerateOptions::default()
    }
    .unproven(c.unproven_regime);
    Ok(generate(&lambda(c)?, n_max, &opts)?)
}

fn analysis_opts(c: &Common) -> AnalysisOptions {
    AnalysisOptions {
        tol: c.tol.unwrap_or(analysis::DEFAULT_MARGIN_TOL),
        allow_unproven: c.unproven_regime,
    }
}

fn scalar_cell(v: &bellissard::Scalar) -> String {
    v.to_string()
}

#[derive(Serialize)]
struct GenRow {
    n: usize,
    decimal: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact: Option<String>,
    residue_class: usize,
}

#[derive(Serialize)]
struct GenReport {
    lambda: LambdaRepr,
    backend: Backend,
    #[serde(rename = "N")]
    n: usize,
    values: Vec<GenRow>,
}

fn gen(c: &Common) -> Outcome<Emission> {
    let seq = sequence(c, c.n)?;
    let mut table = Table::new(&["n", "R_n_decimal", "R_n_exact", "residue_class"]);
    let mut values = Vec::with_capacity(seq.len());
    for n in 0..seq.len() {
        let v = seq.get(n).expect("n < len");
        let row = GenRow {
            n,
            decimal: v.decimal_string(),
            exact: v.exact_string(),
            residue_class: n % 4,
        };
        table.push(vec![
            n.to_string(),
            row.decimal.clone(),
            row.exact.clone().unwrap_or_default(),
            row.residue_class.to_string(),
        ]);
        values.push(row);
    }
    let report = GenReport {
        lambda: seq.lambda().into(),
        backend: seq.backend(),
        n: c.n,
        values,
    };
    Emission::new(&report, table, false)
}

fn bounds<F>(c: &Common, check: F) -> Outcome<Emission>
where
    F: FnOnce(&RSequence, &AnalysisOptions) -> bellissard::Result<BoundsReport>,
{
    let seq = sequence(c, c.n)?;
    let report = check(&seq, &analysis_opts(c))?;
    let mut table = Table::new(&["inequality", "n", "k", "index", "lhs", "rhs", "margin"]);
    for v in &report.violations {
        table.push(vec![
            v.inequality.clone(),
            v.n.to_string(),
            v.k.map(|k| k.to_string()).unwrap_or_default(),
            v.index.to_string(),
            scalar_cell(&v.lhs),
            scalar_cell(&v.rhs),
            scalar_cell(&v.margin),
        ]);
    }
    Emission::new(&report, table, !report.passed())
}

fn identities(c: &Common) -> Outcome<Emission> {
    let seq = sequence(c, c.n)?;
    let report = verify_recurrences(&seq, c.tol.unwrap_or(DEFAULT_IDENTITY_TOL))?;
    let mut table = Table::new(&[
        "family",
        "checked",
        "max_residual",
        "exact_zero",
        "first_failing",
    ]);
    for f in &report.families {
        let family = crate::emit::to_json(&f.family)?;
        table.push(vec![
            family.as_str().unwrap_or_default().to_string(),
            f.checked.to_string(),
            float(f.max_residual),
            f.exact_zero.to_string(),
            f.first_failing.map(|n| n.to_string()).unwrap_or_default(),
        ]);
    }
    Emission::new(&report, table, report.first_failing().is_some())
}

fn scan(c: &Common, lo: &str, hi: &str, step: &str, budget: Option<u64>) -> Outcome<Emission> {
    let grid = scan_grid(
        &parse_decimal(lo)?,
        &parse_decimal(hi)?,
        &parse_decimal(step)?,
    )?;
    let defaults = ScanOptions::default();
    let opts = ScanOptions {
        n_max: c.n,
        backend: c.backend.into(),
        tol: c.tol.unwrap_or(defaults.tol),
        budget: budget.unwrap_or(defaults.budget),
        exact_cap: exact_cap()?,
    };
    let report = scan_conjecture(&grid, &opts)?;
    let mut header = vec!["lambda", "lambda_exact"];
    header.extend(CONJECTURE_INEQUALITIES);
    header.push("violated");
    let mut table = Table::new(&header);
    for row in &report.rows {
        let mut cells = vec![row.lambda.clone(), row.lambda_exact.clone()];
        for id in CONJECTURE_INEQUALITIES {
            let first = row.first_violation.get(id).copied().flatten();
            cells.push(first.map(|n| n.to_string()).unwrap_or_default());
        }
        cells.push(row.violated.to_string());
        table.push(cells);
    }
    Emission::new(&report, table, report.any_violation())
}

/// Largest `k` with `p 2^k + s <= n`.
fn default_k_max(n: usize, p: usize, s: usize) -> Outcome<usize> {
    if p == 0 || p + s > n {
        return Err(Failure(format!("p + s = {} exceeds N = {n}", p + s)));
    }
    let mut k = 0;
    while (p << (k + 1)) + s <= n {
        k += 1;
    }
    Ok(k)
}

fn convergence_rows(table: &mut Table, rep: &ConvergenceReport, with_pair: bool) {
    for sample in &rep.samples {
        let mut row = Vec::new();
        if with_pair {
            row.push(rep.p.to_string());
            row.push(rep.s.to_string());
        }
        row.extend([
            sample.k.to_string(),
            sample.index.to_string(),
            scalar_cell(&sample.value),
            float(sample.deviation),
        ]);
        table.push(row);
    }
}

fn decay(c: &Common, p: usize, k_max: Option<usize>) -> Outcome<Emission> {
    let seq = sequence(c, c.n)?;
    let k_max = match k_max {
        Some(k) => k,
        None => default_k_max(c.n, p, 0)?,
    };
    let rep = proposition_decay(&seq, p, k_max)?;
    let mut table = Table::new(&["k", "index", "value", "deviation"]);
    convergence_rows(&mut table, &rep, false);
    Emission::new(&rep, table, false)
}

fn limits(c: &Common, ps: &[usize], ss: &[usize], k_max: Option<usize>) -> Outcome<Emission> {
    let seq = sequence(c, c.n)?;
    let pairs: Vec<(usize, usize)> = ps
        .iter()
        .flat_map(|&p| ss.iter().map(move |&s| (p, s)))
        .collect();
    let k_max = match k_max {
        Some(k) => k,
        None => pairs
            .iter()
            .map(|&(p, s)| default_k_max(c.n, p, s))
            .collect::<Outcome<Vec<_>>>()?
            .into_iter()
            .min()
            .unwrap_or(0),
    };
    let table_report = limit_uniformity(&seq, &pairs, k_max)?;
    let mut table = Table::new(&["p", "s", "k", "index", "value", "deviation"]);
    for rep in &table_report.reports {
        convergence_rows(&mut table, rep, true);
    }
    Emission::new(&table_report, table, false)
}

#[derive(Serialize)]
struct SpectrumJson<'a> {
    provenance: &'static str,
    #[serde(rename = "N")]
    n: usize,
    boundary: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda: Option<LambdaRepr>,
    eigenvalues: &'a [f64],
    gaps: &'a [Gap],
    ids: &'a [IdsSample],
    #[serde(skip_serializing_if = "Option::is_none")]
    mode_frequencies: Option<&'a [ModeFrequency]>,
}

fn spectrum(
    c: &Common,
    m: &JacobiMatrix,
    spec: &SpectrumArgs,
    lambda: Option<LambdaRepr>,
    modes: bool,
) -> Outcome<Emission> {
    let eigs = eigenvalues(m, spec.eig_tol)?;
    let mut report = spectrum_report(&eigs, spec.gap_threshold, spec.ids_resolution)?;
    if modes {
        report.mode_frequencies = Some(mode_frequencies(
            m,
            &eigs,
            c.tol.unwrap_or(DEFAULT_STABILITY_TOL),
        )?);
    }
    let json = SpectrumJson {
        provenance: m.provenance().name(),
        n: m.size(),
        boundary: m.boundary(),
        lambda,
        eigenvalues: &report.eigenvalues,
        gaps: &report.gaps,
        ids: &report.ids,
        mode_frequencies: report.mode_frequencies.as_deref(),
    };
    let mut table = match &report.mode_frequencies {
        Some(_) => Table::new(&["k", "eigenvalue", "frequency", "unstable"]),
        None => Table::new(&["k", "eigenvalue"]),
    };
    for (i, e) in report.eigenvalues.iter().enumerate() {
        let mut row = vec![(i + 1).to_string(), float(*e)];
        if let Some(modes) = &report.mode_frequencies {
            row.push(modes[i].frequency.map(float).unwrap_or_default());
            row.push(modes[i].unstable.to_string());
        }
        table.push(row);
    }
    Emission::new(&json, table, false)
}

fn matrix_table(m: &JacobiMatrix) -> Table {
    let mut table = Table::new(&["j", "a_j", "b_j"]);
    for (j, a) in m.diagonal().iter().enumerate() {
        let b = m
            .off_diagonal()
            .get(j)
            .map(|b| float(*b))
            .unwrap_or_default();
        table.push(vec![(j + 1).to_string(), float(*a), b]);
    }
    table
}
