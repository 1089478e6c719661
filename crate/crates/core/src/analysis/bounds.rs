use num_rational::BigRational;
use serde::Serialize;

use super::{check_regime, AnalysisOptions, Bound, BoundsReport, Checker, ReportKind};
use crate::error::{Error, Result};
use crate::numerics::{Real, Scalar};
use crate::sequence::{with_values, LambdaParam, RSequence};

/// Theorem bounds for one residue class of `n mod 4`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassBounds {
    pub residue: usize,
    pub inequality: &'static str,
    pub lower: Scalar,
    pub lower_strict: bool,
    pub upper: Scalar,
    pub upper_strict: bool,
}

/// `σ = 1/(λ-1)` and the four residue-class windows built from it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremBounds {
    pub sigma: Scalar,
    /// Indexed by residue `0..4`.
    pub classes: Vec<ClassBounds>,
}

// (identifier, lower strict, upper strict) per residue 0..4.
const THEOREM_SHAPE: [(&str, bool, bool); 4] = [
    ("p1", true, false), // 0 < R_{4n} <= σ
    ("p4", false, true), // λ-σ <= R_{4n+1} < λ
    ("p2", false, true), // 1-σ <= R_{4n+2} < 1
    ("p3", true, false), // λ-1 < R_{4n+3} <= λ-1+σ
];

const THEOREM_IDS: [(&str, &str); 4] = [
    ("p1-lower", "p1-upper"),
    ("p4-lower", "p4-upper"),
    ("p2-lower", "p2-upper"),
    ("p3-lower", "p3-upper"),
];

const CONJECTURE_IDS: [(&str, &str); 4] = [
    ("c1-lower", "c1-upper"),
    ("c4-lower", "c4-upper"),
    ("c2-lower", "c2-upper"),
    ("c3-lower", "c3-upper"),
];

fn theorem_windows<T: Real>(lam: &T) -> Result<(T, [(T, T); 4])> {
    let int = |v: i64| T::from_ratio(&BigRational::from_integer(v.into()));
    let zero = int(0)?;
    let one = int(1)?;
    let lam_minus_1 = lam.sub(&one);
    let sigma = one.div(&lam_minus_1)?;
    let windows = [
        (zero, sigma.clone()),
        (lam.sub(&sigma), lam.clone()),
        (one.sub(&sigma), one.clone()),
        (lam_minus_1.clone(), lam_minus_1.add(&sigma)),
    ];
    Ok((sigma, windows))
}

pub fn theorem_bounds(lambda: &LambdaParam) -> Result<TheoremBounds> {
    fn build<T: Real>(lam: &T) -> Result<TheoremBounds> {
        let (sigma, windows) = theorem_windows(lam)?;
        let classes = windows
            .into_iter()
            .enumerate()
            .map(|(residue, (lo, hi))| ClassBounds {
                residue,
                inequality: THEOREM_SHAPE[residue].0,
                lower: lo.into_scalar(),
                lower_strict: THEOREM_SHAPE[residue].1,
                upper: hi.into_scalar(),
                upper_strict: THEOREM_SHAPE[residue].2,
            })
            .collect();
        Ok(TheoremBounds {
            sigma: sigma.into_scalar(),
            classes,
        })
    }
    match lambda.value() {
        Scalar::Float(l) => build(l),
        Scalar::Exact(l) => build(l),
        Scalar::Interval(l) => build(l),
    }
}

/// Checks the four residue-class windows of the theorem.
///
/// Indices `4n..4n+3` with `n >= 1` are checked with their stated
/// strictness. The base block `n = 0` (`R_0 = 0`, `R_1 = λ`, `R_2 = 1`,
/// `R_3 = λ-1`) sits on excluded endpoints; it is checked non-strictly and
/// the endpoint hits are logged as boundary attainments.
pub fn check_theorem(seq: &RSequence, opts: &AnalysisOptions) -> Result<BoundsReport> {
    check_regime(seq, opts)?;
    if seq.len() < 4 {
        return Err(Error::Range("theorem check needs R_0..R_3".into()));
    }
    let mut report = BoundsReport::new(ReportKind::Theorem, seq, opts);
    with_values!(seq, |vals, lam| theorem_in(vals, &lam, opts, &mut report)?);
    Ok(report.finish())
}

fn theorem_in<T: Real>(
    r: &[T],
    lam: &T,
    opts: &AnalysisOptions,
    report: &mut BoundsReport,
) -> Result<()> {
    let (_, windows) = theorem_windows(lam)?;
    let mut checker = Checker {
        report,
        tol: opts.tol,
        track_attainment: true,
    };
    for (idx, value) in r.iter().enumerate() {
        let (n, class) = (idx / 4, idx % 4);
        let (_, lo_strict, hi_strict) = THEOREM_SHAPE[class];
        let (lo_id, hi_id) = THEOREM_IDS[class];
        let (lo, hi) = &windows[class];
        let relax = n == 0;
        checker.check(
            n,
            None,
            idx,
            value,
            lo,
            Bound::lower(lo_id, lo_strict),
            relax,
        );
        checker.check(
            n,
            None,
            idx,
            value,
            hi,
            Bound::upper(hi_id, hi_strict),
            relax,
        );
    }
    checker.report.checked_count = r.len();
    Ok(())
}

/// Checks the conjectured windows `[R_0, R_4]`, `[R_6, R_2]`, `[R_3, R_7]`,
/// `[R_5, R_1]` for the classes `4n`, `4n+2`, `4n+3`, `4n+1`.
pub fn check_conjecture(seq: &RSequence, opts: &AnalysisOptions) -> Result<BoundsReport> {
    check_regime(seq, opts)?;
    if seq.len() < 8 {
        return Err(Error::Range("conjecture check needs R_0..R_7".into()));
    }
    let mut report = BoundsReport::new(ReportKind::Conjecture, seq, opts);
    with_values!(seq, |vals, _lam| conjecture_in(vals, opts, &mut report));
    Ok(report.finish())
}

fn conjecture_in<T: Real>(r: &[T], opts: &AnalysisOptions, report: &mut BoundsReport) {
    // residue -> (lower index, upper index)
    let windows = [(0usize, 4usize), (5, 1), (6, 2), (3, 7)];
    let mut checker = Checker {
        report,
        tol: opts.tol,
        track_attainment: false,
    };
    for (idx, value) in r.iter().enumerate() {
        let (n, class) = (idx / 4, idx % 4);
        let (lo, hi) = windows[class];
        let (lo_id, hi_id) = CONJECTURE_IDS[class];
        checker.check(
            n,
            None,
            idx,
            value,
            &r[lo],
            Bound::lower(lo_id, false),
            false,
        );
        checker.check(
            n,
            None,
            idx,
            value,
            &r[hi],
            Bound::upper(hi_id, false),
            false,
        );
    }
    checker.report.checked_count = r.len();
}

/// Checks that `R_{k 2^r + n}` lies between `R_n` and `R_{2^r + n}` for every
/// `n < 2^r` and `k <= max_k`.
pub fn check_splitting(
    seq: &RSequence,
    level: u32,
    max_k: usize,
    opts: &AnalysisOptions,
) -> Result<BoundsReport> {
    check_regime(seq, opts)?;
    if level >= usize::BITS - 1 {
        return Err(Error::Usage(format!("splitting level {level} too large")));
    }
    let period = 1usize << level;
    let needed = max_k
        .max(1)
        .checked_mul(period)
        .and_then(|x| x.checked_add(period - 1))
        .ok_or_else(|| Error::Range("splitting range overflows".into()))?;
    if needed > seq.max_index() {
        return Err(Error::Range(format!(
            "splitting r={level}, max_k={max_k} needs N >= {needed}, have {}",
            seq.max_index()
        )));
    }
    let mut report = BoundsReport::new(ReportKind::Splitting, seq, opts);
    with_values!(seq, |vals, _lam| splitting_in(
        vals,
        period,
        max_k,
        opts,
        &mut report
    ));
    Ok(report.finish())
}

fn splitting_in<T: Real>(
    r: &[T],
    period: usize,
    max_k: usize,
    opts: &AnalysisOptions,
    report: &mut BoundsReport,
) {
    let mut checker = Checker {
        report,
        tol: opts.tol,
        track_attainment: false,
    };
    let mut checked = 0;
    for n in 0..period {
        let (a, b) = (&r[n], &r[period + n]);
        let lo = a.min_of(b);
        let hi = a.max_of(b);
        for k in 0..=max_k {
            let idx = k * period + n;
            let value = &r[idx];
            checker.check(
                n,
                Some(k),
                idx,
                value,
                &lo,
                Bound::lower("split-lower", false),
                false,
            );
            checker.check(
                n,
                Some(k),
                idx,
                value,
                &hi,
                Bound::upper("split-upper", false),
                false,
            );
            checked += 1;
        }
    }
    checker.report.checked_count = checked;
}

/// Checks `0 < R_{2n} < R_n` and `R_{2n} <= 1` for `1 <= n <= N/2`.
pub fn check_prop1(seq: &RSequence, opts: &AnalysisOptions) -> Result<BoundsReport> {
    check_regime(seq, opts)?;
    if seq.len() < 3 {
        return Err(Error::Range("prop1 check needs R_0..R_2".into()));
    }
    let mut report = BoundsReport::new(ReportKind::Prop1, seq, opts);
    with_values!(seq, |vals, _lam| prop1_in(vals, opts, &mut report)?);
    Ok(report.finish())
}

fn prop1_in<T: Real>(r: &[T], opts: &AnalysisOptions, report: &mut BoundsReport) -> Result<()> {
    let zero = T::from_ratio(&BigRational::from_integer(0.into()))?;
    let one = T::from_ratio(&BigRational::from_integer(1.into()))?;
    let mut checker = Checker {
        report,
        tol: opts.tol,
        track_attainment: true,
    };
    let half = (r.len() - 1) / 2;
    for n in 1..=half {
        let v = &r[2 * n];
        checker.check(
            n,
            None,
            2 * n,
            v,
            &zero,
            Bound::lower("prop1-positive", true),
            false,
        );
        checker.check(
            n,
            None,
            2 * n,
            v,
            &r[n],
            Bound::upper("prop1-below-parent", true),
            false,
        );
        checker.check(
            n,
            None,
            2 * n,
            v,
            &one,
            Bound::upper("prop1-unit", false),
            false,
        );
    }
    checker.report.checked_count = half;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::AttainmentKind;
    use crate::numerics::{Backend, RealOrdering};
    use crate::sequence::{generate, GenerateOptions};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn seq(text: &str, backend: Backend, n: usize) -> RSequence {
        let lam = LambdaParam::parse(text, backend).unwrap();
        generate(&lam, n, &GenerateOptions::default().unproven(true)).unwrap()
    }

    #[test]
    fn sigma_and_r4_attainment() {
        let s = seq("2.1", Backend::Exact, 64);
        let b = theorem_bounds(s.lambda()).unwrap();
        assert_eq!(b.sigma, Scalar::Exact(q(10, 11)));
        assert_eq!(s.get(4).unwrap(), b.sigma);
        let rep = check_theorem(&s, &AnalysisOptions::default()).unwrap();
        assert!(rep.passed());
        let sharp: Vec<_> = rep
            .attainments
            .iter()
            .filter(|a| a.kind == AttainmentKind::Sharp)
            .map(|a| (a.index, a.inequality.as_str()))
            .collect();
        assert_eq!(sharp, vec![(4, "p1-upper"), (5, "p4-lower")]);
        let boundary: Vec<_> = rep
            .attainments
            .iter()
            .filter(|a| a.kind == AttainmentKind::Boundary)
            .map(|a| a.index)
            .collect();
        assert_eq!(boundary, vec![0, 1, 2, 3]);
    }

    #[test]
    fn theorem_refuses_unproven_regime() {
        let s = seq("2", Backend::Exact, 16);
        assert_eq!(
            check_theorem(&s, &AnalysisOptions::default()),
            Err(Error::UnprovenRegime)
        );
        let opts = AnalysisOptions {
            allow_unproven: true,
            ..Default::default()
        };
        let rep = check_theorem(&s, &opts).unwrap();
        assert!(rep.regime_warning);
        assert!(!rep.warnings.is_empty());
    }

    #[test]
    fn short_sequences_are_range_errors() {
        let s = seq("3", Backend::Exact, 2);
        assert!(matches!(
            check_theorem(&s, &AnalysisOptions::default()),
            Err(Error::Range(_))
        ));
        assert!(matches!(
            check_conjecture(&s, &AnalysisOptions::default()),
            Err(Error::Range(_))
        ));
    }

    #[test]
    fn conjecture_counterexample_at_2_1() {
        let s = seq("2.1", Backend::Exact, 64);
        let rep = check_conjecture(&s, &AnalysisOptions::default()).unwrap();
        let first = rep.violations_of("c2-lower").next().unwrap();
        assert_eq!((first.n, first.index), (2, 10));
        assert_eq!(first.lhs, Scalar::Exact(q(201_871, 224_971)));
        assert_eq!(first.rhs, Scalar::Exact(q(121, 131)));
        assert_eq!(
            first.margin.compare(&Scalar::Exact(q(0, 1))).unwrap(),
            RealOrdering::Less
        );
        // R_{4n+2} + R_{4n+3} = λ = R_6 + R_7 ties c3-upper to c2-lower.
        let c2: Vec<_> = rep.violations_of("c2-lower").map(|v| v.n).collect();
        let c3: Vec<_> = rep.violations_of("c3-upper").map(|v| v.n).collect();
        assert_eq!(c2, c3);
        assert_eq!(rep.violated_inequalities(), vec!["c2-lower", "c3-upper"]);
    }

    #[test]
    fn splitting_counterexample_and_boundary() {
        let s = seq("2.1", Backend::Exact, 64);
        let rep = check_splitting(&s, 2, 15, &AnalysisOptions::default()).unwrap();
        assert!(rep
            .violations
            .iter()
            .any(|v| v.index == 10 && v.n == 2 && v.k == Some(2) && v.inequality == "split-lower"));
        let r1 = check_splitting(&s, 1, 1, &AnalysisOptions::default()).unwrap();
        assert!(r1.passed());
        assert!(matches!(
            check_splitting(&s, 2, 16, &AnalysisOptions::default()),
            Err(Error::Range(_))
        ));
    }

    #[test]
    fn prop1_small_cases() {
        let s = seq("2.1", Backend::Exact, 64);
        let rep = check_prop1(&s, &AnalysisOptions::default()).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.checked_count, 32);
        assert!(rep
            .attainments
            .iter()
            .any(|a| a.index == 2 && a.inequality == "prop1-unit"));
        assert_eq!(
            s.get(6).unwrap().compare(&s.get(3).unwrap()).unwrap(),
            RealOrdering::Less
        );
    }

    #[test]
    fn interval_backend_certifies_theorem() {
        let s = seq("2.1", Backend::Interval, 256);
        let rep = check_theorem(&s, &AnalysisOptions::default()).unwrap();
        assert!(rep.passed());
        let conj = check_conjecture(&s, &AnalysisOptions::default()).unwrap();
        assert!(conj.violations_of("c2-lower").any(|v| v.index == 10));
    }

    #[test]
    fn float_theorem_uses_tolerance() {
        let s = seq("3", Backend::Float, 10_000);
        let rep = check_theorem(&s, &AnalysisOptions::default()).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.tolerance, 1e-9);
    }
}
