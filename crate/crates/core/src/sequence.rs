//! The coefficient sequence `R_n`.
//!
//! For a coupling `λ`, the sequence is fixed by
//!
//! ```text
//! R_0 = 0,    R_{2n} + R_{2n+1} = λ,    R_{2n} · R_{2n-1} = R_n
//! ```
//!
//! which determines `R_1 = λ` and, for `n >= 1`, `R_{2n} = R_n / R_{2n-1}`
//! followed by `R_{2n+1} = λ - R_{2n}`. Both inputs of each step have lower
//! indices, so one forward pass fills the table.

use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{parse_decimal, Backend, Interval, Real, RealOrdering, Scalar};

/// Default ceiling on `N` for the exact backend. Fraction sizes grow
/// linearly in `n` (about 5 bits per index at λ = 2.1), and each step costs a
/// big-integer gcd.
pub const DEFAULT_EXACT_CAP: usize = 8192;

/// Default dyadic resolution (fractional bits) for interval endpoints.
pub const DEFAULT_INTERVAL_BITS: u32 = 192;

/// The coupling `λ`, tagged with whether it lies in the proven regime `λ > 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaParam {
    value: Scalar,
    regime_ok: bool,
}

impl LambdaParam {
    pub fn new(value: Scalar) -> Result<Self> {
        let zero = Scalar::zero(value.backend());
        if value.compare(&zero)? != RealOrdering::Greater {
            return Err(Error::NonPositiveLambda);
        }
        let two = Scalar::from_ratio(&BigRational::from_integer(2.into()), value.backend())?;
        let regime_ok = value.compare(&two)? == RealOrdering::Greater;
        Ok(LambdaParam { value, regime_ok })
    }

    /// Parses a decimal exactly and converts it into `backend`.
    pub fn parse(text: &str, backend: Backend) -> Result<Self> {
        let exact = parse_decimal(text)?;
        Self::new(Scalar::from_ratio(&exact, backend)?)
    }

    pub fn from_ratio(value: &BigRational, backend: Backend) -> Result<Self> {
        Self::new(Scalar::from_ratio(value, backend)?)
    }

    pub fn float(value: f64) -> Result<Self> {
        Self::new(Scalar::Float(value))
    }

    pub fn value(&self) -> &Scalar {
        &self.value
    }

    pub fn backend(&self) -> Backend {
        self.value.backend()
    }

    /// True iff `λ > 2` (for intervals: the whole enclosure exceeds 2).
    pub fn regime_ok(&self) -> bool {
        self.regime_ok
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenerateOptions {
    pub exact_cap: usize,
    pub allow_unproven: bool,
    pub interval_bits: u32,
}

impl Default for GenerateOptions {
    fn default() -> Self {
        GenerateOptions {
            exact_cap: DEFAULT_EXACT_CAP,
            allow_unproven: false,
            interval_bits: DEFAULT_INTERVAL_BITS,
        }
    }
}

impl GenerateOptions {
    pub fn unproven(mut self, allow: bool) -> Self {
        self.allow_unproven = allow;
        self
    }
}

/// Backend-specific storage for `R_0..=R_N`.
#[derive(Debug, Clone, PartialEq)]
pub enum Values {
    Float(Vec<f64>),
    Exact(Vec<BigRational>),
    Interval(Vec<Interval>),
}

impl Values {
    pub fn len(&self) -> usize {
        match self {
            Values::Float(v) => v.len(),
            Values::Exact(v) => v.len(),
            Values::Interval(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn backend(&self) -> Backend {
        match self {
            Values::Float(_) => Backend::Float,
            Values::Exact(_) => Backend::Exact,
            Values::Interval(_) => Backend::Interval,
        }
    }
}

/// Runs `$body` with `$vals: &Vec<T>` and `$lam: T` bound for whichever
/// backend the sequence uses.
macro_rules! with_values {
    ($seq:expr, |$vals:ident, $lam:ident| $body:expr) => {{
        let seq: &$crate::sequence::RSequence = $seq;
        match seq.values() {
            $crate::sequence::Values::Float($vals) => {
                let $lam = <f64 as $crate::numerics::Real>::from_scalar(seq.lambda().value())?;
                $body
            }
            $crate::sequence::Values::Exact($vals) => {
                let $lam = <num_rational::BigRational as $crate::numerics::Real>::from_scalar(
                    seq.lambda().value(),
                )?;
                $body
            }
            $crate::sequence::Values::Interval($vals) => {
                let $lam = <$crate::numerics::Interval as $crate::numerics::Real>::from_scalar(
                    seq.lambda().value(),
                )?;
                $body
            }
        }
    }};
}
pub(crate) use with_values;

/// The values `R_0..=R_N` for one `λ`.
#[derive(Debug, Clone, PartialEq)]
pub struct RSequence {
    lambda: LambdaParam,
    values: Values,
}

impl RSequence {
    /// Wraps raw values without checking the recurrences; intended for
    /// ingestion and fault-injection. [`verify_recurrences`] is the check.
    pub fn from_values(lambda: LambdaParam, values: Values) -> Result<Self> {
        if values.backend() != lambda.backend() {
            return Err(Error::MixedBackend {
                left: lambda.backend(),
                right: values.backend(),
            });
        }
        if values.is_empty() {
            return Err(Error::Range("a sequence needs at least R_0".into()));
        }
        Ok(RSequence { lambda, values })
    }

    pub fn lambda(&self) -> &LambdaParam {
        &self.lambda
    }

    pub fn values(&self) -> &Values {
        &self.values
    }

    pub fn backend(&self) -> Backend {
        self.values.backend()
    }

    /// Number of stored values, `N + 1`.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Largest stored index `N`.
    pub fn max_index(&self) -> usize {
        self.len() - 1
    }

    pub fn get(&self, n: usize) -> Option<Scalar> {
        match &self.values {
            Values::Float(v) => v.get(n).map(|x| Scalar::Float(*x)),
            Values::Exact(v) => v.get(n).map(|x| Scalar::Exact(x.clone())),
            Values::Interval(v) => v.get(n).map(|x| Scalar::Interval(x.clone())),
        }
    }

    /// Float view of the values (nearest float, interval midpoints).
    pub fn to_f64_vec(&self) -> Result<Vec<f64>> {
        match &self.values {
            Values::Float(v) => Ok(v.clone()),
            Values::Exact(v) => v.iter().map(Real::to_f64).collect(),
            Values::Interval(v) => v.iter().map(Real::to_f64).collect(),
        }
    }

    /// Returns a copy with `R_n` replaced; the backend must match.
    pub fn with_value(&self, n: usize, value: Scalar) -> Result<Self> {
        if n >= self.len() {
            return Err(Error::Range(format!(
                "index {n} beyond N = {}",
                self.max_index()
            )));
        }
        let mut out = self.clone();
        match (&mut out.values, value) {
            (Values::Float(v), Scalar::Float(x)) => v[n] = x,
            (Values::Exact(v), Scalar::Exact(x)) => v[n] = x,
            (Values::Interval(v), Scalar::Interval(x)) => v[n] = x,
            (vals, other) => {
                return Err(Error::MixedBackend {
                    left: vals.backend(),
                    right: other.backend(),
                })
            }
        }
        Ok(out)
    }
}

/// Fills `R_0..=R_N`. The backend is the backend of `lambda`.
pub fn generate(lambda: &LambdaParam, n_max: usize, opts: &GenerateOptions) -> Result<RSequence> {
    if !lambda.regime_ok() && !opts.allow_unproven {
        return Err(Error::UnprovenRegime);
    }
    let values = match lambda.value() {
        Scalar::Float(l) => Values::Float(fill(l, n_max, opts.interval_bits)?),
        Scalar::Exact(l) => {
            if n_max > opts.exact_cap {
                return Err(Error::ExactCapExceeded {
                    requested: n_max,
                    cap: opts.exact_cap,
                });
            }
            Values::Exact(fill(l, n_max, opts.interval_bits)?)
        }
        Scalar::Interval(l) => Values::Interval(fill(l, n_max, opts.interval_bits)?),
    };
    Ok(RSequence {
        lambda: lambda.clone(),
        values,
    })
}

fn fill<T: Real>(lambda: &T, n_max: usize, interval_bits: u32) -> Result<Vec<T>> {
    let zero = T::from_ratio(&BigRational::from_integer(0.into()))?;
    let mut r = Vec::with_capacity(n_max + 1);
    r.push(zero);
    if n_max >= 1 {
        r.push(lambda.clone());
    }
    for idx in 2..=n_max {
        let next = if idx % 2 == 0 {
            r[idx / 2].div(&r[idx - 1]).map_err(|e| match e {
                Error::DivisionByZero => Error::DegenerateRecursion {
                    index: idx,
                    divisor: idx - 1,
                },
                other => other,
            })?
        } else {
            lambda.sub(&r[idx - 1])
        };
        if T::BACKEND == Backend::Float && next.to_f64().is_err() {
            return Err(Error::Domain(format!("non-finite value at index {idx}")));
        }
        r.push(next.settle(interval_bits));
    }
    Ok(r)
}

/// Closed forms for `R_0..R_7` as rational functions of `λ`.
pub fn closed_form(k: usize, lambda: &LambdaParam) -> Result<Scalar> {
    match lambda.value() {
        Scalar::Float(l) => closed_form_in(k, l).map(Real::into_scalar),
        Scalar::Exact(l) => closed_form_in(k, l).map(Real::into_scalar),
        Scalar::Interval(l) => closed_form_in(k, l).map(Real::into_scalar),
    }
}

fn closed_form_in<T: Real>(k: usize, l: &T) -> Result<T> {
    let int = |v: i64| T::from_ratio(&BigRational::from_integer(v.into()));
    let one = int(1)?;
    let two = int(2)?;
    let l_minus_1 = l.sub(&one);
    // λ² − λ − 1
    let quad = l.mul(l).sub(l).sub(&one);
    Ok(match k {
        0 => int(0)?,
        1 => l.clone(),
        2 => one,
        3 => l_minus_1,
        4 => one.div(&l_minus_1)?,
        5 => l.sub(&one.div(&l_minus_1)?),
        6 => l_minus_1.mul(&l_minus_1).div(&quad)?,
        7 => {
            // λ³ − 2λ² + λ − 1
            let l2 = l.mul(l);
            let cubic = l2.mul(l).sub(&two.mul(&l2)).add(l).sub(&one);
            cubic.div(&quad)?
        }
        _ => {
            return Err(Error::Usage(format!(
                "closed forms exist for k in 0..=7, got {k}"
            )))
        }
    })
}

/// Which identity a residual belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityFamily {
    /// `R_0 = 0`.
    Base,
    /// `R_{2n} + R_{2n+1} = λ`.
    Additive2,
    /// `R_{2n} R_{2n-1} = R_n`.
    Multiplicative2,
    /// `R_{4n} + R_{4n+1} = λ`, `R_{4n+2} + R_{4n+3} = λ`.
    AdditiveMod4,
    /// `R_{8n+2i} R_{8n+2i-1} = R_{4n+i}` for `i = 0..3`.
    MultiplicativeMod8,
    /// The solved forms for `R_{8n}`, `1 - R_{8n+2}`, `R_{8n+4}`, `1 - R_{8n+6}`.
    Transformed,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyResidual {
    pub family: IdentityFamily,
    pub checked: usize,
    /// Largest relative residual `|lhs - rhs| / max(1, |lhs|, |rhs|)`.
    pub max_residual: f64,
    /// Every residual in the family is exactly zero (only meaningful for
    /// the exact backend).
    pub exact_zero: bool,
    /// Smallest sequence index whose identity failed.
    pub first_failing: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub backend: Backend,
    pub tolerance: f64,
    pub families: Vec<FamilyResidual>,
}

impl IdentityReport {
    pub fn first_failing(&self) -> Option<usize> {
        self.families.iter().filter_map(|f| f.first_failing).min()
    }

    pub fn family(&self, family: IdentityFamily) -> Option<&FamilyResidual> {
        self.families.iter().find(|f| f.family == family)
    }

    pub fn max_residual(&self) -> f64 {
        self.families
            .iter()
            .map(|f| f.max_residual)
            .fold(0.0, f64::max)
    }
}

struct Tally<T> {
    family: FamilyResidual,
    tol: f64,
    _marker: std::marker::PhantomData<T>,
}

impl<T: Real> Tally<T> {
    fn new(family: IdentityFamily, tol: f64) -> Self {
        Tally {
            family: FamilyResidual {
                family,
                checked: 0,
                max_residual: 0.0,
                exact_zero: true,
                first_failing: None,
            },
            tol,
            _marker: std::marker::PhantomData,
        }
    }

    fn record(&mut self, index: usize, lhs: &T, rhs: &T) {
        let diff = lhs.sub(rhs).abs();
        let scale = 1f64.max(lhs.magnitude()).max(rhs.magnitude());
        let rel = diff.magnitude() / scale;
        let failed = match T::BACKEND {
            Backend::Exact => !diff.is_exact_zero(),
            Backend::Float => !(rel <= self.tol),
            Backend::Interval => {
                !diff.touches_zero(0.0) && lower_magnitude(&diff) / scale > self.tol
            }
        };
        let f = &mut self.family;
        f.checked += 1;
        f.max_residual = f.max_residual.max(rel);
        f.exact_zero &= diff.is_exact_zero();
        if failed && f.first_failing.map_or(true, |i| index < i) {
            f.first_failing = Some(index);
        }
    }
}

// Lower bound on |x| for an enclosure not containing zero.
fn lower_magnitude<T: Real>(x: &T) -> f64 {
    match x.clone().into_scalar() {
        Scalar::Interval(i) => {
            let lo = Signed::abs(i.lo()).min(Signed::abs(i.hi()));
            crate::numerics::ratio_to_f64(&lo).unwrap_or(f64::INFINITY)
        }
        _ => x.magnitude(),
    }
}

/// Checks the defining recurrences and the mod-4 / mod-8 identities derived
/// from them. `tol` is relative and applies to the float backend (and to
/// certified-nonzero interval residuals); the exact backend requires zero.
pub fn verify_recurrences(seq: &RSequence, tol: f64) -> Result<IdentityReport> {
    let families = with_values!(seq, |vals, lam| identity_families(vals, &lam, tol)?);
    Ok(IdentityReport {
        backend: seq.backend(),
        tolerance: tol,
        families,
    })
}

fn identity_families<T: Real>(r: &[T], lam: &T, tol: f64) -> Result<Vec<FamilyResidual>> {
    let n_max = r.len() - 1;
    let one = T::from_ratio(&BigRational::from_integer(1.into()))?;
    let zero = T::from_ratio(&BigRational::from_integer(0.into()))?;

    let mut base = Tally::<T>::new(IdentityFamily::Base, tol);
    base.record(0, &r[0], &zero);

    let mut add2 = Tally::<T>::new(IdentityFamily::Additive2, tol);
    for n in 0.. {
        if 2 * n + 1 > n_max {
            break;
        }
        add2.record(2 * n, &r[2 * n].add(&r[2 * n + 1]), lam);
    }

    let mut mul2 = Tally::<T>::new(IdentityFamily::Multiplicative2, tol);
    for n in 1..=n_max / 2 {
        mul2.record(2 * n, &r[2 * n].mul(&r[2 * n - 1]), &r[n]);
    }

    let mut add4 = Tally::<T>::new(IdentityFamily::AdditiveMod4, tol);
    for base_idx in (0..=n_max).step_by(2) {
        if base_idx + 1 > n_max {
            break;
        }
        // base_idx is 4n or 4n+2
        add4.record(base_idx, &r[base_idx].add(&r[base_idx + 1]), lam);
    }

    let mut mul8 = Tally::<T>::new(IdentityFamily::MultiplicativeMod8, tol);
    for n in 0..=n_max / 8 {
        for i in 0..4usize {
            let even = 8 * n + 2 * i;
            if even == 0 || even > n_max {
                continue;
            }
            mul8.record(even, &r[even].mul(&r[even - 1]), &r[4 * n + i]);
        }
    }

    let mut trans = Tally::<T>::new(IdentityFamily::Transformed, tol);
    let lam_minus_1 = lam.sub(&one);
    for n in 0..=n_max / 8 {
        if n >= 1 {
            let (i0, i2) = (8 * n, 8 * n + 2);
            if i0 <= n_max {
                let denom = lam.sub(&r[i0 - 2]);
                trans.record(i0, &r[i0], &r[4 * n].div(&denom)?);
            }
            if i2 <= n_max {
                let prev = &r[8 * n - 2];
                let num = r[4 * n].mul(&lam_minus_1.sub(prev));
                let den = lam.mul(&lam.sub(prev)).sub(&r[4 * n]);
                trans.record(i2, &one.sub(&r[i2]), &num.div(&den)?);
            }
        }
        let (i4, i6) = (8 * n + 4, 8 * n + 6);
        if i4 <= n_max {
            let denom = lam.sub(&r[8 * n + 2]);
            trans.record(i4, &r[i4], &r[4 * n + 2].div(&denom)?);
        }
        if i6 <= n_max {
            let prev = &r[8 * n + 2];
            let num = r[4 * n + 2].mul(&lam_minus_1.sub(prev));
            let den = lam.mul(&lam.sub(prev)).sub(&r[4 * n + 2]);
            trans.record(i6, &one.sub(&r[i6]), &num.div(&den)?);
        }
    }

    Ok([base, add2, mul2, add4, mul8, trans]
        .into_iter()
        .map(|t| t.family)
        .collect())
}
