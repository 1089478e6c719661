use std::fmt::Debug;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{ratio_to_f64, rational, Backend, Interval, RealOrdering, Scalar};
use crate::error::{Error, Result};

/// Outcome of checking a sign condition on a margin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    /// Only possible for intervals straddling the threshold.
    Inconclusive,
}

/// Arithmetic shared by the three backends.
///
/// Addition, subtraction and multiplication are total; division reports a
/// zero (or zero-containing) divisor as [`Error::DivisionByZero`].
pub trait Real: Clone + Debug + PartialEq + Send + Sync + 'static {
    const BACKEND: Backend;

    fn from_ratio(value: &BigRational) -> Result<Self>;
    fn from_scalar(value: &Scalar) -> Result<Self>;
    fn into_scalar(self) -> Scalar;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn div(&self, rhs: &Self) -> Result<Self>;
    fn abs(&self) -> Self;
    fn min_of(&self, rhs: &Self) -> Self;
    fn max_of(&self, rhs: &Self) -> Self;

    fn compare(&self, rhs: &Self) -> RealOrdering;
    fn to_f64(&self) -> Result<f64>;

    /// Decides `self >= 0` (or `self > 0` when `strict`). Floats accept any
    /// value above `-tol`, regardless of strictness; the rational backends
    /// ignore `tol`.
    fn check_nonnegative(&self, strict: bool, tol: f64) -> Verdict;

    /// Whether `self` may equal zero: exactly zero, within `tol` for floats,
    /// or an interval containing zero.
    fn touches_zero(&self, tol: f64) -> bool;

    /// Magnitude of `self` as an upper-bounding float (interval: max |endpoint|).
    fn magnitude(&self) -> f64;

    fn is_exact_zero(&self) -> bool;

    /// Hook run on every freshly computed sequence value; intervals round
    /// their endpoints outward here, the other backends are unchanged.
    fn settle(self, _interval_bits: u32) -> Self {
        self
    }
}

impl Real for f64 {
    const BACKEND: Backend = Backend::Float;

    fn from_ratio(value: &BigRational) -> Result<Self> {
        ratio_to_f64(value)
    }

    fn from_scalar(value: &Scalar) -> Result<Self> {
        match value {
            Scalar::Float(x) => Ok(*x),
            other => Err(Error::MixedBackend {
                left: Backend::Float,
                right: other.backend(),
            }),
        }
    }

    fn into_scalar(self) -> Scalar {
        Scalar::Float(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn div(&self, rhs: &Self) -> Result<Self> {
        if *rhs == 0.0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self / rhs)
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn min_of(&self, rhs: &Self) -> Self {
        f64::min(*self, *rhs)
    }

    fn max_of(&self, rhs: &Self) -> Self {
        f64::max(*self, *rhs)
    }

    fn compare(&self, rhs: &Self) -> RealOrdering {
        self.partial_cmp(rhs)
            .map(RealOrdering::from)
            .unwrap_or(RealOrdering::Indeterminate)
    }

    fn to_f64(&self) -> Result<f64> {
        if self.is_finite() {
            Ok(*self)
        } else {
            Err(Error::Overflow)
        }
    }

    fn check_nonnegative(&self, _strict: bool, tol: f64) -> Verdict {
        if self.is_nan() {
            Verdict::Inconclusive
        } else if *self < -tol {
            Verdict::Fails
        } else {
            Verdict::Holds
        }
    }

    fn touches_zero(&self, tol: f64) -> bool {
        f64::abs(*self) <= tol
    }

    fn magnitude(&self) -> f64 {
        f64::abs(*self)
    }

    fn is_exact_zero(&self) -> bool {
        *self == 0.0
    }
}

impl Real for BigRational {
    const BACKEND: Backend = Backend::Exact;

    fn from_ratio(value: &BigRational) -> Result<Self> {
        Ok(value.clone())
    }

    fn from_scalar(value: &Scalar) -> Result<Self> {
        match value {
            Scalar::Exact(r) => Ok(r.clone()),
            other => Err(Error::MixedBackend {
                left: Backend::Exact,
                right: other.backend(),
            }),
        }
    }

    fn into_scalar(self) -> Scalar {
        Scalar::Exact(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        rational::add(self, rhs)
    }

    fn sub(&self, rhs: &Self) -> Self {
        rational::sub(self, rhs)
    }

    fn mul(&self, rhs: &Self) -> Self {
        rational::mul(self, rhs)
    }

    fn div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(rational::div(self, rhs))
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn min_of(&self, rhs: &Self) -> Self {
        if rational::cmp(self, rhs).is_gt() {
            rhs.clone()
        } else {
            self.clone()
        }
    }

    fn max_of(&self, rhs: &Self) -> Self {
        if rational::cmp(self, rhs).is_lt() {
            rhs.clone()
        } else {
            self.clone()
        }
    }

    fn compare(&self, rhs: &Self) -> RealOrdering {
        rational::cmp(self, rhs).into()
    }

    fn to_f64(&self) -> Result<f64> {
        ratio_to_f64(self)
    }

    fn check_nonnegative(&self, strict: bool, _tol: f64) -> Verdict {
        if self.is_negative() || (strict && self.is_zero()) {
            Verdict::Fails
        } else {
            Verdict::Holds
        }
    }

    fn touches_zero(&self, _tol: f64) -> bool {
        self.is_zero()
    }

    fn magnitude(&self) -> f64 {
        ratio_to_f64(&Signed::abs(self)).unwrap_or(f64::INFINITY)
    }

    fn is_exact_zero(&self) -> bool {
        self.is_zero()
    }
}

impl Real for Interval {
    const BACKEND: Backend = Backend::Interval;

    fn from_ratio(value: &BigRational) -> Result<Self> {
        Ok(Interval::point(value.clone()))
    }

    fn from_scalar(value: &Scalar) -> Result<Self> {
        match value {
            Scalar::Interval(i) => Ok(i.clone()),
            other => Err(Error::MixedBackend {
                left: Backend::Interval,
                right: other.backend(),
            }),
        }
    }

    fn into_scalar(self) -> Scalar {
        Scalar::Interval(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        Interval::add(self, rhs)
    }

    fn sub(&self, rhs: &Self) -> Self {
        Interval::sub(self, rhs)
    }

    fn mul(&self, rhs: &Self) -> Self {
        Interval::mul(self, rhs)
    }

    fn div(&self, rhs: &Self) -> Result<Self> {
        Interval::div(self, rhs)
    }

    fn abs(&self) -> Self {
        Interval::abs(self)
    }

    // Enclosures of min(x, y) and max(x, y) over x ∈ self, y ∈ rhs.
    fn min_of(&self, rhs: &Self) -> Self {
        Interval::new(
            self.lo().min(rhs.lo()).clone(),
            self.hi().min(rhs.hi()).clone(),
        )
        .expect("componentwise min keeps lo <= hi")
    }

    fn max_of(&self, rhs: &Self) -> Self {
        Interval::new(
            self.lo().max(rhs.lo()).clone(),
            self.hi().max(rhs.hi()).clone(),
        )
        .expect("componentwise max keeps lo <= hi")
    }

    fn compare(&self, rhs: &Self) -> RealOrdering {
        Interval::compare(self, rhs)
    }

    fn to_f64(&self) -> Result<f64> {
        ratio_to_f64(&self.midpoint())
    }

    fn check_nonnegative(&self, strict: bool, _tol: f64) -> Verdict {
        let lo_ok = if strict {
            self.lo().is_positive()
        } else {
            !self.lo().is_negative()
        };
        let hi_fails = if strict {
            !self.hi().is_positive()
        } else {
            self.hi().is_negative()
        };
        if lo_ok {
            Verdict::Holds
        } else if hi_fails {
            Verdict::Fails
        } else {
            Verdict::Inconclusive
        }
    }

    fn touches_zero(&self, _tol: f64) -> bool {
        self.contains_zero()
    }

    fn magnitude(&self) -> f64 {
        let m = Signed::abs(self.lo()).max(Signed::abs(self.hi()));
        ratio_to_f64(&m).unwrap_or(f64::INFINITY)
    }

    fn is_exact_zero(&self) -> bool {
        self.is_point() && self.lo().is_zero()
    }

    fn settle(self, interval_bits: u32) -> Self {
        self.round_outward(interval_bits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn float_verdict_uses_tolerance() {
        assert_eq!((-1e-12f64).check_nonnegative(true, 1e-9), Verdict::Holds);
        assert_eq!((-1e-6f64).check_nonnegative(false, 1e-9), Verdict::Fails);
    }

    #[test]
    fn exact_verdict_respects_strictness() {
        assert_eq!(q(0, 1).check_nonnegative(false, 0.0), Verdict::Holds);
        assert_eq!(q(0, 1).check_nonnegative(true, 0.0), Verdict::Fails);
        assert_eq!(q(-1, 9).check_nonnegative(false, 0.0), Verdict::Fails);
    }

    #[test]
    fn interval_verdicts() {
        let straddle = Interval::new(q(-1, 10), q(1, 10)).unwrap();
        assert_eq!(
            straddle.check_nonnegative(false, 0.0),
            Verdict::Inconclusive
        );
        let touching = Interval::new(q(0, 1), q(1, 10)).unwrap();
        assert_eq!(touching.check_nonnegative(false, 0.0), Verdict::Holds);
        assert_eq!(touching.check_nonnegative(true, 0.0), Verdict::Inconclusive);
        let below = Interval::new(q(-2, 1), q(0, 1)).unwrap();
        assert_eq!(below.check_nonnegative(true, 0.0), Verdict::Fails);
        assert_eq!(below.check_nonnegative(false, 0.0), Verdict::Inconclusive);
    }

    #[test]
    fn float_division_by_zero() {
        assert_eq!(Real::div(&1.0f64, &0.0), Err(Error::DivisionByZero));
    }
}
