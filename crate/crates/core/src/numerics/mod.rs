//! Scalar arithmetic under three interchangeable backends.
//!
//! Every real-valued quantity in the crate (λ, R_n, σ, bound margins) is a
//! [`Scalar`]: a 64-bit float for fast exploration, a reduced
//! [`BigRational`] for certification, or an [`Interval`] with rational
//! endpoints for cheap rigorous enclosures. Operations never mix backends.
//!
//! The generic algorithms in [`crate::sequence`] and [`crate::analysis`] are
//! written against the [`Real`] trait, implemented for `f64`,
//! `BigRational` and [`Interval`].

mod interval;
pub(crate) mod rational;
mod real;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub use interval::Interval;
pub use real::{Real, Verdict};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    /// IEEE-754 binary64.
    Float,
    /// Arbitrary-precision rational in lowest terms.
    Exact,
    /// Closed interval with rational endpoints.
    Interval,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Float => "float",
            Backend::Exact => "exact",
            Backend::Interval => "interval",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "float" => Ok(Backend::Float),
            "exact" => Ok(Backend::Exact),
            "interval" => Ok(Backend::Interval),
            other => Err(Error::Usage(format!("unknown backend {other:?}"))),
        }
    }
}

/// Result of comparing two scalars. `Indeterminate` arises only from
/// overlapping intervals (or a NaN float).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RealOrdering {
    Less,
    Equal,
    Greater,
    Indeterminate,
}

impl From<Ordering> for RealOrdering {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => RealOrdering::Less,
            Ordering::Equal => RealOrdering::Equal,
            Ordering::Greater => RealOrdering::Greater,
        }
    }
}

/// Parses a finite decimal such as `-2.10` or `3e-2` into the exact rational
/// it denotes.
pub fn parse_decimal(text: &str) -> Result<BigRational> {
    let err = || Error::Parse(text.to_string());
    let s = text.trim();
    let (negative, body) = match s.as_bytes().first() {
        Some(b'-') => (true, &s[1..]),
        Some(b'+') => (false, &s[1..]),
        _ => (false, s),
    };
    let (mantissa, exponent) = match body.find(['e', 'E']) {
        Some(pos) => {
            let exp: i64 = body[pos + 1..].parse().map_err(|_| err())?;
            (&body[..pos], exp)
        }
        None => (body, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part
        .bytes()
        .chain(frac_part.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return Err(err());
    }
    // Guard against absurd exponents that would allocate gigantic integers.
    let exponent = exponent - frac_part.len() as i64;
    if exponent.unsigned_abs() > 100_000 {
        return Err(err());
    }
    let digits = format!("{int_part}{frac_part}");
    let mut numer: BigInt = digits.parse().map_err(|_| err())?;
    if negative {
        numer = -numer;
    }
    let scale = num_traits::pow(BigInt::from(10u32), exponent.unsigned_abs() as usize);
    Ok(if exponent >= 0 {
        BigRational::from_integer(numer * scale)
    } else {
        BigRational::new(numer, scale)
    })
}

/// Nearest-float conversion of an exact rational.
pub fn ratio_to_f64(value: &BigRational) -> Result<f64> {
    match ToPrimitive::to_f64(value) {
        Some(x) if x.is_finite() => Ok(x),
        _ => Err(Error::Overflow),
    }
}

/// Renders a rational as `num/den` (denominator always present).
pub fn format_ratio(value: &BigRational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Parses the `num/den` rendering produced by [`format_ratio`]; a bare
/// integer is also accepted.
pub fn parse_ratio(text: &str) -> Result<BigRational> {
    let err = || Error::Parse(text.to_string());
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(
            text.trim().parse().map_err(|_| err())?,
        )),
    }
}

/// A real number under one of the three backends.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Float(f64),
    Exact(BigRational),
    Interval(Interval),
}

macro_rules! dispatch_binary {
    ($self:ident, $rhs:ident, $a:ident, $b:ident => $body:expr) => {
        match ($self, $rhs) {
            (Scalar::Float($a), Scalar::Float($b)) => Ok($body),
            (Scalar::Exact($a), Scalar::Exact($b)) => Ok($body),
            (Scalar::Interval($a), Scalar::Interval($b)) => Ok($body),
            (l, r) => Err(Error::MixedBackend {
                left: l.backend(),
                right: r.backend(),
            }),
        }
    };
}

impl Scalar {
    pub fn parse_decimal(text: &str) -> Result<Scalar> {
        parse_decimal(text).map(Scalar::Exact)
    }

    pub fn from_ratio(value: &BigRational, backend: Backend) -> Result<Scalar> {
        Ok(match backend {
            Backend::Float => Scalar::Float(ratio_to_f64(value)?),
            Backend::Exact => Scalar::Exact(value.clone()),
            Backend::Interval => Scalar::Interval(Interval::point(value.clone())),
        })
    }

    pub fn zero(backend: Backend) -> Scalar {
        match backend {
            Backend::Float => Scalar::Float(0.0),
            Backend::Exact => Scalar::Exact(BigRational::zero()),
            Backend::Interval => Scalar::Interval(Interval::point(BigRational::zero())),
        }
    }

    pub fn one(backend: Backend) -> Scalar {
        Scalar::from_ratio(&BigRational::one(), backend).expect("one is finite")
    }

    pub fn backend(&self) -> Backend {
        match self {
            Scalar::Float(_) => Backend::Float,
            Scalar::Exact(_) => Backend::Exact,
            Scalar::Interval(_) => Backend::Interval,
        }
    }

    pub fn add(&self, rhs: &Scalar) -> Result<Scalar> {
        dispatch_binary!(self, rhs, a, b => Real::add(a, b).into_scalar())
    }

    pub fn sub(&self, rhs: &Scalar) -> Result<Scalar> {
        dispatch_binary!(self, rhs, a, b => Real::sub(a, b).into_scalar())
    }

    pub fn mul(&self, rhs: &Scalar) -> Result<Scalar> {
        dispatch_binary!(self, rhs, a, b => Real::mul(a, b).into_scalar())
    }

    pub fn div(&self, rhs: &Scalar) -> Result<Scalar> {
        dispatch_binary!(self, rhs, a, b => Real::div(a, b)?.into_scalar())
    }

    /// Backend-exact ordering; mixed backends are a usage error.
    pub fn compare(&self, rhs: &Scalar) -> Result<RealOrdering> {
        dispatch_binary!(self, rhs, a, b => Real::compare(a, b))
    }

    /// Nearest float for the rational backends, midpoint for intervals.
    pub fn to_f64(&self) -> Result<f64> {
        match self {
            Scalar::Float(x) => Real::to_f64(x),
            Scalar::Exact(r) => Real::to_f64(r),
            Scalar::Interval(i) => Real::to_f64(i),
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Float(x) => *x < 0.0,
            Scalar::Exact(r) => r.is_negative(),
            Scalar::Interval(i) => i.hi().is_negative(),
        }
    }

    /// The exact textual form: `num/den` for rationals, `[lo,hi]` for
    /// intervals, `None` for floats.
    pub fn exact_string(&self) -> Option<String> {
        match self {
            Scalar::Float(_) => None,
            Scalar::Exact(r) => Some(format_ratio(r)),
            Scalar::Interval(i) => Some(i.to_string()),
        }
    }

    /// Shortest round-trip decimal of the float value (midpoint for
    /// intervals).
    pub fn decimal_string(&self) -> String {
        match self.to_f64() {
            Ok(x) => format!("{x:?}"),
            Err(_) => "inf".to_string(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Float(x) => write!(f, "{x:?}"),
            Scalar::Exact(r) => f.write_str(&format_ratio(r)),
            Scalar::Interval(i) => write!(f, "{i}"),
        }
    }
}

// JSON form: floats are numbers, rationals are "num/den" strings, intervals
// are {"lo": "num/den", "hi": "num/den"}.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ScalarRepr {
    Float(f64),
    Exact(String),
    Interval { lo: String, hi: String },
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let repr = match self {
            Scalar::Float(x) => ScalarRepr::Float(*x),
            Scalar::Exact(r) => ScalarRepr::Exact(format_ratio(r)),
            Scalar::Interval(i) => ScalarRepr::Interval {
                lo: format_ratio(i.lo()),
                hi: format_ratio(i.hi()),
            },
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        Ok(match ScalarRepr::deserialize(deserializer)? {
            ScalarRepr::Float(x) => Scalar::Float(x),
            ScalarRepr::Exact(s) => Scalar::Exact(parse_ratio(&s).map_err(D::Error::custom)?),
            ScalarRepr::Interval { lo, hi } => {
                let lo = parse_ratio(&lo).map_err(D::Error::custom)?;
                let hi = parse_ratio(&hi).map_err(D::Error::custom)?;
                Scalar::Interval(Interval::new(lo, hi).map_err(D::Error::custom)?)
            }
        })
    }
}
