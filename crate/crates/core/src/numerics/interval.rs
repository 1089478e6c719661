use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{format_ratio, RealOrdering};
use crate::error::{Error, Result};

/// A closed interval `[lo, hi]` with rational endpoints, `lo <= hi`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: BigRational,
    hi: BigRational,
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidInterval);
        }
        Ok(Interval { lo, hi })
    }

    pub fn point(value: BigRational) -> Self {
        Interval {
            lo: value.clone(),
            hi: value,
        }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigInt::from(2)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn add(&self, rhs: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &rhs.lo,
            hi: &self.hi + &rhs.hi,
        }
    }

    pub fn sub(&self, rhs: &Interval) -> Interval {
        Interval {
            lo: &self.lo - &rhs.hi,
            hi: &self.hi - &rhs.lo,
        }
    }

    pub fn mul(&self, rhs: &Interval) -> Interval {
        let products = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    /// Division is refused when the divisor contains zero.
    pub fn div(&self, rhs: &Interval) -> Result<Interval> {
        if rhs.contains_zero() {
            return Err(Error::DivisionByZero);
        }
        let recip = Interval {
            lo: rhs.hi.recip(),
            hi: rhs.lo.recip(),
        };
        Ok(self.mul(&recip))
    }

    pub fn abs(&self) -> Interval {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            Interval {
                lo: -self.hi.clone(),
                hi: -self.lo.clone(),
            }
        } else {
            Interval {
                lo: BigRational::zero(),
                hi: self.hi.clone().max(-self.lo.clone()),
            }
        }
    }

    pub fn compare(&self, rhs: &Interval) -> RealOrdering {
        if self.hi < rhs.lo {
            RealOrdering::Less
        } else if self.lo > rhs.hi {
            RealOrdering::Greater
        } else if self.is_point() && rhs.is_point() {
            // Overlapping points are the same point.
            RealOrdering::Equal
        } else {
            RealOrdering::Indeterminate
        }
    }

    /// Widens the endpoints outward onto the dyadic grid `2^-bits`, which keeps
    /// endpoint sizes bounded during long recursions.
    pub fn round_outward(self, bits: u32) -> Interval {
        let scale = BigInt::from(1) << bits as usize;
        let snap = |x: &BigRational, up: bool| -> BigRational {
            if x.denom() <= &scale && (&scale % x.denom()).is_zero() {
                return x.clone();
            }
            let scaled = x.numer() * &scale;
            let (q, r) = scaled.div_mod_floor(x.denom());
            let q = if up && !r.is_zero() { q + 1 } else { q };
            BigRational::new(q, scale.clone())
        };
        Interval {
            lo: snap(&self.lo, false),
            hi: snap(&self.hi, true),
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", format_ratio(&self.lo), format_ratio(&self.hi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rejects_inverted_endpoints() {
        assert_eq!(Interval::new(q(2, 1), q(1, 1)), Err(Error::InvalidInterval));
    }

    #[test]
    fn compare_cases() {
        let a = Interval::new(q(1, 1), q(2, 1)).unwrap();
        let b = Interval::new(q(3, 1), q(4, 1)).unwrap();
        assert_eq!(a.compare(&b), RealOrdering::Less);
        assert_eq!(b.compare(&a), RealOrdering::Greater);
        assert_eq!(a.compare(&a), RealOrdering::Indeterminate);
        let p = Interval::point(q(5, 7));
        assert_eq!(p.compare(&p.clone()), RealOrdering::Equal);
    }

    #[test]
    fn outward_rounding_encloses() {
        let x = Interval::point(q(1, 3));
        let r = x.round_outward(16);
        assert!(r.contains(&q(1, 3)));
        assert!(r.width() <= q(1, 1 << 16));
        assert!(r.lo().denom() <= &BigInt::from(1 << 16));
        // already dyadic: unchanged
        let d = Interval::point(q(3, 8));
        assert_eq!(d.clone().round_outward(16), d);
    }

    #[test]
    fn abs_straddling_zero() {
        let x = Interval::new(q(-3, 1), q(2, 1)).unwrap();
        assert_eq!(x.abs(), Interval::new(q(0, 1), q(3, 1)).unwrap());
    }

    fn rational() -> impl Strategy<Value = BigRational> {
        (-500i64..500, 1i64..200).prop_map(|(n, d)| q(n, d))
    }

    fn around(x: BigRational) -> impl Strategy<Value = (BigRational, Interval)> {
        (0i64..50, 0i64..50, 1i64..100).prop_map(move |(a, b, d)| {
            let lo = &x - q(a, d);
            let hi = &x + q(b, d);
            (x.clone(), Interval::new(lo, hi).unwrap())
        })
    }

    proptest! {
        #[test]
        fn operations_enclose_exact_results(
            (x, ix) in rational().prop_flat_map(around),
            (y, iy) in rational().prop_flat_map(around),
            bits in 4u32..64,
        ) {
            prop_assert!(ix.add(&iy).contains(&(&x + &y)));
            prop_assert!(ix.sub(&iy).contains(&(&x - &y)));
            prop_assert!(ix.mul(&iy).contains(&(&x * &y)));
            prop_assert!(ix.mul(&iy).round_outward(bits).contains(&(&x * &y)));
            match ix.div(&iy) {
                Ok(z) => {
                    prop_assert!(z.contains(&(&x / &y)));
                    prop_assert!(z.round_outward(bits).contains(&(&x / &y)));
                }
                Err(e) => {
                    prop_assert_eq!(e, Error::DivisionByZero);
                    prop_assert!(iy.contains_zero());
                }
            }
        }
    }
}
