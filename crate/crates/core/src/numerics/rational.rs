//! Reduced-rational arithmetic for the exact backend's hot paths.
//!
//! `num-rational` reduces every result with `num-bigint`'s binary gcd, whose
//! cost on operands of tens of thousands of bits dominates exact sequence
//! generation, and orders ratios by a continued-fraction walk. These helpers
//! keep results in lowest terms with fewer and cheaper gcds (Henrici's
//! formulas plus a Lehmer gcd) and compare by cross multiplication.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Greatest common divisor of `|a|` and `|b|`.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    BigInt::from(gcd_uint(a.magnitude().clone(), b.magnitude().clone()))
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Lehmer's algorithm: run Euclid on the leading 63 bits and apply the
/// accumulated cofactors to the full numbers while the quotients agree.
fn gcd_uint(mut a: BigUint, mut b: BigUint) -> BigUint {
    if a < b {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let a_bits = a.bits();
        if a_bits <= 64 {
            let (x, y) = (a.to_u64().expect("fits"), b.to_u64().expect("fits"));
            return BigUint::from(gcd_u64(x, y));
        }
        if a_bits - b.bits() > 32 {
            let r = &a % &b;
            a = std::mem::replace(&mut b, r);
            continue;
        }
        let shift = a_bits - 63;
        let mut x = i128::from((&a >> shift).to_u64().expect("63 bits"));
        let mut y = i128::from((&b >> shift).to_u64().expect("63 bits"));
        let (mut ca, mut cb, mut cc, mut cd) = (1i128, 0i128, 0i128, 1i128);
        while y + cc != 0 && y + cd != 0 {
            let q = (x + ca) / (y + cc);
            if q != (x + cb) / (y + cd) {
                break;
            }
            (ca, cc) = (cc, ca - q * cc);
            (cb, cd) = (cd, cb - q * cd);
            (x, y) = (y, x - q * y);
        }
        if cb == 0 {
            let r = &a % &b;
            a = std::mem::replace(&mut b, r);
        } else {
            let (ai, bi) = (BigInt::from(a), BigInt::from(b));
            let na = &ai * ca + &bi * cb;
            let nb = &ai * cc + &bi * cd;
            debug_assert!(!na.is_negative() && !nb.is_negative());
            a = na.into_parts().1;
            b = nb.into_parts().1;
        }
    }
    a
}

fn raw(numer: BigInt, denom: BigInt) -> BigRational {
    if numer.is_zero() {
        return BigRational::zero();
    }
    if denom.sign() == Sign::Minus {
        BigRational::new_raw(-numer, -denom)
    } else {
        BigRational::new_raw(numer, denom)
    }
}

/// `x + y` in lowest terms, given both operands in lowest terms.
pub fn add(x: &BigRational, y: &BigRational) -> BigRational {
    let (a, b, c, d) = (x.numer(), x.denom(), y.numer(), y.denom());
    if a.is_zero() {
        return y.clone();
    }
    if c.is_zero() {
        return x.clone();
    }
    let g = gcd(b, d);
    if g.is_one() {
        return raw(a * d + c * b, b * d);
    }
    let t = a * (d / &g) + c * (b / &g);
    if t.is_zero() {
        return BigRational::zero();
    }
    let g2 = gcd(&t, &g);
    raw(t / &g2, (b / &g) * (d / &g2))
}

pub fn sub(x: &BigRational, y: &BigRational) -> BigRational {
    add(x, &-y)
}

pub fn mul(x: &BigRational, y: &BigRational) -> BigRational {
    let (a, b, c, d) = (x.numer(), x.denom(), y.numer(), y.denom());
    if a.is_zero() || c.is_zero() {
        return BigRational::zero();
    }
    let g1 = gcd(a, d);
    let g2 = gcd(c, b);
    raw((a / &g1) * (c / &g2), (b / &g2) * (d / &g1))
}

/// `x / y`; `y` must be nonzero.
pub fn div(x: &BigRational, y: &BigRational) -> BigRational {
    assert!(!y.is_zero(), "division by zero");
    mul(x, &raw(y.denom().clone(), y.numer().clone()))
}

/// Ordering by the sign of the cross product; denominators are positive.
pub fn cmp(x: &BigRational, y: &BigRational) -> Ordering {
    let (sx, sy) = (x.numer().sign(), y.numer().sign());
    if sx != sy {
        return sx.cmp(&sy);
    }
    if x.denom() == y.denom() {
        return x.numer().cmp(y.numer());
    }
    (x.numer() * y.denom()).cmp(&(y.numer() * x.denom()))
}
