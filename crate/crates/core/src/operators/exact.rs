//! Certified eigenvalue counting over the rationals.
//!
//! A Jacobi matrix with rational diagonal and rational *squared* couplings
//! has a characteristic polynomial with rational coefficients, so the signs
//! of its leading principal minors at a rational point are decidable. This
//! sidesteps the square roots in `b_j` entirely.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sequence::RSequence;

/// Eigenvalue counts relative to a point `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Inertia {
    pub below: usize,
    pub zero: usize,
    pub above: usize,
}

/// Inertia of `M - xI` for the Jacobi matrix with diagonal `diag` and
/// squared off-diagonal `off_sq`.
///
/// Within each irreducible block the minors
/// `D_j = (a_j - x) D_{j-1} - b_{j-1}^2 D_{j-2}` form a Sturm sequence: the
/// number of sign changes (zeros skipped) counts eigenvalues below `x`, and
/// `D_m = 0` marks a simple eigenvalue at `x`.
pub fn inertia(diag: &[BigRational], off_sq: &[BigRational], x: &BigRational) -> Result<Inertia> {
    if diag.is_empty() || off_sq.len() + 1 != diag.len() {
        return Err(Error::Usage(
            "need N >= 1 diagonal and N - 1 squared couplings".into(),
        ));
    }
    if off_sq.iter().any(|b| b.is_negative()) {
        return Err(Error::Domain(
            "squared couplings must be nonnegative".into(),
        ));
    }
    let mut total = Inertia {
        below: 0,
        zero: 0,
        above: 0,
    };
    let mut start = 0;
    for end in 1..=diag.len() {
        if end == diag.len() || off_sq[end - 1].is_zero() {
            let block = block_inertia(&diag[start..end], &off_sq[start..end - 1], x);
            total.below += block.below;
            total.zero += block.zero;
            total.above += block.above;
            start = end;
        }
    }
    Ok(total)
}

fn block_inertia(diag: &[BigRational], off_sq: &[BigRational], x: &BigRational) -> Inertia {
    let m = diag.len();
    let mut prev2 = BigRational::zero();
    let mut prev = BigRational::from_integer(1.into());
    let mut last_sign = 1i8;
    let mut changes = 0;
    for j in 0..m {
        let mut d = (&diag[j] - x) * &prev;
        if j > 0 {
            d -= &off_sq[j - 1] * &prev2;
        }
        let s = sign(&d);
        // the final minor is excluded when it vanishes: that root sits at x
        if s != 0 {
            if s != last_sign {
                changes += 1;
            }
            last_sign = s;
        }
        prev2 = std::mem::replace(&mut prev, d);
    }
    let zero = usize::from(prev.is_zero());
    Inertia {
        below: changes,
        zero,
        above: m - changes - zero,
    }
}

fn sign(x: &BigRational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Inertia at `x` of the `N × N` truncation of the sequence operator, whose
/// squared couplings are `R_2..R_N` exactly. Requires the exact backend.
pub fn bellissard_inertia(seq: &RSequence, n: usize, x: &BigRational) -> Result<Inertia> {
    if n == 0 {
        return Err(Error::Usage("N must be at least 1".into()));
    }
    if seq.max_index() < n {
        return Err(Error::Range(format!(
            "truncation N = {n} needs R_0..R_{n}, sequence stops at R_{}",
            seq.max_index()
        )));
    }
    let off_sq = (2..=n)
        .map(|j| {
            seq.get(j)
                .and_then(|v| v.as_exact().cloned())
                .ok_or_else(|| Error::Usage("exact inertia needs the exact backend".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    inertia(&vec![BigRational::zero(); n], &off_sq, x)
}
