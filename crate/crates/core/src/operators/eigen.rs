//! Sturm-sequence counting and bisection for symmetric tridiagonal matrices.

use rayon::prelude::*;

use super::JacobiMatrix;
use crate::error::{Error, Result};

pub const DEFAULT_EIGEN_TOL: f64 = 1e-12;

/// Number of eigenvalues below `x`: the count of negative pivots in the
/// `LDL^T` factorization of `M - xI`. A vanishing pivot is nudged negative,
/// so an eigenvalue sitting exactly on `x` may be counted; use
/// [`super::exact::inertia`] when that distinction matters.
pub fn count_below(m: &JacobiMatrix, x: f64) -> usize {
    let s = Sturm::new(m);
    s.counts(&[x; LANES])[0]
}

/// Shifts evaluated per pass. The pivot recurrence is a serial chain of
/// divisions; running independent shifts side by side keeps the divider busy.
const LANES: usize = 16;

struct Sturm<'a> {
    a: &'a [f64],
    b2: Vec<f64>,
    pivmin: f64,
}

impl<'a> Sturm<'a> {
    fn new(m: &'a JacobiMatrix) -> Self {
        let b2: Vec<f64> = m.off_diagonal().iter().map(|v| v * v).collect();
        let max_b2 = b2.iter().copied().fold(0.0, f64::max);
        Sturm {
            a: m.diagonal(),
            b2,
            pivmin: f64::MIN_POSITIVE * max_b2.max(1.0),
        }
    }

    fn counts(&self, xs: &[f64; LANES]) -> [usize; LANES] {
        let pivmin = self.pivmin;
        let guard = |v: f64| if v.abs() < pivmin { -pivmin } else { v };
        let mut q = [0.0; LANES];
        let mut neg = [0u64; LANES];
        for l in 0..LANES {
            q[l] = guard(self.a[0] - xs[l]);
            neg[l] = u64::from(q[l] < 0.0);
        }
        for (aj, bj) in self.a[1..].iter().zip(&self.b2) {
            for l in 0..LANES {
                let v = guard((aj - xs[l]) - bj / q[l]);
                q[l] = v;
                neg[l] += u64::from(v < 0.0);
            }
        }
        neg.map(|c| c as usize)
    }
}

/// All `N` eigenvalues in nondecreasing order, each bracketed to width `tol`.
///
/// The `k`-th eigenvalue is isolated by bisection on the Gershgorin interval
/// using Sturm counts. Groups of indices are bisected in lockstep and the
/// groups run in parallel; results are merged in index order, so output is
/// deterministic.
pub fn eigenvalues(m: &JacobiMatrix, tol: f64) -> Result<Vec<f64>> {
    if !(tol > 0.0) {
        return Err(Error::Usage(format!(
            "eigenvalue tolerance must be positive, got {tol}"
        )));
    }
    let n = m.size();
    if n == 1 {
        return Ok(vec![m.diagonal()[0]]);
    }
    let (lo, hi) = m.gershgorin();
    let pad = tol.max(f64::EPSILON * lo.abs().max(hi.abs()).max(1.0));
    let (lo, hi) = (lo - pad, hi + pad);
    let sturm = Sturm::new(m);
    let starts: Vec<usize> = (0..n).step_by(LANES).collect();
    let mut eigs: Vec<f64> = starts
        .into_par_iter()
        .flat_map_iter(|first| bisect_group(&sturm, first, n.min(first + LANES), lo, hi, tol))
        .collect();
    // Brackets are independent, so enforce monotone output explicitly.
    for i in 1..eigs.len() {
        if eigs[i] < eigs[i - 1] {
            eigs[i] = eigs[i - 1];
        }
    }
    Ok(eigs)
}

/// Bisects eigenvalues `first..end` simultaneously, one per lane.
fn bisect_group(s: &Sturm, first: usize, end: usize, lo: f64, hi: f64, tol: f64) -> Vec<f64> {
    let used = end - first;
    let mut lower = [lo; LANES];
    let mut upper = [hi; LANES];
    // Invariant per lane k: count(lower) <= k < count(upper).
    let mut active = [false; LANES];
    active[..used].fill(true);
    let mut mids = [0.0; LANES];
    loop {
        for l in 0..LANES {
            if active[l] {
                let mid = 0.5 * (lower[l] + upper[l]);
                if upper[l] - lower[l] <= tol || mid <= lower[l] || mid >= upper[l] {
                    active[l] = false;
                }
                mids[l] = mid;
            }
        }
        if !active.iter().any(|a| *a) {
            break;
        }
        let counts = s.counts(&mids);
        for l in 0..used {
            if active[l] {
                if counts[l] > first + l {
                    upper[l] = mids[l];
                } else {
                    lower[l] = mids[l];
                }
            }
        }
    }
    (0..used).map(|l| 0.5 * (lower[l] + upper[l])).collect()
}
