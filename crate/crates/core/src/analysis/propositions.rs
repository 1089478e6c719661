use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{Real, Scalar};
use crate::sequence::{with_values, RSequence};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceSample {
    pub k: usize,
    pub index: usize,
    pub value: Scalar,
    /// `|value - limit|` as a float.
    pub deviation: f64,
}

/// Samples of `R_{p 2^k + s}` against the limit `R_s`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub p: usize,
    pub s: usize,
    pub k_max: usize,
    pub limit: Scalar,
    pub samples: Vec<ConvergenceSample>,
    /// Deviations strictly decrease over the final half of the samples.
    pub monotone_tail: bool,
    /// Least-squares slope of `ln(deviation)` against `k` over the final
    /// half of the samples; absent if a deviation there is zero or there are
    /// fewer than two points.
    pub estimated_rate: Option<f64>,
}

impl ConvergenceReport {
    pub fn deviations(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.deviation).collect()
    }
}

/// Samples `R_{p 2^k}` for `k = 0..=k_max`; these tend to 0.
pub fn proposition_decay(seq: &RSequence, p: usize, k_max: usize) -> Result<ConvergenceReport> {
    if p % 2 == 0 {
        return Err(Error::Usage(format!("decay base p must be odd, got {p}")));
    }
    proposition_limit(seq, p, 0, k_max)
}

/// Samples `|R_{p 2^k + s} - R_s|` for `k = 0..=k_max`.
pub fn proposition_limit(
    seq: &RSequence,
    p: usize,
    s: usize,
    k_max: usize,
) -> Result<ConvergenceReport> {
    if p == 0 {
        return Err(Error::Usage("p must be positive".into()));
    }
    let top = u32::try_from(k_max)
        .ok()
        .and_then(|k| 1usize.checked_shl(k))
        .and_then(|pow| pow.checked_mul(p))
        .and_then(|x| x.checked_add(s))
        .filter(|&x| x <= seq.max_index())
        .ok_or_else(|| {
            Error::Range(format!(
                "p·2^k_max + s exceeds N = {} (p={p}, s={s}, k_max={k_max})",
                seq.max_index()
            ))
        })?;
    debug_assert!(top <= seq.max_index());
    let samples = with_values!(seq, |vals, _lam| sample_in(vals, p, s, k_max)?);
    let limit = seq.get(s).expect("s <= top <= N");
    let deviations: Vec<f64> = samples.iter().map(|s| s.deviation).collect();
    let tail = &deviations[deviations.len() / 2..];
    let monotone_tail = tail.len() >= 2 && tail.windows(2).all(|w| w[1] < w[0]);
    let first_k = deviations.len() / 2;
    let estimated_rate = log_linear_slope(first_k, tail);
    Ok(ConvergenceReport {
        p,
        s,
        k_max,
        limit,
        samples,
        monotone_tail,
        estimated_rate,
    })
}

fn sample_in<T: Real>(r: &[T], p: usize, s: usize, k_max: usize) -> Result<Vec<ConvergenceSample>> {
    (0..=k_max)
        .map(|k| {
            let index = (p << k) + s;
            let value = &r[index];
            let deviation = value.sub(&r[s]).abs().to_f64()?;
            Ok(ConvergenceSample {
                k,
                index,
                value: value.clone().into_scalar(),
                deviation,
            })
        })
        .collect()
}

fn log_linear_slope(first_k: usize, ys: &[f64]) -> Option<f64> {
    if ys.len() < 2 || ys.iter().any(|&y| !(y > 0.0)) {
        return None;
    }
    let pts: Vec<(f64, f64)> = ys
        .iter()
        .enumerate()
        .map(|(i, y)| ((first_k + i) as f64, y.ln()))
        .collect();
    let m = pts.len() as f64;
    let mean_x = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let mean_y = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mean_x) * (y - mean_y)).sum();
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mean_x).powi(2)).sum();
    Some(sxy / sxx)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UniformityRow {
    pub k: usize,
    pub max_deviation: f64,
    /// The `(p, s)` pair attaining `max_deviation` (first in batch order).
    pub worst: (usize, usize),
}

/// Worst-case deviation at each `k` over a batch of `(p, s)` pairs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UniformityTable {
    pub pairs: Vec<(usize, usize)>,
    pub k_max: usize,
    pub rows: Vec<UniformityRow>,
    pub reports: Vec<ConvergenceReport>,
}

pub fn limit_uniformity(
    seq: &RSequence,
    pairs: &[(usize, usize)],
    k_max: usize,
) -> Result<UniformityTable> {
    let reports = pairs
        .par_iter()
        .map(|&(p, s)| proposition_limit(seq, p, s, k_max))
        .collect::<Result<Vec<_>>>()?;
    let rows = (0..=k_max)
        .map(|k| {
            let mut best = UniformityRow {
                k,
                max_deviation: f64::NEG_INFINITY,
                worst: (0, 0),
            };
            for rep in &reports {
                let d = rep.samples[k].deviation;
                if d > best.max_deviation {
                    best.max_deviation = d;
                    best.worst = (rep.p, rep.s);
                }
            }
            best
        })
        .collect();
    Ok(UniformityTable {
        pairs: pairs.to_vec(),
        k_max,
        rows,
        reports,
    })
}
