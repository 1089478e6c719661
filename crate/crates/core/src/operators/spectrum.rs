use serde::Serialize;

use super::{JacobiMatrix, Provenance};
use crate::error::{Error, Result};

/// A spectral gap `(lo, hi)` between consecutive eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Gap {
    pub lo: f64,
    pub hi: f64,
    pub width: f64,
}

/// Integrated density of states `#{eigenvalues <= energy} / N`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdsSample {
    pub energy: f64,
    pub ids: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModeFrequency {
    pub eigenvalue: f64,
    /// `sqrt(-eigenvalue)`; absent for unstable modes.
    pub frequency: Option<f64>,
    pub unstable: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub eigenvalues: Vec<f64>,
    pub gaps: Vec<Gap>,
    pub ids: Vec<IdsSample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode_frequencies: Option<Vec<ModeFrequency>>,
}

/// Gaps wider than `gap_threshold` and the IDS on `ids_resolution` evenly
/// spaced energies spanning the spectrum. `eigs` must be sorted.
pub fn spectrum_report(
    eigs: &[f64],
    gap_threshold: f64,
    ids_resolution: usize,
) -> Result<SpectrumReport> {
    if eigs.iter().any(|e| !e.is_finite()) {
        return Err(Error::Usage("eigenvalues must be finite".into()));
    }
    if eigs.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::Usage("eigenvalues must be sorted ascending".into()));
    }
    if !(gap_threshold >= 0.0) {
        return Err(Error::Usage("gap threshold must be nonnegative".into()));
    }
    let gaps = eigs
        .windows(2)
        .filter(|w| w[1] - w[0] > gap_threshold)
        .map(|w| Gap {
            lo: w[0],
            hi: w[1],
            width: w[1] - w[0],
        })
        .collect();
    let ids = match (eigs.first(), eigs.last()) {
        (Some(&lo), Some(&hi)) if ids_resolution > 0 => {
            let n = eigs.len() as f64;
            let steps = ids_resolution.saturating_sub(1).max(1) as f64;
            let points = if lo == hi { 1 } else { ids_resolution };
            (0..points)
                .map(|i| {
                    let energy = if i + 1 == points {
                        hi
                    } else {
                        lo + (hi - lo) * i as f64 / steps
                    };
                    let count = eigs.partition_point(|e| *e <= energy);
                    IdsSample {
                        energy,
                        ids: count as f64 / n,
                    }
                })
                .collect()
        }
        _ => Vec::new(),
    };
    Ok(SpectrumReport {
        eigenvalues: eigs.to_vec(),
        gaps,
        ids,
        mode_frequencies: None,
    })
}

/// Normal-mode frequencies `E = sqrt(-μ)` for a chain-derived matrix.
/// Eigenvalues above `tol` are flagged unstable.
pub fn mode_frequencies(m: &JacobiMatrix, eigs: &[f64], tol: f64) -> Result<Vec<ModeFrequency>> {
    match m.provenance() {
        Provenance::Dyson | Provenance::LambdaSeqT1 | Provenance::LambdaSeqT2 => {}
        other => {
            return Err(Error::Usage(format!(
                "mode frequencies need a chain-derived matrix, got {}",
                other.name()
            )))
        }
    }
    Ok(eigs
        .iter()
        .map(|&mu| {
            let unstable = mu > tol;
            ModeFrequency {
                eigenvalue: mu,
                frequency: (!unstable).then(|| (-mu).max(0.0).sqrt()),
                unstable,
            }
        })
        .collect())
}
