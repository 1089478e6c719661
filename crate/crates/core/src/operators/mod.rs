//! Finite Jacobi (symmetric tridiagonal) truncations and their spectra.
//!
//! Matrices store one diagonal `a_1..a_N` and one off-diagonal
//! `b_1..b_{N-1}`, where `b_j` couples sites `j` and `j+1`. Everything here is
//! 64-bit float: square roots of the coefficients leave the rationals, so
//! entries are rounded once at build time (`sqrt` of the nearest float).
//! The [`exact`] submodule keeps the squared couplings rational for
//! certified eigenvalue counting.

mod eigen;
pub mod exact;
mod spectrum;

use serde::Serialize;

pub use eigen::{count_below, eigenvalues, DEFAULT_EIGEN_TOL};
pub use spectrum::{
    mode_frequencies, spectrum_report, Gap, IdsSample, ModeFrequency, SpectrumReport,
};

use crate::error::{Error, Result};
use crate::sequence::RSequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Bellissard,
    LambdaSeqT1,
    LambdaSeqT2,
    Dyson,
    AlmostMathieu,
    Custom,
}

impl Provenance {
    pub fn name(self) -> &'static str {
        match self {
            Provenance::Bellissard => "bellissard",
            Provenance::LambdaSeqT1 => "lambda_seq_t1",
            Provenance::LambdaSeqT2 => "lambda_seq_t2",
            Provenance::Dyson => "dyson",
            Provenance::AlmostMathieu => "almost_mathieu",
            Provenance::Custom => "custom",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JacobiMatrix {
    diagonal: Vec<f64>,
    off_diagonal: Vec<f64>,
    provenance: Provenance,
    /// Human-readable description of the truncation boundary.
    boundary: String,
}

impl JacobiMatrix {
    pub fn new(diagonal: Vec<f64>, off_diagonal: Vec<f64>, provenance: Provenance) -> Result<Self> {
        if diagonal.is_empty() {
            return Err(Error::Usage("a Jacobi matrix needs N >= 1".into()));
        }
        if off_diagonal.len() + 1 != diagonal.len() {
            return Err(Error::Usage(format!(
                "off-diagonal length {} does not match N - 1 = {}",
                off_diagonal.len(),
                diagonal.len() - 1
            )));
        }
        if diagonal.iter().chain(&off_diagonal).any(|x| !x.is_finite()) {
            return Err(Error::Domain("matrix entries must be finite".into()));
        }
        Ok(JacobiMatrix {
            diagonal,
            off_diagonal,
            provenance,
            boundary: "dirichlet".into(),
        })
    }

    fn with_boundary(mut self, boundary: &str) -> Self {
        self.boundary = boundary.to_string();
        self
    }

    pub fn size(&self) -> usize {
        self.diagonal.len()
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diagonal
    }

    pub fn off_diagonal(&self) -> &[f64] {
        &self.off_diagonal
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn boundary(&self) -> &str {
        &self.boundary
    }

    /// Gershgorin enclosure `[min_j a_j - r_j, max_j a_j + r_j]`.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.size();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for j in 0..n {
            let left = if j > 0 {
                self.off_diagonal[j - 1].abs()
            } else {
                0.0
            };
            let right = if j + 1 < n {
                self.off_diagonal[j].abs()
            } else {
                0.0
            };
            lo = lo.min(self.diagonal[j] - left - right);
            hi = hi.max(self.diagonal[j] + left + right);
        }
        (lo, hi)
    }

    /// Leading principal `n × n` block.
    pub fn truncate(&self, n: usize) -> Result<Self> {
        if n == 0 || n > self.size() {
            return Err(Error::Range(format!(
                "cannot truncate size {} to {n}",
                self.size()
            )));
        }
        Ok(JacobiMatrix {
            diagonal: self.diagonal[..n].to_vec(),
            off_diagonal: self.off_diagonal[..n - 1].to_vec(),
            provenance: self.provenance,
            boundary: self.boundary.clone(),
        })
    }
}

/// `N × N` truncation of `(Hu)(j) = sqrt(R_{j+1}) u(j+1) + sqrt(R_j) u(j-1)`
/// on sites `1..=N` with `u(0) = u(N+1) = 0`: zero diagonal and
/// `b_j = sqrt(R_{j+1})`.
pub fn build_bellissard(seq: &RSequence, n: usize) -> Result<JacobiMatrix> {
    if n == 0 {
        return Err(Error::Usage("N must be at least 1".into()));
    }
    if seq.max_index() < n {
        return Err(Error::Range(format!(
            "truncation N = {n} needs R_0..R_{n}, sequence stops at R_{}",
            seq.max_index()
        )));
    }
    let r = seq.to_f64_vec()?;
    let off = (1..n)
        .map(|j| {
            let v = r[j + 1];
            if v < 0.0 {
                Err(Error::Domain(format!("R_{} = {v} is negative", j + 1)))
            } else {
                Ok(v.sqrt())
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(JacobiMatrix::new(vec![0.0; n], off, Provenance::Bellissard)?.with_boundary("dirichlet"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OperatorKind {
    /// Whole line: a window of sites with Dirichlet cutoffs on both sides.
    T1,
    /// Half line: first row uses `λ_0 = 0`, far end is a Dirichlet cutoff.
    T2,
}

/// Builds `a_j = -(λ_{2j-1} + λ_{2j-2})`, `b_j = sqrt(λ_{2j-1} λ_{2j})` from
/// `lams = [λ_1, λ_2, ...]`.
///
/// For `T2` the rows are `j = 1..=N` with `λ_0 = 0`; this needs
/// `λ_1..λ_{2N-1}`. For `T1` the rows are a window of `N` consecutive sites
/// centred among the sites `j >= 2` whose coefficients are all available.
pub fn build_from_lambda_seq(lams: &[f64], n: usize, kind: OperatorKind) -> Result<JacobiMatrix> {
    if n == 0 {
        return Err(Error::Usage("N must be at least 1".into()));
    }
    if let Some((i, x)) = lams.iter().enumerate().find(|(_, x)| !(**x > 0.0)) {
        return Err(Error::Domain(format!(
            "lambda_{} = {x} must be positive",
            i + 1
        )));
    }
    let len = lams.len();
    let lam = |i: usize| if i == 0 { 0.0 } else { lams[i - 1] };
    let (first_site, provenance, boundary) = match kind {
        OperatorKind::T2 => {
            if len < 2 * n - 1 {
                return Err(Error::Range(format!(
                    "T2 with N = {n} needs lambda_1..lambda_{}, have {len}",
                    2 * n - 1
                )));
            }
            (
                1,
                Provenance::LambdaSeqT2,
                "free start (lambda_0 = 0), dirichlet end",
            )
        }
        OperatorKind::T1 => {
            let available = ((len + 1) / 2).saturating_sub(1);
            if n > available {
                return Err(Error::Range(format!(
                    "T1 with N = {n} needs {n} full sites, {len} lambdas give {available}"
                )));
            }
            (
                2 + (available - n) / 2,
                Provenance::LambdaSeqT1,
                "dirichlet both ends",
            )
        }
    };
    let sites = first_site..first_site + n;
    let diagonal = sites
        .clone()
        .map(|j| -(lam(2 * j - 1) + lam(2 * j - 2)))
        .collect();
    let off = sites
        .take(n - 1)
        .map(|j| (lam(2 * j - 1) * lam(2 * j)).sqrt())
        .collect();
    Ok(JacobiMatrix::new(diagonal, off, provenance)?.with_boundary(boundary))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainBoundary {
    /// End masses attached only to their single neighbour.
    Free,
    /// End masses clamped: `x_1 = x_M = 0`.
    Fixed,
}

/// A chain of `M` masses joined by `M - 1` Hooke springs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainSpec {
    masses: Vec<f64>,
    springs: Vec<f64>,
    boundary: ChainBoundary,
}

impl ChainSpec {
    pub fn new(masses: Vec<f64>, springs: Vec<f64>, boundary: ChainBoundary) -> Result<Self> {
        if masses.is_empty() {
            return Err(Error::Usage("a chain needs at least one mass".into()));
        }
        if springs.len() + 1 != masses.len() {
            return Err(Error::Usage(format!(
                "{} masses need {} springs, got {}",
                masses.len(),
                masses.len() - 1,
                springs.len()
            )));
        }
        if masses
            .iter()
            .chain(&springs)
            .any(|x| !(*x > 0.0 && x.is_finite()))
        {
            return Err(Error::Domain(
                "masses and spring constants must be positive".into(),
            ));
        }
        Ok(ChainSpec {
            masses,
            springs,
            boundary,
        })
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn springs(&self) -> &[f64] {
        &self.springs
    }

    pub fn boundary(&self) -> ChainBoundary {
        self.boundary
    }
}

/// `λ_{2j-1} = K_j / m_j`, `λ_{2j} = K_j / m_{j+1}` for `j = 1..M-1`.
pub fn dyson_map(chain: &ChainSpec) -> Vec<f64> {
    chain
        .springs
        .iter()
        .enumerate()
        .flat_map(|(j, k)| [k / chain.masses[j], k / chain.masses[j + 1]])
        .collect()
}

/// Normal-mode matrix of a chain in the variables `y_j = x_j sqrt(m_j)`.
///
/// Free ends keep all `M` sites with `λ_0 = λ_{2M-1} = 0`. Fixed ends clamp
/// the two end masses, leaving the interior sites `2..=M-1`.
pub fn build_dyson(chain: &ChainSpec) -> Result<JacobiMatrix> {
    let lams = dyson_map(chain);
    let m = chain.masses.len();
    match chain.boundary {
        ChainBoundary::Free => {
            let lam = |i: usize| {
                if i == 0 || i > lams.len() {
                    0.0
                } else {
                    lams[i - 1]
                }
            };
            let diagonal = (1..=m)
                .map(|j| -(lam(2 * j - 1) + lam(2 * j - 2)))
                .collect();
            let off = (1..m)
                .map(|j| (lam(2 * j - 1) * lam(2 * j)).sqrt())
                .collect();
            Ok(JacobiMatrix::new(diagonal, off, Provenance::Dyson)?.with_boundary("free ends"))
        }
        ChainBoundary::Fixed => {
            if m < 3 {
                return Err(Error::Usage(
                    "a clamped chain needs at least 3 masses".into(),
                ));
            }
            let mut mat = build_from_lambda_seq(&lams, m - 2, OperatorKind::T1)?;
            mat.provenance = Provenance::Dyson;
            Ok(mat.with_boundary("fixed ends"))
        }
    }
}

/// `b_j = 1`, `a_j = coupling · cos 2π(θ - α j)` for `j = 1..=N`.
pub fn build_almost_mathieu(
    coupling: f64,
    alpha: f64,
    theta: f64,
    n: usize,
) -> Result<JacobiMatrix> {
    if n == 0 {
        return Err(Error::Usage("N must be at least 1".into()));
    }
    let diagonal = (1..=n)
        .map(|j| coupling * (std::f64::consts::TAU * (theta - alpha * j as f64)).cos())
        .collect();
    JacobiMatrix::new(diagonal, vec![1.0; n - 1], Provenance::AlmostMathieu)
}
