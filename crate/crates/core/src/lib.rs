//! Coefficient sequence of Bellissard's half-line Jacobi operator
//! `(Hu)(j) = sqrt(R_{j+1}) u(j+1) + sqrt(R_j) u(j-1)`, bound certification
//! for its residue classes mod 4, and spectra of finite Jacobi truncations.

pub mod analysis;
pub mod error;
pub mod numerics;
pub mod operators;
pub mod sequence;

pub use error::{Error, Result};
pub use numerics::{parse_decimal, Backend, Interval, Real, RealOrdering, Scalar};
pub use operators::{
    build_almost_mathieu, build_bellissard, build_dyson, build_from_lambda_seq, dyson_map,
    eigenvalues, spectrum_report, ChainBoundary, ChainSpec, JacobiMatrix, OperatorKind, Provenance,
    SpectrumReport,
};
pub use sequence::{
    closed_form, generate, verify_recurrences, GenerateOptions, LambdaParam, RSequence,
};
