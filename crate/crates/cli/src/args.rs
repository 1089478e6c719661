use std::path::PathBuf;

use bellissard::Backend;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "bellissard",
    version,
    about = "Bellissard R_n sequence: generation, bound certification and Jacobi spectra",
    after_help = "Exit status: 0 success, 1 usage or domain error, 2 violations found.\n\
                  BELLISSARD_EXACT_CAP overrides the exact-backend index cap."
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Sequence parameter, a decimal string (parsed exactly)
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = BackendArg::Float)]
    pub backend: BackendArg,
    /// Largest sequence index / matrix size
    #[arg(short = 'N', global = true, default_value_t = 1024)]
    pub n: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of standard output
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Tolerance override (margin, residual or stability tolerance)
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub tol: Option<f64>,
    /// Allow lambda <= 2
    #[arg(long = "unproven-regime", global = true)]
    pub unproven_regime: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Float,
    Exact,
    Interval,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Backend {
        match b {
            BackendArg::Float => Backend::Float,
            BackendArg::Exact => Backend::Exact,
            BackendArg::Interval => Backend::Interval,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundaryArg {
    Free,
    Fixed,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate R_0..R_N
    Gen,
    /// Check the four residue-class bounds
    Verify,
    /// Check the defining and derived recurrence identities
    Identities,
    /// Check the conjectured windows [R0,R4], [R6,R2], [R3,R7], [R5,R1]
    Conjecture,
    /// Check that R_{k 2^r + n} lies between R_n and R_{2^r + n}
    Splitting {
        #[arg(short = 'r', long, default_value_t = 2)]
        r: u32,
        /// Largest multiplier k (default: as large as N allows)
        #[arg(long)]
        k_max: Option<usize>,
    },
    /// Run the conjecture check over a lambda grid
    Scan {
        #[arg(long)]
        lo: String,
        #[arg(long)]
        hi: String,
        #[arg(long)]
        step: String,
        /// Work budget in points × N × backend weight
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Check 0 < R_{2n} < R_n and R_{2n} <= 1
    Prop1,
    /// Sample R_{p 2^k}
    Decay {
        /// Odd base
        #[arg(long, default_value_t = 1)]
        p: usize,
        #[arg(long)]
        k_max: Option<usize>,
    },
    /// Sample |R_{p 2^k + s} - R_s| for every listed (p, s)
    Limits {
        #[arg(long, value_delimiter = ',', default_value = "1")]
        p: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        s: Vec<usize>,
        #[arg(long)]
        k_max: Option<usize>,
    },
    /// Spectrum of the N × N truncation of H
    Spectrum {
        #[command(flatten)]
        spec: SpectrumArgs,
        /// Also write the matrix as CSV (j, a_j, b_j)
        #[arg(long)]
        matrix_out: Option<PathBuf>,
    },
    /// Normal modes of a mass-spring chain read from CSV (m, K)
    Dyson {
        #[arg(long)]
        chain: PathBuf,
        #[arg(long, value_enum, default_value_t = BoundaryArg::Free)]
        boundary: BoundaryArg,
        #[command(flatten)]
        spec: SpectrumArgs,
    },
    /// Spectrum of the N × N almost Mathieu truncation
    Mathieu {
        #[arg(long, allow_hyphen_values = true)]
        coupling: f64,
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        theta: f64,
        #[command(flatten)]
        spec: SpectrumArgs,
    },
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    #[arg(long, default_value_t = 0.01)]
    pub gap_threshold: f64,
    /// Number of energies at which the IDS is sampled
    #[arg(long, default_value_t = 101)]
    pub ids_resolution: usize,
    /// Bisection width per eigenvalue
    #[arg(long, default_value_t = bellissard::operators::DEFAULT_EIGEN_TOL)]
    pub eig_tol: f64,
}
