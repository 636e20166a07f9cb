//! Command-line front end for `mub-core`: building families, verification
//! sweeps and report emission.
//!
//! Exit codes: 0 when every check passes, 1 on any failed check, 2 on a
//! usage or configuration error.

pub mod commands;
pub mod range;
pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub use range::IntRange;
pub use report::{CheckRecord, ReportDocument};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const TOL_ENV: &str = "MUB_DEFAULT_TOL";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "mub", version, about = "Build and verify mutually unbiased bases from circulant matrices")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GlobalOpts {
    /// Absolute tolerance for every check (default: 1e-9·√d, or $MUB_DEFAULT_TOL).
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,

    /// Worker threads for independent checks.
    #[arg(long, default_value_t = 1, global = true)]
    pub parallelism: usize,

    /// Largest dimension for which dense matrices are materialized.
    #[arg(long, default_value_t = mub_core::linalg::DEFAULT_DENSE_CAP, global = true)]
    pub dense_cap: usize,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub output: Option<PathBuf>,

    /// Omit wall-clock timings so reports are byte-for-byte reproducible.
    #[arg(long, global = true)]
    pub no_timings: bool,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(rename_all = "lowercase", tag = "command")]
pub enum Command {
    /// Build the MUB family for one dimension and print its matrices.
    Build {
        #[arg(long = "dim")]
        dim: i64,
    },
    /// Verify families and matrix identities over a range of dimensions.
    Verify {
        #[arg(long)]
        dims: IntRange,
        /// Only probe the expected non-Hadamard square of R in even dimension.
        #[arg(long, value_enum)]
        expect_negative: Option<NegativeProbe>,
    },
    /// Gauss-sum identity sweeps.
    Gauss {
        #[command(subcommand)]
        mode: GaussMode,
    },
    /// Bi-unimodularity of named sequences.
    Seq {
        #[command(subcommand)]
        kind: SeqKind,
    },
    /// Exhaustive search for bi-unimodular sequences over an alphabet of roots of unity.
    Search {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        alphabet: usize,
    },
    /// Families, structural identities, Gauss sums and sequences for each dimension.
    Sweep {
        #[arg(long)]
        dims: IntRange,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NegativeProbe {
    RSquared,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(rename_all = "lowercase", tag = "mode")]
pub enum GaussMode {
    /// |Σ_k ω^{l k(k+1)/2 + jk}| = √d for odd d.
    Identity {
        #[arg(long)]
        d: IntRange,
        /// Multipliers l (default: every l in 1..d-1 coprime with d).
        #[arg(long, allow_hyphen_values = true)]
        l: Option<IntRange>,
        #[arg(long)]
        allow_noncoprime: bool,
    },
    /// Reciprocity evaluation against direct summation.
    Reciprocity {
        #[arg(long, allow_hyphen_values = true)]
        a: IntRange,
        #[arg(long)]
        d: IntRange,
        /// Linear coefficients (default: -2d..2d).
        #[arg(long, allow_hyphen_values = true)]
        b: Option<IntRange>,
    },
    /// |Σ_k exp(iπk²/d)| = √d for even d.
    Even {
        #[arg(long)]
        d: IntRange,
    },
    /// |Tr D^k| = √d for odd d.
    #[command(name = "trace-d", alias = "traceD")]
    TraceD {
        #[arg(long)]
        d: IntRange,
        #[arg(long, allow_hyphen_values = true)]
        k: Option<IntRange>,
        #[arg(long)]
        allow_noncoprime: bool,
    },
    /// Paired direct and reciprocal modulus conditions for odd prime d.
    Prop38 {
        #[arg(long)]
        d: IntRange,
        #[arg(long)]
        k: Option<IntRange>,
    },
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum SeqKind {
    /// Gauss sequences g^(k)_j = ω^{k j(j+1)/2}, odd d.
    Gauss {
        #[arg(long)]
        d: usize,
        #[arg(long, allow_hyphen_values = true)]
        k: IntRange,
    },
    /// The half-power sequence ω^{-j²/2}, even d.
    Square {
        #[arg(long)]
        d: usize,
    },
}

/// A configuration or usage problem; maps to exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

impl From<mub_core::MubError> for UsageError {
    fn from(e: mub_core::MubError) -> Self {
        UsageError(e.to_string())
    }
}

pub fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

/// Tolerance source: an explicit absolute value, or `1e-9·√d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    fixed: Option<f64>,
}

impl Tolerance {
    /// `--tol` wins over `MUB_DEFAULT_TOL`.
    pub fn resolve(flag: Option<f64>, env: Option<&str>) -> Result<Self, UsageError> {
        let fixed = match (flag, env) {
            (Some(t), _) => Some(t),
            (None, Some(raw)) => Some(
                raw.trim()
                    .parse::<f64>()
                    .map_err(|e| usage(format!("{TOL_ENV}={raw:?} is not a number: {e}")))?,
            ),
            (None, None) => None,
        };
        if let Some(t) = fixed {
            if !(t > 0.0 && t.is_finite()) {
                return Err(usage(format!("tolerance must be positive, got {t}")));
            }
        }
        Ok(Tolerance { fixed })
    }

    pub fn for_dim(&self, d: usize) -> f64 {
        self.fixed
            .unwrap_or_else(|| mub_core::default_tolerance(d.max(1)))
    }

    pub fn fixed(&self) -> Option<f64> {
        self.fixed
    }
}

/// Rendered output and the exit code it implies.
#[derive(Debug)]
pub struct Outcome {
    pub body: String,
    pub exit_code: i32,
}

pub fn run(cli: &Cli, env_tol: Option<&str>) -> Result<Outcome, UsageError> {
    let tol = Tolerance::resolve(cli.global.tol, env_tol)?;
    if cli.global.parallelism == 0 {
        return Err(usage("--parallelism must be at least 1"));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.global.parallelism)
        .build()
        .map_err(|e| usage(format!("cannot start worker pool: {e}")))?;
    pool.install(|| commands::dispatch(cli, tol))
}
