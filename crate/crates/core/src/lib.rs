//! Mutually unbiased bases built from circulant matrices and the discrete
//! Fourier transform, together with numerical verification of the matrix,
//! sequence and Gauss-sum identities behind them.
//!
//! Phases are kept as exact integers modulo `2d` ([`phase_ring`]); complex
//! values only appear when a matrix is materialized.

pub mod error;
pub mod gauss;
pub mod linalg;
pub mod mub;
pub mod phase_ring;
pub mod sequences;

pub use error::{MubError, Result};
pub use linalg::{default_tolerance, Check, CirculantMatrix, DenseMatrix, DiagonalMatrix};
pub use mub::{build_family, verify_family, MubFamily, Recipe, UnbiasednessReport};
pub use phase_ring::{PhaseExponent, RootTable};
pub use sequences::Sequence;
