//! Dense, circulant and diagonal complex matrices, the named matrix builders,
//! and the unitarity and Hadamard predicates.

mod builders;
mod circulant;
mod dense;
mod diagonal;
pub mod identities;

pub use builders::{
    alpha, build_d, build_dprime, build_fourier, build_pk, build_r, build_u, build_v, build_w,
};
pub use circulant::CirculantMatrix;
pub use dense::DenseMatrix;
pub use diagonal::DiagonalMatrix;

/// Dense materialization limit used when no explicit cap is given.
pub const DEFAULT_DENSE_CAP: usize = 512;

/// Default tolerance for modulus and unitarity checks: `1e-9 · √d`.
pub fn default_tolerance(d: usize) -> f64 {
    1e-9 * (d as f64).sqrt()
}

/// Outcome of a tolerance check, keeping the measured deviation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Check {
    pub passed: bool,
    pub deviation: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn new(deviation: f64, tolerance: f64) -> Self {
        Check {
            passed: deviation <= tolerance,
            deviation,
            tolerance,
        }
    }

    /// Combines two checks; the result fails if either does and reports the
    /// worse deviation.
    pub fn and(self, other: Check) -> Check {
        Check {
            passed: self.passed && other.passed,
            deviation: self.deviation.max(other.deviation),
            tolerance: self.tolerance.min(other.tolerance),
        }
    }
}

/// Product of two circulants by cyclic convolution of their first columns.
pub fn circulant_multiply(a: &CirculantMatrix, b: &CirculantMatrix) -> crate::Result<CirculantMatrix> {
    a.multiply(b)
}

/// Diagonal of `F* C F`.
pub fn diagonalize_circulant(c: &CirculantMatrix) -> crate::Result<Vec<num_complex::Complex64>> {
    let table = crate::phase_ring::RootTable::new(c.dimension() as i64)?;
    c.diagonalize(&table)
}
