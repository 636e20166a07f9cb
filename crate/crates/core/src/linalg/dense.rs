use std::fmt;

use num_complex::Complex64;

use crate::error::{MubError, Result};

use super::Check;

/// A square complex matrix stored row-major.
///
/// The matrices built by this crate are unitary, but products and
/// differences are not assumed to be; unitarity is always checked with
/// [`DenseMatrix::is_unitary`].
#[derive(Clone, PartialEq)]
pub struct DenseMatrix {
    dimension: usize,
    entries: Vec<Complex64>,
    label: String,
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} ({}x{})", self.label, self.dimension, self.dimension)?;
        for row in self.rows() {
            let cells: Vec<String> = row
                .iter()
                .map(|z| format!("{:+.6}{:+.6}i", z.re, z.im))
                .collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl DenseMatrix {
    pub fn from_fn(
        dimension: usize,
        label: impl Into<String>,
        mut f: impl FnMut(usize, usize) -> Complex64,
    ) -> Self {
        let mut entries = Vec::with_capacity(dimension * dimension);
        for j in 0..dimension {
            for k in 0..dimension {
                entries.push(f(j, k));
            }
        }
        DenseMatrix {
            dimension,
            entries,
            label: label.into(),
        }
    }

    /// Builds a matrix from row-major entries.
    pub fn from_entries(
        dimension: usize,
        entries: Vec<Complex64>,
        label: impl Into<String>,
    ) -> Result<Self> {
        if entries.len() != dimension * dimension {
            return Err(MubError::DimensionMismatch {
                left: dimension * dimension,
                right: entries.len(),
            });
        }
        Ok(DenseMatrix {
            dimension,
            entries,
            label: label.into(),
        })
    }

    pub fn identity(dimension: usize) -> Self {
        Self::from_fn(dimension, "1", |j, k| {
            if j == k {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dimension + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Complex64]> {
        self.entries.chunks(self.dimension.max(1))
    }

    fn check_same_dimension(&self, other: &DenseMatrix) -> Result<()> {
        if self.dimension != other.dimension {
            return Err(MubError::DimensionMismatch {
                left: self.dimension,
                right: other.dimension,
            });
        }
        Ok(())
    }

    /// Ordinary matrix product `self · other`.
    pub fn multiply(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        self.check_same_dimension(other)?;
        let n = self.dimension;
        let mut out = vec![Complex64::new(0.0, 0.0); n * n];
        for j in 0..n {
            let out_row = &mut out[j * n..(j + 1) * n];
            for i in 0..n {
                let a = self.entries[j * n + i];
                let b_row = &other.entries[i * n..(i + 1) * n];
                for (o, b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        Ok(DenseMatrix {
            dimension: n,
            entries: out,
            label: format!("{}·{}", self.label, other.label),
        })
    }

    /// `self* · other` without materializing the adjoint.
    pub fn adjoint_multiply(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        self.check_same_dimension(other)?;
        let n = self.dimension;
        let mut out = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            let a_row = &self.entries[i * n..(i + 1) * n];
            let b_row = &other.entries[i * n..(i + 1) * n];
            for (j, a) in a_row.iter().enumerate() {
                let a = a.conj();
                let out_row = &mut out[j * n..(j + 1) * n];
                for (o, b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        Ok(DenseMatrix {
            dimension: n,
            entries: out,
            label: format!("{}*·{}", self.label, other.label),
        })
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> DenseMatrix {
        let n = self.dimension;
        DenseMatrix::from_fn(n, format!("{}*", self.label), |j, k| {
            self.entries[k * n + j].conj()
        })
    }

    pub fn scale(&self, factor: Complex64) -> DenseMatrix {
        DenseMatrix {
            dimension: self.dimension,
            entries: self.entries.iter().map(|z| z * factor).collect(),
            label: self.label.clone(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dimension).map(|j| self.get(j, j)).sum()
    }

    /// `self^n` by square-and-multiply. Negative powers are powers of the
    /// adjoint and require the matrix to pass [`DenseMatrix::is_unitary`]
    /// at `unitary_tol`.
    pub fn power(&self, n: i64, unitary_tol: f64) -> Result<DenseMatrix> {
        let base = if n < 0 {
            let check = self.is_unitary(unitary_tol);
            if !check.passed {
                return Err(MubError::NotUnitary {
                    deviation: check.deviation,
                });
            }
            self.adjoint()
        } else {
            self.clone()
        };
        let mut exponent = n.unsigned_abs();
        let mut result = DenseMatrix::identity(self.dimension);
        let mut square = base;
        while exponent > 0 {
            if exponent & 1 == 1 {
                result = result.multiply(&square)?;
            }
            exponent >>= 1;
            if exponent > 0 {
                square = square.multiply(&square)?;
            }
        }
        Ok(result.with_label(format!("{}^{}", self.label, n)))
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &DenseMatrix) -> Result<f64> {
        self.check_same_dimension(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Worst entry of `|M*M - 1|`.
    pub fn unitarity_deviation(&self) -> f64 {
        let gram = self
            .adjoint_multiply(self)
            .expect("a matrix always matches its own dimension");
        let n = self.dimension;
        let mut worst = 0.0f64;
        for j in 0..n {
            for k in 0..n {
                let target = if j == k { 1.0 } else { 0.0 };
                worst = worst.max((gram.entries[j * n + k] - target).norm());
            }
        }
        worst
    }

    /// Worst entry of `||M[j,k]| - d^{-1/2}|`.
    pub fn hadamard_modulus_deviation(&self) -> f64 {
        let target = (self.dimension as f64).sqrt().recip();
        self.entries
            .iter()
            .map(|z| (z.norm() - target).abs())
            .fold(0.0, f64::max)
    }

    pub fn is_unitary(&self, tol: f64) -> Check {
        Check::new(self.unitarity_deviation(), tol)
    }

    /// Unitary with every entry of modulus `d^{-1/2}`. The reported deviation
    /// is the worse of the two conditions.
    pub fn is_unitary_hadamard(&self, tol: f64) -> Check {
        let deviation = self
            .unitarity_deviation()
            .max(self.hadamard_modulus_deviation());
        Check::new(deviation, tol)
    }
}
