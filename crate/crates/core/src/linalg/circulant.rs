use num_complex::Complex64;

use crate::error::{MubError, Result};
use crate::phase_ring::RootTable;

use super::{Check, DenseMatrix};

/// A circulant matrix, represented by its first column: `C[j,k] = c[(j - k) mod d]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CirculantMatrix {
    first_column: Vec<Complex64>,
    label: String,
}

impl CirculantMatrix {
    pub fn new(first_column: Vec<Complex64>, label: impl Into<String>) -> Result<Self> {
        if first_column.is_empty() {
            return Err(MubError::InvalidDimension {
                dimension: 0,
                reason: "a circulant matrix needs at least one entry",
            });
        }
        Ok(CirculantMatrix {
            first_column,
            label: label.into(),
        })
    }

    pub fn identity(d: usize) -> Result<Self> {
        let mut col = vec![Complex64::new(0.0, 0.0); d];
        if let Some(first) = col.first_mut() {
            *first = Complex64::new(1.0, 0.0);
        }
        Self::new(col, "1")
    }

    pub fn dimension(&self) -> usize {
        self.first_column.len()
    }

    pub fn first_column(&self) -> &[Complex64] {
        &self.first_column
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        let d = self.dimension();
        self.first_column[(row + d - col % d) % d]
    }

    pub fn to_dense(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.dimension(), self.label.clone(), |j, k| self.get(j, k))
    }

    /// Dense form, refusing dimensions above `cap`.
    pub fn to_dense_capped(&self, cap: usize) -> Result<DenseMatrix> {
        if self.dimension() > cap {
            return Err(MubError::DenseCapExceeded {
                dimension: self.dimension(),
                cap,
            });
        }
        Ok(self.to_dense())
    }

    /// Product of two circulants as a cyclic convolution of first columns, O(d²).
    pub fn multiply(&self, other: &CirculantMatrix) -> Result<CirculantMatrix> {
        let d = self.dimension();
        if d != other.dimension() {
            return Err(MubError::DimensionMismatch {
                left: d,
                right: other.dimension(),
            });
        }
        let a = &self.first_column;
        let b = &other.first_column;
        let mut out = vec![Complex64::new(0.0, 0.0); d];
        for (i, bi) in b.iter().enumerate() {
            if *bi == Complex64::new(0.0, 0.0) {
                continue;
            }
            // out[j] += a[j - i] * b[i]
            let (head, tail) = out.split_at_mut(i);
            for (o, aj) in tail.iter_mut().zip(a) {
                *o += aj * bi;
            }
            for (o, aj) in head.iter_mut().zip(&a[d - i..]) {
                *o += aj * bi;
            }
        }
        Ok(CirculantMatrix {
            first_column: out,
            label: format!("{}·{}", self.label, other.label),
        })
    }

    /// The adjoint is circulant with first column `conj(c[-j mod d])`.
    pub fn adjoint(&self) -> CirculantMatrix {
        let d = self.dimension();
        let col = (0..d)
            .map(|j| self.first_column[(d - j) % d].conj())
            .collect();
        CirculantMatrix {
            first_column: col,
            label: format!("{}*", self.label),
        }
    }

    pub fn scale(&self, factor: Complex64) -> CirculantMatrix {
        CirculantMatrix {
            first_column: self.first_column.iter().map(|z| z * factor).collect(),
            label: self.label.clone(),
        }
    }

    /// Worst entry of `|C*C - 1|`, computed in circulant form.
    pub fn unitarity_deviation(&self) -> f64 {
        let gram = self
            .adjoint()
            .multiply(self)
            .expect("a matrix always matches its own dimension");
        gram.first_column
            .iter()
            .enumerate()
            .map(|(j, z)| {
                let target = if j == 0 { 1.0 } else { 0.0 };
                (z - target).norm()
            })
            .fold(0.0, f64::max)
    }

    pub fn is_unitary(&self, tol: f64) -> Check {
        Check::new(self.unitarity_deviation(), tol)
    }

    /// Same predicate as [`DenseMatrix::is_unitary_hadamard`]; every entry of a
    /// circulant appears in its first column.
    pub fn is_unitary_hadamard(&self, tol: f64) -> Check {
        let target = (self.dimension() as f64).sqrt().recip();
        let modulus = self
            .first_column
            .iter()
            .map(|z| (z.norm() - target).abs())
            .fold(0.0, f64::max);
        Check::new(modulus.max(self.unitarity_deviation()), tol)
    }

    /// `C^n` by square-and-multiply; negative powers use the adjoint and
    /// require unitarity within `unitary_tol`.
    pub fn power(&self, n: i64, unitary_tol: f64) -> Result<CirculantMatrix> {
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
        let mut result = CirculantMatrix::identity(self.dimension())?;
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

    /// Diagonal of `F* C F`: entry `l` is `Σ_k c_k ω^{-kl}`, which equals
    /// `√d · ĉ_{-l}` for the unitary DFT `ĉ`.
    pub fn diagonalize(&self, table: &RootTable) -> Result<Vec<Complex64>> {
        let d = self.dimension();
        if table.dimension() != d as u64 {
            return Err(MubError::DimensionMismatch {
                left: d,
                right: table.dimension() as usize,
            });
        }
        let d_wide = d as i128;
        Ok((0..d_wide)
            .map(|l| {
                self.first_column
                    .iter()
                    .enumerate()
                    .map(|(k, c)| c * table.at(-2 * (k as i128 * l % d_wide)))
                    .sum()
            })
            .collect())
    }
}
