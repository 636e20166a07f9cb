use num_complex::Complex64;

use crate::error::{MubError, Result};
use crate::phase_ring::{PhaseExponent, RootTable};

use super::DenseMatrix;

/// A diagonal matrix of exact phases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalMatrix {
    diagonal: Vec<PhaseExponent>,
    label: String,
}

impl DiagonalMatrix {
    pub fn new(diagonal: Vec<PhaseExponent>, label: impl Into<String>) -> Result<Self> {
        let Some(first) = diagonal.first() else {
            return Err(MubError::InvalidDimension {
                dimension: 0,
                reason: "a diagonal matrix needs at least one entry",
            });
        };
        let ring = first.dimension();
        if diagonal.iter().any(|p| p.dimension() != ring) {
            return Err(MubError::InvalidArgument(
                "diagonal phases must share one dimension".into(),
            ));
        }
        Ok(DiagonalMatrix {
            diagonal,
            label: label.into(),
        })
    }

    pub fn dimension(&self) -> usize {
        self.diagonal.len()
    }

    pub fn phases(&self) -> &[PhaseExponent] {
        &self.diagonal
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    fn check_table(&self, table: &RootTable) -> Result<()> {
        let ring = self.diagonal[0].dimension();
        if table.dimension() != ring {
            return Err(MubError::ModulusMismatch {
                phase: 2 * ring,
                table: 2 * table.dimension(),
            });
        }
        Ok(())
    }

    pub fn values(&self, table: &RootTable) -> Result<Vec<Complex64>> {
        self.diagonal.iter().map(|p| table.to_complex(*p)).collect()
    }

    /// Exact power; negative `n` is fine since every entry is a unit phase.
    pub fn power(&self, n: i64) -> DiagonalMatrix {
        DiagonalMatrix {
            diagonal: self.diagonal.iter().map(|p| p.pow(n)).collect(),
            label: format!("{}^{}", self.label, n),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.diagonal.iter().all(|p| p.exponent() == 0)
    }

    pub fn trace(&self, table: &RootTable) -> Result<Complex64> {
        self.check_table(table)?;
        Ok(self.diagonal.iter().map(|p| table.value(*p)).sum())
    }

    pub fn to_dense(&self, table: &RootTable) -> Result<DenseMatrix> {
        self.check_table(table)?;
        let values: Vec<Complex64> = self.diagonal.iter().map(|p| table.value(*p)).collect();
        Ok(DenseMatrix::from_fn(self.dimension(), self.label.clone(), |j, k| {
            if j == k {
                values[j]
            } else {
                Complex64::new(0.0, 0.0)
            }
        }))
    }

    /// `self · m`, scaling row `j` of `m` by the `j`-th phase.
    pub fn apply_left(&self, m: &DenseMatrix, table: &RootTable) -> Result<DenseMatrix> {
        self.check_table(table)?;
        if m.dimension() != self.dimension() {
            return Err(MubError::DimensionMismatch {
                left: self.dimension(),
                right: m.dimension(),
            });
        }
        let values: Vec<Complex64> = self.diagonal.iter().map(|p| table.value(*p)).collect();
        Ok(DenseMatrix::from_fn(
            m.dimension(),
            format!("{}·{}", self.label, m.label()),
            |j, k| values[j] * m.get(j, k),
        ))
    }
}
