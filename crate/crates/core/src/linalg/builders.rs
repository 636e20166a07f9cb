//! Builders for the named matrices: the Fourier matrix `F`, the clock and
//! shift pair `U`, `V`, the quadratic phase diagonals `D` and `D'`, the
//! circulant rotation `R`, and `P_k = D^{-k} F`.

use num_complex::Complex64;

use crate::error::{MubError, Result};
use crate::phase_ring::{phase_of_omega, square_phase, triangular_phase, RootTable};

use super::{CirculantMatrix, DenseMatrix, DiagonalMatrix};

fn require_at_least(d: usize, min: usize, reason: &'static str) -> Result<()> {
    if d < min {
        return Err(MubError::InvalidDimension {
            dimension: d as i64,
            reason,
        });
    }
    Ok(())
}

fn require_odd(d: usize) -> Result<()> {
    if d % 2 == 0 || d < 3 {
        return Err(MubError::InvalidDimension {
            dimension: d as i64,
            reason: "an odd dimension d >= 3 is required",
        });
    }
    Ok(())
}

fn require_even(d: usize) -> Result<()> {
    if d % 2 != 0 || d < 2 {
        return Err(MubError::InvalidDimension {
            dimension: d as i64,
            reason: "an even dimension d >= 2 is required",
        });
    }
    Ok(())
}

fn inv_sqrt(d: usize) -> f64 {
    (d as f64).sqrt().recip()
}

/// `F[j,k] = d^{-1/2} ω^{jk}`.
pub fn build_fourier(d: usize) -> Result<DenseMatrix> {
    require_at_least(d, 1, "dimension must be at least 1")?;
    let table = RootTable::new(d as i64)?;
    fourier_with_table(d, &table)
}

pub(crate) fn fourier_with_table(d: usize, table: &RootTable) -> Result<DenseMatrix> {
    let norm = inv_sqrt(d);
    let mut entries = Vec::with_capacity(d * d);
    for j in 0..d {
        for k in 0..d {
            let p = phase_of_omega(((j * k) % d) as i64, d as i64)?;
            entries.push(table.value(p) * norm);
        }
    }
    DenseMatrix::from_entries(d, entries, "F")
}

/// Clock matrix `U = diag(1, ω, …, ω^{d-1})`.
pub fn build_u(d: usize) -> Result<DiagonalMatrix> {
    require_at_least(d, 2, "U and V need d >= 2")?;
    let diag = (0..d as i64)
        .map(|k| phase_of_omega(k, d as i64))
        .collect::<Result<Vec<_>>>()?;
    DiagonalMatrix::new(diag, "U")
}

/// Shift matrix `V = circ(0, …, 0, 1)`: ones on the superdiagonal and in the
/// bottom-left corner.
pub fn build_v(d: usize) -> Result<CirculantMatrix> {
    require_at_least(d, 2, "U and V need d >= 2")?;
    let mut col = vec![Complex64::new(0.0, 0.0); d];
    col[d - 1] = Complex64::new(1.0, 0.0);
    CirculantMatrix::new(col, "V")
}

/// Index reversal permutation: `W[0,0] = 1`, `W[j, d-j] = 1`.
pub fn build_w(d: usize) -> Result<DenseMatrix> {
    require_at_least(d, 1, "dimension must be at least 1")?;
    Ok(DenseMatrix::from_fn(d, "W", |j, k| {
        if (j + k) % d == 0 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    }))
}

/// `D = diag(ω^{k(k+1)/2})` for odd `d`.
pub fn build_d(d: usize) -> Result<DiagonalMatrix> {
    require_odd(d)?;
    let diag = (0..d as i64)
        .map(|k| triangular_phase(k, 1, d as i64))
        .collect::<Result<Vec<_>>>()?;
    DiagonalMatrix::new(diag, "D")
}

/// `D' = diag(ω^{-k²/2})` for even `d`.
pub fn build_dprime(d: usize) -> Result<DiagonalMatrix> {
    require_even(d)?;
    let diag = (0..d as i64)
        .map(|k| square_phase(k, d as i64))
        .collect::<Result<Vec<_>>>()?;
    DiagonalMatrix::new(diag, "D'")
}

/// The circulant rotation `R`.
///
/// Odd `d`: first column `d^{-1/2} ω^{-k(k+1)/2}`. Even `d`: first column
/// `d^{-1/2} ω^{-k²/2}`, so that `R[j,k] = d^{-1/2} ω^{-(j-k)²/2}`.
pub fn build_r(d: usize) -> Result<CirculantMatrix> {
    require_at_least(d, 2, "R needs d >= 2")?;
    let table = RootTable::new(d as i64)?;
    let norm = inv_sqrt(d);
    let col = (0..d as i64)
        .map(|k| {
            let p = if d % 2 == 1 {
                triangular_phase(k, -1, d as i64)?
            } else {
                square_phase(k, d as i64)?
            };
            Ok(table.value(p) * norm)
        })
        .collect::<Result<Vec<_>>>()?;
    CirculantMatrix::new(col, "R")
}

/// `P_k = D^{-k} F` for odd `d`; `P_0 = F`.
pub fn build_pk(d: usize, k: i64) -> Result<DenseMatrix> {
    require_odd(d)?;
    if k < 0 || k >= d as i64 {
        return Err(MubError::InvalidArgument(format!(
            "P_k needs 0 <= k < d, got k={k} for d={d}"
        )));
    }
    let table = RootTable::new(d as i64)?;
    let f = fourier_with_table(d, &table)?;
    let shifted = build_d(d)?.power(-k).apply_left(&f, &table)?;
    Ok(shifted.with_label(format!("P_{k}")))
}

/// `α = d^{-1/2} Σ_k ω^{-k(k+1)/2}` for odd `d`, the unit scalar with
/// `R = α F D F*`.
pub fn alpha(d: usize) -> Result<Complex64> {
    require_odd(d)?;
    let table = RootTable::new(d as i64)?;
    let sum: Complex64 = (0..d as i64)
        .map(|k| triangular_phase(k, -1, d as i64).map(|p| table.value(p)))
        .sum::<Result<Complex64>>()?;
    Ok(sum * inv_sqrt(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn omega(d: usize, p: f64) -> Complex64 {
        Complex64::from_polar(1.0, 2.0 * PI * p / d as f64)
    }

    #[test]
    fn fourier_small_cases() {
        let f1 = build_fourier(1).unwrap();
        assert_eq!(f1.entries(), &[c(1.0, 0.0)]);
        let f2 = build_fourier(2).unwrap();
        let s = 0.5f64.sqrt();
        for (got, want) in f2.entries().iter().zip([s, s, s, -s]) {
            assert!((got - c(want, 0.0)).norm() < 1e-15);
        }
        let f3 = build_fourier(3).unwrap();
        let want = Complex64::from_polar(3f64.sqrt().recip(), 4.0 * PI / 3.0);
        assert!((f3.get(1, 2) - want).norm() < 1e-15);
        assert!(build_fourier(0).is_err());
    }

    #[test]
    fn pauli_for_qubit() {
        let table = RootTable::new(2).unwrap();
        let u = build_u(2).unwrap().to_dense(&table).unwrap();
        let v = build_v(2).unwrap().to_dense();
        assert_eq!(u.entries(), &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]);
        assert_eq!(v.entries(), &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        assert!(build_u(1).is_err());
        assert!(build_v(1).is_err());
    }

    #[test]
    fn shift_layout_and_period() {
        let v = build_v(5).unwrap();
        let dense = v.to_dense();
        for j in 0..5 {
            for k in 0..5 {
                let one = k == (j + 1) % 5;
                assert_eq!(dense.get(j, k), c(if one { 1.0 } else { 0.0 }, 0.0));
            }
        }
        let v5 = v.power(5, 1e-12).unwrap().to_dense();
        assert_eq!(v5.max_abs_diff(&DenseMatrix::identity(5)).unwrap(), 0.0);
        let v2 = v.multiply(&v).unwrap();
        assert_eq!(v2.first_column()[3], c(1.0, 0.0));
    }

    #[test]
    fn commutation_rule_d3() {
        let table = RootTable::new(3).unwrap();
        let u = build_u(3).unwrap().to_dense(&table).unwrap();
        let v = build_v(3).unwrap().to_dense();
        let vu = v.multiply(&u).unwrap();
        let uv = u.multiply(&v).unwrap().scale(omega(3, 1.0));
        assert!(vu.max_abs_diff(&uv).unwrap() < 1e-15);
    }

    #[test]
    fn quadratic_diagonal_d() {
        let d3 = build_d(3).unwrap();
        let exps: Vec<u64> = d3.phases().iter().map(|p| p.exponent()).collect();
        // ω^0, ω^1, ω^3 = 1 as exponents of exp(iπ/3)
        assert_eq!(exps, vec![0, 2, 0]);
        assert!(d3.power(3).is_identity());
        let d5: Vec<u64> = build_d(5).unwrap().phases().iter().map(|p| p.exponent()).collect();
        // ω^0, ω^1, ω^3, ω^6 = ω, ω^10 = 1
        assert_eq!(d5, vec![0, 2, 6, 2, 0]);
        assert!(build_d(4).is_err());
        assert!(build_d(1).is_err());
    }

    #[test]
    fn half_power_diagonal() {
        let table2 = RootTable::new(2).unwrap();
        let v2 = build_dprime(2).unwrap().values(&table2).unwrap();
        assert_eq!(v2[0], c(1.0, 0.0));
        assert!((v2[1] - c(0.0, -1.0)).norm() < 1e-15);
        let table4 = RootTable::new(4).unwrap();
        let v4 = build_dprime(4).unwrap().values(&table4).unwrap();
        assert!((v4[2] - c(-1.0, 0.0)).norm() < 1e-15);
        assert!((v4[3] - Complex64::from_polar(1.0, -PI / 4.0)).norm() < 1e-15);
        assert!(build_dprime(5).is_err());
    }

    #[test]
    fn rotation_first_columns() {
        let s3 = 3f64.sqrt().recip();
        let r3 = build_r(3).unwrap();
        let want = [c(s3, 0.0), omega(3, -1.0) * s3, c(s3, 0.0)];
        for (got, want) in r3.first_column().iter().zip(want) {
            assert!((got - want).norm() < 1e-15);
        }
        let s2 = 0.5f64.sqrt();
        let r2 = build_r(2).unwrap();
        assert!((r2.first_column()[0] - c(s2, 0.0)).norm() < 1e-15);
        assert!((r2.first_column()[1] - c(0.0, -s2)).norm() < 1e-15);
        assert!(r2.to_dense().is_unitary_hadamard(1e-12).passed);
        assert!(build_r(1).is_err());
    }

    #[test]
    fn pk_entries() {
        assert_eq!(build_pk(5, 0).unwrap().entries(), build_fourier(5).unwrap().entries());
        let p1 = build_pk(3, 1).unwrap();
        let s3 = 3f64.sqrt().recip();
        for j in 0..3 {
            for m in 0..3 {
                let e = (j * m) as f64 - (j * (j + 1)) as f64 / 2.0;
                assert!((p1.get(j, m) - omega(3, e) * s3).norm() < 1e-14);
            }
        }
        assert!(build_pk(5, 2).unwrap().is_unitary(1e-12).passed);
        assert!(build_pk(4, 1).is_err());
        assert!(build_pk(5, 5).is_err());
    }

    #[test]
    fn alpha_has_unit_modulus() {
        for d in (3..60).step_by(2) {
            assert!((alpha(d).unwrap().norm() - 1.0).abs() < 1e-12, "d={d}");
        }
        assert!(alpha(4).is_err());
    }
}
