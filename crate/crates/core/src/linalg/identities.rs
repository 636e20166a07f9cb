//! Matrix identities relating `F`, `U`, `V`, `D`, `R` and `P_k`.
//!
//! Each function builds both sides independently and returns the largest
//! entrywise deviation. Left-hand sides go through dense products; the
//! right-hand sides are assembled from the closed-form builders.

use num_complex::Complex64;

use crate::error::{MubError, Result};
use crate::phase_ring::RootTable;

use super::{
    alpha, build_d, build_fourier, build_pk, build_r, build_u, build_v, build_w, DenseMatrix,
};

fn omega(d: usize) -> Complex64 {
    RootTable::new(d as i64).expect("d >= 1").at(2)
}

fn dense_u(d: usize) -> Result<DenseMatrix> {
    let table = RootTable::new(d as i64)?;
    build_u(d)?.to_dense(&table)
}

fn dense_d(d: usize) -> Result<DenseMatrix> {
    let table = RootTable::new(d as i64)?;
    build_d(d)?.to_dense(&table)
}

/// `VU` against `ω UV`.
pub fn commutation(d: usize) -> Result<f64> {
    let u = dense_u(d)?;
    let v = build_v(d)?.to_dense();
    let vu = v.multiply(&u)?;
    let uv = u.multiply(&v)?.scale(omega(d));
    vu.max_abs_diff(&uv)
}

/// `F* V F` against `U`, and `V` against `F U F*`; returns the worse.
pub fn fourier_diagonalizes_shift(d: usize) -> Result<f64> {
    let f = build_fourier(d)?;
    let u = dense_u(d)?;
    let v = build_v(d)?.to_dense();
    let lhs = f.adjoint_multiply(&v.multiply(&f)?)?;
    let back = f.multiply(&u)?.multiply(&f.adjoint())?;
    Ok(lhs.max_abs_diff(&u)?.max(back.max_abs_diff(&v)?))
}

/// `F²` against the reversal permutation `W`.
pub fn fourier_square(d: usize) -> Result<f64> {
    let f = build_fourier(d)?;
    f.multiply(&f)?.max_abs_diff(&build_w(d)?)
}

/// `F⁴` against the identity.
pub fn fourier_fourth_power(d: usize) -> Result<f64> {
    let f = build_fourier(d)?;
    f.power(4, 0.0)?.max_abs_diff(&DenseMatrix::identity(d))
}

/// `R U R*` against `VU`.
pub fn rotation_conjugates_clock(d: usize) -> Result<f64> {
    rotation_power_conjugates_clock(d, 1)
}

/// `R^k U (R*)^k` against `V^k U`.
pub fn rotation_power_conjugates_clock(d: usize, k: u32) -> Result<f64> {
    let u = dense_u(d)?;
    let rk = build_r(d)?.to_dense().power(k as i64, 0.0)?;
    let lhs = rk.multiply(&u)?.multiply(&rk.adjoint())?;
    let vk = build_v(d)?.to_dense().power(k as i64, 0.0)?;
    lhs.max_abs_diff(&vk.multiply(&u)?)
}

/// Largest off-diagonal modulus of `R* (VU) R`. Zero means the columns of
/// `R` are eigenvectors of `VU`; in even dimension this holds although
/// `R U R* = VU` does not.
pub fn rotation_diagonalizes_shift_clock(d: usize) -> Result<f64> {
    let u = dense_u(d)?;
    let v = build_v(d)?.to_dense();
    let r = build_r(d)?.to_dense();
    let m = r.adjoint_multiply(&v.multiply(&u)?.multiply(&r)?)?;
    let mut worst = 0.0f64;
    for j in 0..d {
        for k in 0..d {
            if j != k {
                worst = worst.max(m.get(j, k).norm());
            }
        }
    }
    Ok(worst)
}

/// `R` commutes with `V`.
pub fn rotation_commutes_with_shift(d: usize) -> Result<f64> {
    let r = build_r(d)?.to_dense();
    let v = build_v(d)?.to_dense();
    r.multiply(&v)?.max_abs_diff(&v.multiply(&r)?)
}

/// `R` against `α F D F*` (odd `d`).
pub fn rotation_factorization(d: usize) -> Result<f64> {
    let f = build_fourier(d)?;
    let rhs = f
        .multiply(&dense_d(d)?)?
        .multiply(&f.adjoint())?
        .scale(alpha(d)?);
    build_r(d)?.to_dense().max_abs_diff(&rhs)
}

/// `R^d` against `α^d · 1` (odd `d`).
pub fn rotation_period(d: usize) -> Result<f64> {
    let a = alpha(d)?;
    let rd = build_r(d)?.to_dense().power(d as i64, 0.0)?;
    rd.max_abs_diff(&DenseMatrix::identity(d).scale(a.powu(d as u32)))
}

/// `P_k` against `α^k F* R^{-k} F²` (odd `d`, `0 <= k < d`).
pub fn pk_from_rotation(d: usize, k: i64, tol: f64) -> Result<f64> {
    let f = build_fourier(d)?;
    let r_inv_k = build_r(d)?.to_dense().power(-k, tol)?;
    let rhs = f
        .adjoint_multiply(&r_inv_k)?
        .multiply(&f)?
        .multiply(&f)?
        .scale(alpha(d)?.powi(k as i32));
    build_pk(d, k)?.max_abs_diff(&rhs)
}

/// `F* R^k` against `α^k D^k F*` (odd `d`).
pub fn fourier_rotation_product(d: usize, k: i64) -> Result<f64> {
    let f = build_fourier(d)?;
    let rk = build_r(d)?.to_dense().power(k, 0.0)?;
    let lhs = f.adjoint_multiply(&rk)?;
    let table = RootTable::new(d as i64)?;
    let rhs = build_d(d)?
        .power(k)
        .apply_left(&f.adjoint(), &table)?
        .scale(alpha(d)?.powi(k as i32));
    lhs.max_abs_diff(&rhs)
}

/// Checks `jk - j(j+1)/2 - k(k-1)/2 ≡ -(j-k)(j-k+1)/2 (mod d)` for all
/// `0 <= j, k < d` in exact integer arithmetic. Both sides are doubled so
/// every term is an integer.
pub fn rotation_exponent_identity(d: usize) -> Result<bool> {
    if d == 0 {
        return Err(MubError::InvalidDimension {
            dimension: 0,
            reason: "dimension must be at least 1",
        });
    }
    let modulus = 2 * d as i64;
    let d = d as i64;
    Ok((0..d).all(|j| {
        (0..d).all(|k| {
            let lhs = 2 * j * k - j * (j + 1) - k * (k - 1);
            let rhs = -(j - k) * (j - k + 1);
            (lhs - rhs).rem_euclid(modulus) == 0
        })
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_dimensions() {
        for d in 2..12 {
            assert!(commutation(d).unwrap() < 1e-12);
            assert!(fourier_diagonalizes_shift(d).unwrap() < 1e-12);
            assert!(fourier_square(d).unwrap() < 1e-12);
            assert!(fourier_fourth_power(d).unwrap() < 1e-12);
            assert!(rotation_commutes_with_shift(d).unwrap() < 1e-12);
            assert!(rotation_diagonalizes_shift_clock(d).unwrap() < 1e-12);
        }
        // R U R* = VU is an odd-dimension identity
        assert!(rotation_conjugates_clock(4).unwrap() > 0.1);
        assert!(rotation_conjugates_clock(9).unwrap() < 1e-12);
        // W is the identity for d = 2
        assert_eq!(build_w(2).unwrap(), DenseMatrix::identity(2).with_label("W"));
    }

    #[test]
    fn odd_rotation_identities() {
        for d in [3, 5, 7, 9, 15] {
            let tol = 1e-11;
            assert!(rotation_factorization(d).unwrap() < tol, "d={d}");
            assert!(rotation_period(d).unwrap() < tol);
            for k in 0..=d as u32 {
                assert!(rotation_power_conjugates_clock(d, k).unwrap() < tol);
            }
            for k in 0..d as i64 {
                assert!(pk_from_rotation(d, k, 1e-9).unwrap() < tol);
                assert!(fourier_rotation_product(d, k).unwrap() < tol);
            }
        }
    }

    #[test]
    fn exponent_identity_exact() {
        for d in 1..=100 {
            assert!(rotation_exponent_identity(d).unwrap());
        }
    }
}
