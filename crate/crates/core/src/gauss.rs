//! Quadratic Gauss sums `S(a, b, d) = Σ_{j<d} exp(iπ (a j² + b j) / d)`.
//!
//! Sums are evaluated directly on exact exponents, by one step of the
//! reciprocity law
//!
//! ```text
//! S(a, b, d) = |d/a|^{1/2} exp(iπ/4 [sgn(ad) - b²/(ad)]) S(-d, -b, a)
//! ```
//!
//! (valid for `ad != 0`, `ad + b` even), or by iterating that law in the
//! manner of Euclid's algorithm, which costs `O(log d)` steps.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{MubError, Result};
use crate::linalg::{build_d, Check};
use crate::phase_ring::RootTable;

/// Parameters `(a, b, d)` of `S(a, b, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GaussSumSpec {
    pub a: i64,
    pub b: i64,
    pub d: i64,
}

impl GaussSumSpec {
    pub fn new(a: i64, b: i64, d: i64) -> Result<Self> {
        if d < 1 {
            return Err(MubError::InvalidDimension {
                dimension: d,
                reason: "Gauss sum modulus must be at least 1",
            });
        }
        Ok(GaussSumSpec { a, b, d })
    }

    /// Whether the reciprocity law applies: `a != 0` and `ad + b` even.
    pub fn reciprocity_applies(&self) -> bool {
        self.a != 0 && (self.a as i128 * self.d as i128 + self.b as i128) % 2 == 0
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

/// Direct `O(d)` summation with exponents `a j² + b j` reduced mod `2d`.
pub fn gauss_sum_direct(s: GaussSumSpec) -> Result<Complex64> {
    let s = GaussSumSpec::new(s.a, s.b, s.d)?;
    let table = RootTable::new(s.d)?;
    let modulus = 2 * s.d as i128;
    let (a, b) = (s.a as i128, s.b as i128);
    Ok((0..s.d as i128)
        .map(|j| table.at((a * j % modulus * j + b * j) % modulus))
        .sum())
}

/// `exp(iπ/4 · [sign - b²/(a·d)])`, with `b²` reduced modulo `8ad` before the
/// division so the angle stays small.
fn reciprocity_phase(a: i128, b: i128, d: i128) -> Complex64 {
    let ad = a * d;
    let sign = ad.signum() as f64;
    let reduced = (b * b).rem_euclid(8 * ad.abs()) as f64 / ad as f64;
    Complex64::from_polar(1.0, PI / 4.0 * (sign - reduced))
}

/// One reciprocity step followed by direct summation of `S(-d, -b, a)`.
///
/// The right-hand sum has `|a|` terms; for negative `a` the sum over
/// `j < |a|` of `exp(iπ (-d j² - b j) / a)` is `S(d, b, -a)`.
pub fn gauss_sum_reciprocity(s: GaussSumSpec) -> Result<Complex64> {
    let s = GaussSumSpec::new(s.a, s.b, s.d)?;
    if !s.reciprocity_applies() {
        return Err(MubError::ReciprocityPrecondition {
            a: s.a,
            b: s.b,
            d: s.d,
        });
    }
    let (a, b, d) = (s.a as i128, s.b as i128, s.d as i128);
    let factor = (d as f64 / a.unsigned_abs() as f64).sqrt() * reciprocity_phase(a, b, d);
    let dual = if a > 0 {
        gauss_sum_direct(GaussSumSpec::new(-s.d, -s.b, s.a)?)?
    } else {
        gauss_sum_direct(GaussSumSpec::new(s.d, s.b, -s.a)?)?
    };
    Ok(factor * dual)
}

/// `S(a, b, d)` by repeated reciprocity, `O(log d)` steps.
///
/// Each step reduces `a` and `b` modulo `2d`, folds `a > d` onto `2d - a`
/// by conjugation, and swaps the roles of `a` and `d`. Sums with `a ≡ 0` or
/// `a ≡ d` are geometric and evaluated in closed form.
pub fn gauss_sum_fast(s: GaussSumSpec) -> Result<Complex64> {
    let s = GaussSumSpec::new(s.a, s.b, s.d)?;
    if !s.reciprocity_applies() && s.a.rem_euclid(2 * s.d) != 0 {
        return Err(MubError::ReciprocityPrecondition {
            a: s.a,
            b: s.b,
            d: s.d,
        });
    }
    Ok(fast_rec(s.a as i128, s.b as i128, s.d as i128))
}

fn fast_rec(a: i128, b: i128, d: i128) -> Complex64 {
    let two_d = 2 * d;
    let a = a.rem_euclid(two_d);
    let b = b.rem_euclid(two_d);
    if a == 0 {
        return geometric(b, d);
    }
    if a == d {
        // exp(iπ j²) = exp(iπ j)
        return geometric(b + d, d);
    }
    if a > d {
        return fast_rec(two_d - a, -b, d).conj();
    }
    let factor = (d as f64 / a as f64).sqrt() * reciprocity_phase(a, b, d);
    factor * fast_rec(-d, -b, a)
}

/// `Σ_{j<d} exp(iπ b j / d)` when `b` is even or `b ≡ 0 (mod 2d)`.
fn geometric(b: i128, d: i128) -> Complex64 {
    let b = b.rem_euclid(2 * d);
    if b == 0 {
        Complex64::new(d as f64, 0.0)
    } else if b % 2 == 0 {
        Complex64::new(0.0, 0.0)
    } else {
        let z = Complex64::from_polar(1.0, PI * b as f64 / d as f64);
        (Complex64::new(1.0, 0.0) - Complex64::from_polar(1.0, PI * b as f64)) / (1.0 - z)
    }
}

fn require_odd(d: i64) -> Result<()> {
    if d < 3 || d % 2 == 0 {
        return Err(MubError::InvalidDimension {
            dimension: d,
            reason: "an odd dimension d >= 3 is required",
        });
    }
    Ok(())
}

fn require_coprime(value: i64, d: i64) -> Result<()> {
    if gcd(value, d) != 1 {
        return Err(MubError::NotCoprime {
            value,
            dimension: d,
        });
    }
    Ok(())
}

fn sqrt_deviation(sum: Complex64, n: i64, tol: f64) -> Check {
    Check::new((sum.norm() - (n as f64).sqrt()).abs(), tol)
}

/// `|Σ_k exp(2iπ/d [l k(k+1)/2 + j k])|` against `√d`, for odd `d` and `l`
/// coprime with `d`.
pub fn verify_identity_gauss(d: i64, l: i64, j: i64, tol: f64) -> Result<Check> {
    require_odd(d)?;
    require_coprime(l, d)?;
    Ok(sqrt_deviation(identity_gauss_sum(d, l, j)?, d, tol))
}

/// The sum behind [`verify_identity_gauss`] without the coprimality guard.
pub fn identity_gauss_sum(d: i64, l: i64, j: i64) -> Result<Complex64> {
    let table = RootTable::new(d)?;
    let (d, l, j) = (d as i128, l as i128, j as i128);
    // exponent in units of iπ/d: l k(k+1) + 2 j k
    Ok((0..d)
        .map(|k| table.at((l * (k * (k + 1) % (2 * d)) + 2 * j * k) % (2 * d)))
        .sum())
}

/// `|Tr D^k|` against `√d`, with the trace taken from the diagonal matrix `D`.
pub fn verify_trace_d(d: i64, k: i64, tol: f64) -> Result<Check> {
    require_odd(d)?;
    require_coprime(k, d)?;
    let table = RootTable::new(d)?;
    let trace = build_d(d as usize)?.power(k).trace(&table)?;
    Ok(sqrt_deviation(trace, d, tol))
}

/// `|Σ_k exp(iπ k²/d)|` against `√d` for even `d`.
pub fn verify_even_gauss(d: i64, tol: f64) -> Result<Check> {
    if d < 2 || d % 2 != 0 {
        return Err(MubError::InvalidDimension {
            dimension: d,
            reason: "an even dimension d >= 2 is required",
        });
    }
    let sum = gauss_sum_direct(GaussSumSpec::new(1, 0, d)?)?;
    Ok(sqrt_deviation(sum, d, tol))
}

/// `|α| = |d^{-1/2} Σ_k ω^{-k(k+1)/2}|` against 1, for odd `d`.
pub fn verify_alpha_modulus(d: i64, tol: f64) -> Result<Check> {
    require_odd(d)?;
    let sum = identity_gauss_sum(d, -1, 0)?;
    Ok(Check::new((sum.norm() / (d as f64).sqrt() - 1.0).abs(), tol))
}

/// Both sides of the reciprocal pair of modulus conditions for `R^k` being
/// Hadamard: `|S(k, k + 2m, d)|` against `√d` and `|S(d, k + 2m, k)|`
/// against `√k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReciprocalPair {
    pub direct: Check,
    pub reciprocal: Check,
}

impl ReciprocalPair {
    pub fn passed(&self) -> bool {
        self.direct.passed && self.reciprocal.passed
    }
}

pub fn verify_prop38(d: i64, k: i64, m: i64, tol: f64) -> Result<ReciprocalPair> {
    require_odd(d)?;
    if !crate::mub::is_prime(d as usize) {
        return Err(MubError::InvalidDimension {
            dimension: d,
            reason: "an odd prime dimension is required",
        });
    }
    if k < 1 || k >= d {
        return Err(MubError::InvalidArgument(format!(
            "k must lie in 1..{d}, got {k}"
        )));
    }
    if m <= -d || m >= d {
        return Err(MubError::InvalidArgument(format!(
            "m must lie in -{}..={}, got {m}",
            d - 1,
            d - 1
        )));
    }
    let b = k + 2 * m;
    let direct = gauss_sum_direct(GaussSumSpec::new(k, b, d)?)?;
    let reciprocal = gauss_sum_direct(GaussSumSpec::new(d, b, k)?)?;
    Ok(ReciprocalPair {
        direct: sqrt_deviation(direct, d, tol),
        reciprocal: sqrt_deviation(reciprocal, k, tol),
    })
}
