//! Exact arithmetic on phases `exp(iπ t / d)`.
//!
//! A phase is stored as an integer exponent `t` reduced modulo `2d`, so both
//! `ω = exp(2iπ/d)` (exponent 2) and its half power `exp(iπ/d)` (exponent 1)
//! live in the same ring. Complex values are produced only through a
//! [`RootTable`], which every matrix builder shares.

use std::f64::consts::PI;
use std::ops::{Add, Neg, Sub};

use num_complex::Complex64;

use crate::error::{MubError, Result};

fn check_dimension(d: i64) -> Result<u64> {
    if d <= 0 {
        return Err(MubError::InvalidDimension {
            dimension: d,
            reason: "dimension must be at least 1",
        });
    }
    Ok(d as u64)
}

fn reduce(value: i128, modulus: u64) -> u64 {
    value.rem_euclid(modulus as i128) as u64
}

/// The unit complex number `exp(iπ t / d)`, with `0 <= t < 2d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PhaseExponent {
    t: u64,
    dimension: u64,
}

impl PhaseExponent {
    /// Builds `exp(iπ t / d)` for any integer `t`.
    pub fn new(t: i64, d: i64) -> Result<Self> {
        let dimension = check_dimension(d)?;
        Ok(Self::from_wide(t as i128, dimension))
    }

    pub(crate) fn from_wide(t: i128, dimension: u64) -> Self {
        PhaseExponent {
            t: reduce(t, 2 * dimension),
            dimension,
        }
    }

    /// The identity phase `1` in dimension `d`.
    pub fn one(d: i64) -> Result<Self> {
        Self::new(0, d)
    }

    pub fn exponent(&self) -> u64 {
        self.t
    }

    pub fn dimension(&self) -> u64 {
        self.dimension
    }

    /// Always `2d`.
    pub fn modulus(&self) -> u64 {
        2 * self.dimension
    }

    /// True when the phase is an integer power of `ω`.
    pub fn is_omega_power(&self) -> bool {
        self.t % 2 == 0
    }

    /// `self^n`, i.e. the exponent multiplied by `n`.
    pub fn pow(self, n: i64) -> Self {
        Self::from_wide(self.t as i128 * n as i128, self.dimension)
    }

    pub fn conj(self) -> Self {
        -self
    }

    fn assert_same_ring(&self, other: &Self) {
        assert_eq!(
            self.dimension, other.dimension,
            "phases from different dimensions cannot be combined"
        );
    }
}

/// Multiplication of phases is addition of exponents.
impl Add for PhaseExponent {
    type Output = PhaseExponent;

    fn add(self, rhs: Self) -> Self {
        self.assert_same_ring(&rhs);
        Self::from_wide(self.t as i128 + rhs.t as i128, self.dimension)
    }
}

impl Sub for PhaseExponent {
    type Output = PhaseExponent;

    fn sub(self, rhs: Self) -> Self {
        self.assert_same_ring(&rhs);
        Self::from_wide(self.t as i128 - rhs.t as i128, self.dimension)
    }
}

impl Neg for PhaseExponent {
    type Output = PhaseExponent;

    fn neg(self) -> Self {
        Self::from_wide(-(self.t as i128), self.dimension)
    }
}

/// `ω^power` with `ω = exp(2iπ/d)`.
pub fn phase_of_omega(power: i64, d: i64) -> Result<PhaseExponent> {
    let dimension = check_dimension(d)?;
    Ok(PhaseExponent::from_wide(2 * power as i128, dimension))
}

/// `ω^{l·j(j+1)/2}`, stored as the exponent `l·j(j+1) mod 2d`.
pub fn triangular_phase(j: i64, l: i64, d: i64) -> Result<PhaseExponent> {
    let dimension = check_dimension(d)?;
    let j = j as i128;
    Ok(PhaseExponent::from_wide(
        l as i128 * j * (j + 1),
        dimension,
    ))
}

/// `ω^{-j²/2}`, stored as the exponent `-j² mod 2d`. Only defined for even `d`.
pub fn square_phase(j: i64, d: i64) -> Result<PhaseExponent> {
    let dimension = check_dimension(d)?;
    if d % 2 != 0 || d < 2 {
        return Err(MubError::InvalidDimension {
            dimension: d,
            reason: "half-power square phases require an even dimension",
        });
    }
    let j = j as i128;
    Ok(PhaseExponent::from_wide(-(j * j), dimension))
}

/// Precomputed values `exp(iπ t / d)` for `t = 0 .. 2d`.
#[derive(Debug, Clone, PartialEq)]
pub struct RootTable {
    dimension: u64,
    values: Vec<Complex64>,
}

impl RootTable {
    pub fn new(d: i64) -> Result<Self> {
        let dimension = check_dimension(d)?;
        let n = 2 * dimension;
        let values = (0..n).map(|t| root_value(t, dimension)).collect();
        Ok(RootTable { dimension, values })
    }

    pub fn dimension(&self) -> u64 {
        self.dimension
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Converts a phase to its complex value.
    pub fn to_complex(&self, p: PhaseExponent) -> Result<Complex64> {
        if p.modulus() != 2 * self.dimension {
            return Err(MubError::ModulusMismatch {
                phase: p.modulus(),
                table: 2 * self.dimension,
            });
        }
        Ok(self.values[p.t as usize])
    }

    /// Lookup for phases already known to belong to this table.
    pub(crate) fn value(&self, p: PhaseExponent) -> Complex64 {
        debug_assert_eq!(p.dimension, self.dimension);
        self.values[p.t as usize]
    }

    /// `exp(iπ t / d)` for an arbitrary integer exponent.
    pub fn at(&self, t: i128) -> Complex64 {
        self.values[reduce(t, 2 * self.dimension) as usize]
    }
}

/// `exp(iπ t / d)` for `0 <= t < 2d`, evaluated on the first quadrant and
/// reflected exactly so that `values[d] = -1` and conjugate pairs match bitwise.
fn root_value(t: u64, d: u64) -> Complex64 {
    let n = 2 * d;
    if 2 * t > n {
        return root_value(n - t, d).conj();
    }
    // now 0 <= t <= d, angle in [0, π]
    if 2 * t > d {
        let mirrored = root_value(d - t, d);
        return Complex64::new(-mirrored.re, mirrored.im);
    }
    if t == 0 {
        return Complex64::new(1.0, 0.0);
    }
    if 2 * t == d {
        return Complex64::new(0.0, 1.0);
    }
    if 4 * t > d {
        // angle in (π/4, π/2): swap cos and sin of the complementary angle
        let angle = PI * (d - 2 * t) as f64 / (2 * d) as f64;
        let (s, c) = angle.sin_cos();
        return Complex64::new(s, c);
    }
    let angle = PI * t as f64 / d as f64;
    let (s, c) = angle.sin_cos();
    Complex64::new(c, s)
}
