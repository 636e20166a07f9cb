//! Families of mutually unbiased bases built from `F` and powers of the
//! circulant rotation `R`, and their verification.
//!
//! Two bases given by the columns of unitaries `A` and `B` are unbiased
//! exactly when every entry of `A* B` has modulus `d^{-1/2}`, so a family is
//! verified pair by pair through these products.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{MubError, Result};
use crate::gauss::gcd;
use crate::linalg::{
    alpha, build_d, build_fourier, build_r, Check, CirculantMatrix, DenseMatrix,
    DEFAULT_DENSE_CAP,
};
use crate::phase_ring::RootTable;

/// Which construction produced a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Recipe {
    /// `d = 2`: `{1, P_0, P_1}`.
    DTwo,
    /// Odd prime `d`: `{1, F, R, …, R^{d-1}}`.
    Prime,
    /// Odd composite `d` with smallest prime factor `p`: `{1, F, R, …, R^{p-1}}`.
    OddComposite,
    /// Even `d >= 4`: `{1, F, R}`.
    Even,
}

impl Recipe {
    pub fn name(&self) -> &'static str {
        match self {
            Recipe::DTwo => "DTwo",
            Recipe::Prime => "Prime",
            Recipe::OddComposite => "OddComposite",
            Recipe::Even => "Even",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Basis {
    pub label: String,
    pub matrix: DenseMatrix,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MubFamily {
    pub dimension: usize,
    pub recipe: Recipe,
    pub bases: Vec<Basis>,
}

impl MubFamily {
    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    /// Assembles a family from arbitrary unitaries, checking each at `tol`.
    /// The identity basis is prepended.
    pub fn from_matrices(
        recipe: Recipe,
        matrices: Vec<DenseMatrix>,
        tol: f64,
    ) -> Result<MubFamily> {
        let dimension = matrices
            .first()
            .map(DenseMatrix::dimension)
            .ok_or_else(|| MubError::InvalidArgument("empty family".into()))?;
        let mut bases = vec![Basis {
            label: "1".into(),
            matrix: DenseMatrix::identity(dimension),
        }];
        for m in matrices {
            if m.dimension() != dimension {
                return Err(MubError::DimensionMismatch {
                    left: dimension,
                    right: m.dimension(),
                });
            }
            let check = m.is_unitary(tol);
            if !check.passed {
                return Err(MubError::NotUnitary {
                    deviation: check.deviation,
                });
            }
            bases.push(Basis {
                label: m.label().to_string(),
                matrix: m,
            });
        }
        Ok(MubFamily {
            dimension,
            recipe,
            bases,
        })
    }
}

/// Smallest divisor of `d` greater than 1.
pub fn smallest_divisor(d: usize) -> usize {
    (2..)
        .take_while(|p| p * p <= d)
        .find(|p| d % p == 0)
        .unwrap_or(d)
}

pub fn is_prime(d: usize) -> bool {
    d >= 2 && smallest_divisor(d) == d
}

pub fn recipe_for(d: usize) -> Result<Recipe> {
    match d {
        0 | 1 => Err(MubError::InvalidDimension {
            dimension: d as i64,
            reason: "MUB families need d >= 2",
        }),
        2 => Ok(Recipe::DTwo),
        _ if d % 2 == 0 => Ok(Recipe::Even),
        _ if is_prime(d) => Ok(Recipe::Prime),
        _ => Ok(Recipe::OddComposite),
    }
}

/// Number of bases the recipe yields for `d`, identity included.
pub fn family_size(d: usize) -> Result<usize> {
    Ok(match recipe_for(d)? {
        Recipe::DTwo => 3,
        Recipe::Prime => d + 1,
        Recipe::OddComposite => smallest_divisor(d) + 1,
        Recipe::Even => 3,
    })
}

/// The `d = 2` matrix `P_1 = (1/√2) circ(1, i)`.
pub fn qubit_p1() -> DenseMatrix {
    let s = 0.5f64.sqrt();
    CirculantMatrix::new(vec![Complex64::new(s, 0.0), Complex64::new(0.0, s)], "P_1")
        .expect("two entries")
        .to_dense()
}

pub fn build_family(d: usize) -> Result<MubFamily> {
    build_family_capped(d, DEFAULT_DENSE_CAP)
}

/// Builds the family for `d`, refusing to materialize matrices above `cap`.
pub fn build_family_capped(d: usize, cap: usize) -> Result<MubFamily> {
    let recipe = recipe_for(d)?;
    if d > cap {
        return Err(MubError::DenseCapExceeded { dimension: d, cap });
    }
    let fourier = build_fourier(d)?;
    let mut matrices = Vec::new();
    match recipe {
        Recipe::DTwo => {
            matrices.push(fourier.with_label("P_0"));
            matrices.push(qubit_p1());
        }
        Recipe::Prime | Recipe::OddComposite | Recipe::Even => {
            let top = family_size(d)? - 2;
            matrices.push(fourier);
            let r = build_r(d)?;
            let mut power = r.clone();
            for k in 1..=top {
                if k > 1 {
                    power = power.multiply(&r)?;
                }
                let label = if k == 1 { "R".to_string() } else { format!("R^{k}") };
                matrices.push(power.to_dense().with_label(label));
            }
        }
    }
    let mut bases = vec![Basis {
        label: "1".into(),
        matrix: DenseMatrix::identity(d),
    }];
    bases.extend(matrices.into_iter().map(|m| Basis {
        label: m.label().to_string(),
        matrix: m,
    }));
    Ok(MubFamily {
        dimension: d,
        recipe,
        bases,
    })
}

/// Unbiasedness of one pair of bases.
#[derive(Debug, Clone, PartialEq)]
pub struct PairResult {
    pub first: usize,
    pub second: usize,
    pub first_label: String,
    pub second_label: String,
    pub min_modulus: f64,
    pub max_modulus: f64,
    /// Worst `||(A* B)[j,k]| - d^{-1/2}|`.
    pub check: Check,
}

/// Checks on a single basis matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisResult {
    pub index: usize,
    pub label: String,
    pub unitary: Check,
    /// Present for every basis except the identity.
    pub hadamard: Option<Check>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnbiasednessReport {
    pub dimension: usize,
    pub tolerance: f64,
    pub bases: Vec<BasisResult>,
    pub pairs: Vec<PairResult>,
    pub passed: bool,
}

impl UnbiasednessReport {
    pub fn worst_pair_deviation(&self) -> f64 {
        self.pairs
            .iter()
            .map(|p| p.check.deviation)
            .fold(0.0, f64::max)
    }

    pub fn failed_pairs(&self) -> impl Iterator<Item = &PairResult> {
        self.pairs.iter().filter(|p| !p.check.passed)
    }
}

fn pair_result(fam: &MubFamily, i: usize, j: usize, tol: f64) -> PairResult {
    let a = &fam.bases[i];
    let b = &fam.bases[j];
    let product = a
        .matrix
        .adjoint_multiply(&b.matrix)
        .expect("family members share one dimension");
    let moduli = product.entries().iter().map(|z| z.norm());
    let (min_modulus, max_modulus) = moduli.fold((f64::INFINITY, 0.0f64), |(lo, hi), m| {
        (lo.min(m), hi.max(m))
    });
    PairResult {
        first: i,
        second: j,
        first_label: a.label.clone(),
        second_label: b.label.clone(),
        min_modulus,
        max_modulus,
        check: Check::new(product.hadamard_modulus_deviation(), tol),
    }
}

/// Checks every unordered pair of distinct bases, plus unitarity of every
/// basis and the Hadamard property of every non-identity basis.
pub fn verify_family(fam: &MubFamily, tol: f64) -> UnbiasednessReport {
    let n = fam.bases.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let pairs: Vec<PairResult> = pairs
        .into_par_iter()
        .map(|(i, j)| pair_result(fam, i, j, tol))
        .collect();
    let bases: Vec<BasisResult> = fam
        .bases
        .par_iter()
        .enumerate()
        .map(|(index, b)| BasisResult {
            index,
            label: b.label.clone(),
            unitary: b.matrix.is_unitary(tol),
            hadamard: (index > 0).then(|| b.matrix.is_unitary_hadamard(tol)),
        })
        .collect();
    let passed = pairs.iter().all(|p| p.check.passed)
        && bases
            .iter()
            .all(|b| b.unitary.passed && b.hadamard.map_or(true, |h| h.passed));
    UnbiasednessReport {
        dimension: fam.dimension,
        tolerance: tol,
        bases,
        pairs,
        passed,
    }
}

/// The two product identities behind unbiasedness of the prime family:
/// `(R*)^{k'} R^k = R^{k-k'}` and `F* R^k = α^k D^k F*`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairStructure {
    pub rotation_pair: Check,
    pub fourier_rotation: Check,
}

impl PairStructure {
    pub fn passed(&self) -> bool {
        self.rotation_pair.passed && self.fourier_rotation.passed
    }
}

pub fn check_pair_product_structure(
    d: usize,
    k_prime: usize,
    k: usize,
    tol: f64,
) -> Result<PairStructure> {
    if d < 3 || !is_prime(d) {
        return Err(MubError::InvalidDimension {
            dimension: d as i64,
            reason: "an odd prime dimension is required",
        });
    }
    if !(1 <= k_prime && k_prime < k && k < d) {
        return Err(MubError::InvalidArgument(format!(
            "need 1 <= k' < k <= d-1, got k'={k_prime}, k={k}"
        )));
    }
    let r = build_r(d)?.to_dense();
    let rk = r.power(k as i64, tol)?;
    let rkp = r.power(k_prime as i64, tol)?;
    let lhs = rkp.adjoint_multiply(&rk)?;
    let rhs = r.power((k - k_prime) as i64, tol)?;
    let rotation_pair = Check::new(lhs.max_abs_diff(&rhs)?, tol);

    let table = RootTable::new(d as i64)?;
    let f = build_fourier(d)?;
    let lhs = f.adjoint_multiply(&rk)?;
    let rhs = build_d(d)?
        .power(k as i64)
        .apply_left(&f.adjoint(), &table)?
        .scale(alpha(d)?.powi(k as i32));
    let fourier_rotation = Check::new(lhs.max_abs_diff(&rhs)?, tol);
    Ok(PairStructure {
        rotation_pair,
        fourier_rotation,
    })
}

/// Result of probing `R²` in even dimension: it should be unitary and
/// circulant but not Hadamard.
#[derive(Debug, Clone, PartialEq)]
pub struct EvenNegativeRecord {
    pub dimension: usize,
    pub unitary: Check,
    /// Deviation of the dense `R²` from its own circulant shift pattern.
    pub circulant_deviation: f64,
    pub hadamard: Check,
    /// `(row, col, modulus)` of first-column entries off `d^{-1/2}` by more
    /// than the tolerance.
    pub offending_entries: Vec<(usize, usize, f64)>,
}

impl EvenNegativeRecord {
    /// True when `R²` is unitary and circulant and the Hadamard check fails.
    pub fn confirmed(&self) -> bool {
        self.unitary.passed && self.circulant_deviation <= self.unitary.tolerance && !self.hadamard.passed
    }
}

pub fn negative_check_even(d: usize, tol: f64) -> Result<EvenNegativeRecord> {
    if d < 4 || d % 2 != 0 {
        return Err(MubError::InvalidDimension {
            dimension: d as i64,
            reason: "the R² probe needs an even dimension d >= 4",
        });
    }
    let r = build_r(d)?.to_dense();
    let r2 = r.multiply(&r)?;
    let circulant_deviation = (0..d)
        .flat_map(|j| (0..d).map(move |k| (j, k)))
        .map(|(j, k)| (r2.get(j, k) - r2.get((j + 1) % d, (k + 1) % d)).norm())
        .fold(0.0, f64::max);
    let target = (d as f64).sqrt().recip();
    let offending_entries = (0..d)
        .map(|j| (j, 0, r2.get(j, 0).norm()))
        .filter(|(_, _, m)| (m - target).abs() > tol)
        .collect();
    Ok(EvenNegativeRecord {
        dimension: d,
        unitary: r2.is_unitary(tol),
        circulant_deviation,
        hadamard: r2.is_unitary_hadamard(tol),
        offending_entries,
    })
}

/// `R^k` tested for the Hadamard property, computed in circulant form.
pub fn rotation_power_hadamard(d: usize, k: i64, tol: f64) -> Result<Check> {
    let rk = build_r(d)?.power(k, tol)?;
    Ok(rk.is_unitary_hadamard(tol))
}

/// Whether `gcd(k, d) = 1`.
pub fn coprime(k: i64, d: usize) -> bool {
    gcd(k, d as i64) == 1
}
