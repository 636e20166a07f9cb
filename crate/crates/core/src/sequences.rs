//! Sequences of length `d`: the unitary DFT, cyclic autocorrelation,
//! bi-unimodularity, Gauss sequences and a small exhaustive search.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{MubError, Result};
use crate::phase_ring::{square_phase, triangular_phase, RootTable};

#[derive(Debug, Clone, PartialEq)]
pub struct Sequence {
    values: Vec<Complex64>,
}

impl Sequence {
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        if values.is_empty() {
            return Err(MubError::InvalidDimension {
                dimension: 0,
                reason: "a sequence needs at least one entry",
            });
        }
        Ok(Sequence { values })
    }

    pub fn dimension(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }
}

/// `ĉ_l = d^{-1/2} Σ_k c_k ω^{kl}`.
pub fn dft_sequence(c: &Sequence) -> Sequence {
    let d = c.dimension();
    let table = RootTable::new(d as i64).expect("sequences are non-empty");
    let norm = (d as f64).sqrt().recip();
    let values = (0..d)
        .map(|l| {
            c.values
                .iter()
                .enumerate()
                .map(|(k, ck)| ck * table.at(2 * ((k * l) % d) as i128))
                .sum::<Complex64>()
                * norm
        })
        .collect();
    Sequence { values }
}

/// Cyclic autocorrelation `Σ_k conj(c_k) c_{(j+k) mod d}`.
pub fn autocorrelation(c: &Sequence, j: usize) -> Result<Complex64> {
    let d = c.dimension();
    if j >= d {
        return Err(MubError::InvalidArgument(format!(
            "autocorrelation shift {j} outside 0..{d}"
        )));
    }
    Ok((0..d)
        .map(|k| c.values[k].conj() * c.values[(j + k) % d])
        .sum())
}

/// Measured moduli behind a bi-unimodularity verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct BiUnimodularReport {
    pub passed: bool,
    /// Worst `||c_j| - 1|`.
    pub sequence_deviation: f64,
    /// Worst `||ĉ_j| - 1|`.
    pub transform_deviation: f64,
    pub transform_moduli: Vec<f64>,
    pub tolerance: f64,
}

impl BiUnimodularReport {
    pub fn deviation(&self) -> f64 {
        self.sequence_deviation.max(self.transform_deviation)
    }
}

pub fn is_biunimodular(c: &Sequence, tol: f64) -> BiUnimodularReport {
    let worst = |xs: &mut dyn Iterator<Item = f64>| xs.map(|m| (m - 1.0).abs()).fold(0.0, f64::max);
    let sequence_deviation = worst(&mut c.values.iter().map(|z| z.norm()));
    let transform_moduli: Vec<f64> = dft_sequence(c).values.iter().map(|z| z.norm()).collect();
    let transform_deviation = worst(&mut transform_moduli.iter().copied());
    BiUnimodularReport {
        passed: sequence_deviation <= tol && transform_deviation <= tol,
        sequence_deviation,
        transform_deviation,
        transform_moduli,
        tolerance: tol,
    }
}

/// `g^(k)_j = ω^{k·j(j+1)/2}` for odd `d >= 3`.
pub fn gauss_sequence(d: usize, k: i64) -> Result<Sequence> {
    if d < 3 || d % 2 == 0 {
        return Err(MubError::InvalidDimension {
            dimension: d as i64,
            reason: "Gauss sequences need an odd dimension d >= 3",
        });
    }
    let table = RootTable::new(d as i64)?;
    let values = (0..d as i64)
        .map(|j| triangular_phase(j, k, d as i64).map(|p| table.value(p)))
        .collect::<Result<Vec<_>>>()?;
    Sequence::new(values)
}

/// `(ω^{-j²/2})_j` for even `d`, the first column of `√d · R`.
pub fn square_phase_sequence(d: usize) -> Result<Sequence> {
    let table = RootTable::new(d as i64)?;
    let values = (0..d as i64)
        .map(|j| square_phase(j, d as i64).map(|p| table.value(p)))
        .collect::<Result<Vec<_>>>()?;
    Sequence::new(values)
}

/// A sequence whose entries are `m`-th roots of unity, stored by exponent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSequence {
    pub order: usize,
    pub exponents: Vec<usize>,
}

impl RootSequence {
    pub fn to_sequence(&self) -> Sequence {
        let table = RootTable::new(self.order as i64).expect("order >= 1");
        let values = self
            .exponents
            .iter()
            .map(|&e| table.at(2 * e as i128))
            .collect();
        Sequence { values }
    }

    /// Lexicographically smallest exponent vector over all cyclic shifts and
    /// global phases `exp(2iπ c/m)`.
    pub fn canonical(&self) -> RootSequence {
        let d = self.exponents.len();
        let m = self.order;
        let mut best: Option<Vec<usize>> = None;
        for shift in 0..d {
            for phase in 0..m {
                let candidate: Vec<usize> = (0..d)
                    .map(|j| (self.exponents[(j + shift) % d] + phase) % m)
                    .collect();
                if best.as_ref().map_or(true, |b| candidate < *b) {
                    best = Some(candidate);
                }
            }
        }
        RootSequence {
            order: m,
            exponents: best.unwrap_or_default(),
        }
    }

    /// Expresses a sequence over the `m`-th roots of unity, if every entry is one
    /// within `tol`.
    pub fn from_sequence(c: &Sequence, order: usize, tol: f64) -> Option<RootSequence> {
        let table = RootTable::new(order as i64).ok()?;
        let exponents = c
            .values
            .iter()
            .map(|z| (0..order).find(|&e| (table.at(2 * e as i128) - z).norm() <= tol))
            .collect::<Option<Vec<_>>>()?;
        Some(RootSequence { order, exponents })
    }
}

pub const SEARCH_MAX_DIMENSION: usize = 6;
pub const SEARCH_MAX_ORDER: usize = 12;

/// Every length-`d` sequence of `m`-th roots of unity that is bi-unimodular
/// within `tol`, in lexicographic order of exponents.
pub fn exhaustive_circulant_hadamard(d: usize, m: usize, tol: f64) -> Result<Vec<RootSequence>> {
    if d == 0 || m == 0 || d > SEARCH_MAX_DIMENSION || m > SEARCH_MAX_ORDER {
        return Err(MubError::SearchTooLarge {
            dimension: d,
            order: m,
        });
    }
    let total = m.pow(d as u32);
    let table = RootTable::new(m as i64)?;
    let roots: Vec<Complex64> = (0..m).map(|e| table.at(2 * e as i128)).collect();
    let mut hits: Vec<RootSequence> = (0..total)
        .into_par_iter()
        .filter_map(|index| {
            let mut rest = index;
            let mut exponents = vec![0; d];
            for slot in exponents.iter_mut().rev() {
                *slot = rest % m;
                rest /= m;
            }
            let values = exponents.iter().map(|&e| roots[e]).collect();
            let seq = Sequence { values };
            is_biunimodular(&seq, tol).passed.then_some(RootSequence {
                order: m,
                exponents,
            })
        })
        .collect();
    hits.sort();
    Ok(hits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn dft_of_constant_and_delta() {
        for d in 1..10 {
            let ones = Sequence::new(vec![c(1.0, 0.0); d]).unwrap();
            let hat = dft_sequence(&ones);
            assert!((hat.values()[0] - c((d as f64).sqrt(), 0.0)).norm() < 1e-12);
            assert!(hat.values()[1..].iter().all(|z| z.norm() < 1e-12));

            let mut delta = vec![c(0.0, 0.0); d];
            delta[0] = c(1.0, 0.0);
            let hat = dft_sequence(&Sequence::new(delta).unwrap());
            let s = (d as f64).sqrt().recip();
            assert!(hat.values().iter().all(|z| (z - c(s, 0.0)).norm() < 1e-15));
        }
    }

    #[test]
    fn conjugate_gauss_d3_is_flat() {
        let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        let seq = Sequence::new(vec![c(1.0, 0.0), w.conj(), c(1.0, 0.0)]).unwrap();
        let hat = dft_sequence(&seq);
        assert!(hat.values().iter().all(|z| (z.norm() - 1.0).abs() < 1e-12));
    }

    #[test]
    fn autocorrelation_basics() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        for d in 1..12 {
            let unimodular: Vec<_> = (0..d)
                .map(|_| Complex64::from_polar(1.0, rng.gen_range(0.0..6.3)))
                .collect();
            let seq = Sequence::new(unimodular).unwrap();
            assert!((autocorrelation(&seq, 0).unwrap() - c(d as f64, 0.0)).norm() < 1e-12);
            let ones = Sequence::new(vec![c(1.0, 0.0); d]).unwrap();
            for j in 0..d {
                assert_eq!(autocorrelation(&ones, j).unwrap(), c(d as f64, 0.0));
            }
            assert!(autocorrelation(&ones, d).is_err());
        }
    }

    #[test]
    fn biunimodular_verdicts() {
        for d in 2..8 {
            let ones = Sequence::new(vec![c(1.0, 0.0); d]).unwrap();
            assert!(!is_biunimodular(&ones, 1e-9).passed);
        }
        assert!(is_biunimodular(&gauss_sequence(3, 1).unwrap(), 1e-9).passed);
        assert!(is_biunimodular(&square_phase_sequence(4).unwrap(), 1e-9).passed);
        let report = is_biunimodular(&gauss_sequence(9, 3).unwrap(), 1e-9);
        assert!(!report.passed);
        assert!(report.sequence_deviation < 1e-12);
    }

    #[test]
    fn gauss_sequence_values() {
        let g0 = gauss_sequence(7, 0).unwrap();
        assert!(g0.values().iter().all(|z| *z == c(1.0, 0.0)));
        let g1 = gauss_sequence(3, 1).unwrap();
        let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        assert!((g1.values()[1] - w).norm() < 1e-15);
        assert_eq!(g1.values()[0], c(1.0, 0.0));
        assert_eq!(g1.values()[2], c(1.0, 0.0));
        assert!(gauss_sequence(4, 1).is_err());
        assert!(square_phase_sequence(5).is_err());
    }

    #[test]
    fn canonical_form_collapses_orbit() {
        let a = RootSequence { order: 3, exponents: vec![0, 1, 0] };
        let shifted = RootSequence { order: 3, exponents: vec![1, 0, 0] };
        let phased = RootSequence { order: 3, exponents: vec![2, 0, 2] };
        assert_eq!(a.canonical(), shifted.canonical());
        assert_eq!(a.canonical(), phased.canonical());
        assert_eq!(a.canonical().exponents, vec![0, 0, 1]);
    }

    #[test]
    fn search_bounds() {
        assert!(matches!(
            exhaustive_circulant_hadamard(7, 2, 1e-9),
            Err(MubError::SearchTooLarge { .. })
        ));
        assert!(exhaustive_circulant_hadamard(3, 13, 1e-9).is_err());
        assert!(exhaustive_circulant_hadamard(0, 3, 1e-9).is_err());
    }

    #[test]
    fn search_small_cases() {
        let d3 = exhaustive_circulant_hadamard(3, 3, 1e-9).unwrap();
        assert!(d3.contains(&RootSequence { order: 3, exponents: vec![0, 1, 0] }));
        // 2 orbits × 3 shifts × 3 phases
        assert_eq!(d3.len(), 18);
        let d2 = exhaustive_circulant_hadamard(2, 4, 1e-9).unwrap();
        assert!(d2.contains(&RootSequence { order: 4, exponents: vec![0, 1] }));
        assert!(d2.contains(&RootSequence { order: 4, exponents: vec![0, 3] }));
        // no sign pattern of length 3 is bi-unimodular
        assert!(exhaustive_circulant_hadamard(3, 2, 1e-9).unwrap().is_empty());
    }
}
