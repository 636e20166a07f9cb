use mub_core::linalg::{
    self, alpha, build_d, build_fourier, build_r, build_u, build_v, default_tolerance,
    CirculantMatrix,
};
use mub_core::mub::{coprime, is_prime};
use mub_core::phase_ring::RootTable;
use mub_core::sequences::{autocorrelation, dft_sequence, gauss_sequence, is_biunimodular, Sequence};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

fn complex_vec(d: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), d)
        .prop_map(|v| v.into_iter().map(|(re, im)| Complex64::new(re, im)).collect())
}

fn sized_vec(max: usize) -> impl Strategy<Value = Vec<Complex64>> {
    (1..=max).prop_flat_map(complex_vec)
}

fn pair_of_vecs(max: usize) -> impl Strategy<Value = (Vec<Complex64>, Vec<Complex64>)> {
    (1..=max).prop_flat_map(|d| (complex_vec(d), complex_vec(d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn circulant_product_matches_dense((a, b) in pair_of_vecs(64)) {
        let a = CirculantMatrix::new(a, "A").unwrap();
        let b = CirculantMatrix::new(b, "B").unwrap();
        let fast = linalg::circulant_multiply(&a, &b).unwrap().to_dense();
        let dense = a.to_dense().multiply(&b.to_dense()).unwrap();
        prop_assert!(fast.max_abs_diff(&dense).unwrap() < 1e-10);
        let swapped = linalg::circulant_multiply(&b, &a).unwrap();
        prop_assert!(fast.max_abs_diff(&swapped.to_dense()).unwrap() < 1e-12);
    }

    #[test]
    fn parseval(values in sized_vec(40)) {
        let seq = Sequence::new(values).unwrap();
        let hat = dft_sequence(&seq);
        let lhs: f64 = seq.values().iter().map(|z| z.norm_sqr()).sum();
        let rhs: f64 = hat.values().iter().map(|z| z.norm_sqr()).sum();
        prop_assert!((lhs - rhs).abs() < 1e-10);
    }

    #[test]
    fn autocorrelation_is_transform_of_power_spectrum(values in sized_vec(32)) {
        let d = values.len();
        let seq = Sequence::new(values).unwrap();
        let hat = dft_sequence(&seq);
        let table = RootTable::new(d as i64).unwrap();
        for j in 0..d {
            let direct = autocorrelation(&seq, j).unwrap();
            let spectral: Complex64 = hat
                .values()
                .iter()
                .enumerate()
                .map(|(l, z)| z.norm_sqr() * table.at(-2 * ((j * l) % d) as i128))
                .sum();
            prop_assert!((direct - spectral).norm() < 1e-10);
        }
    }

    #[test]
    fn diagonalization_matches_dense_conjugation(values in sized_vec(24)) {
        let d = values.len();
        let c = CirculantMatrix::new(values, "C").unwrap();
        let diag = linalg::diagonalize_circulant(&c).unwrap();
        let f = build_fourier(d).unwrap();
        let conj = f.adjoint_multiply(&c.to_dense().multiply(&f).unwrap()).unwrap();
        for j in 0..d {
            for k in 0..d {
                let want = if j == k { diag[j] } else { Complex64::new(0.0, 0.0) };
                prop_assert!((conj.get(j, k) - want).norm() < 1e-10);
            }
        }
    }
}

#[test]
fn shift_diagonalizes_to_clock() {
    for d in 2..40usize {
        let table = RootTable::new(d as i64).unwrap();
        let diag = linalg::diagonalize_circulant(&build_v(d).unwrap()).unwrap();
        let clock = build_u(d).unwrap().values(&table).unwrap();
        for (a, b) in diag.iter().zip(&clock) {
            assert!((a - b).norm() < 1e-12, "d={d}");
        }
    }
}

#[test]
fn rotation_diagonalizes_to_alpha_d() {
    for d in (3..40usize).step_by(2) {
        let table = RootTable::new(d as i64).unwrap();
        let diag = linalg::diagonalize_circulant(&build_r(d).unwrap()).unwrap();
        let a = alpha(d).unwrap();
        let dvals = build_d(d).unwrap().values(&table).unwrap();
        for (got, dv) in diag.iter().zip(&dvals) {
            assert!((got - a * dv).norm() < 1e-10, "d={d}");
        }
    }
}

#[test]
fn commutation_rule_up_to_100() {
    for d in 2..=100 {
        let dev = linalg::identities::commutation(d).unwrap();
        assert!(dev <= default_tolerance(d), "d={d} dev={dev:e}");
    }
}

#[test]
fn rotation_commutes_with_shift_and_powers_stay_circulant() {
    for d in 2..30usize {
        assert!(linalg::identities::rotation_commutes_with_shift(d).unwrap() < 1e-12);
        let r = build_r(d).unwrap();
        let dense_cube = r.to_dense().power(3, 0.0).unwrap();
        let circ_cube = r.power(3, 0.0).unwrap().to_dense();
        assert!(dense_cube.max_abs_diff(&circ_cube).unwrap() < 1e-12);
        let inv = r.power(-2, 1e-9).unwrap().multiply(&r.power(2, 0.0).unwrap()).unwrap();
        assert!(inv.to_dense().max_abs_diff(&mub_core::DenseMatrix::identity(d)).unwrap() < 1e-12);
    }
}

#[test]
fn even_fourier_times_rotation_is_hadamard() {
    for d in (2..=100usize).step_by(2) {
        let f = build_fourier(d).unwrap();
        let fr = f.adjoint_multiply(&build_r(d).unwrap().to_dense()).unwrap();
        assert!(fr.is_unitary_hadamard(default_tolerance(d)).passed, "d={d}");
    }
}

fn circulant_of(seq: &Sequence) -> mub_core::DenseMatrix {
    let d = seq.dimension();
    let scale = (d as f64).sqrt().recip();
    CirculantMatrix::new(seq.values().iter().map(|z| z * scale).collect(), "C")
        .unwrap()
        .to_dense()
}

#[test]
fn biunimodular_iff_scaled_circulant_is_hadamard() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(11);
    for d in [3usize, 5, 7, 9, 15] {
        let tol = default_tolerance(d);
        for k in 1..d as i64 {
            let g = gauss_sequence(d, k).unwrap();
            let seq_verdict = is_biunimodular(&g, tol).passed;
            let mat_verdict = circulant_of(&g).is_unitary_hadamard(tol).passed;
            assert_eq!(seq_verdict, mat_verdict, "d={d} k={k}");
        }
        for _ in 0..20 {
            let values: Vec<_> = (0..d)
                .map(|_| Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU)))
                .collect();
            let seq = Sequence::new(values).unwrap();
            let seq_verdict = is_biunimodular(&seq, tol).passed;
            let mat_verdict = circulant_of(&seq).is_unitary_hadamard(tol).passed;
            assert!(!seq_verdict);
            assert_eq!(seq_verdict, mat_verdict);
        }
    }
}

#[test]
fn gauss_sequences_biunimodular_for_primes() {
    for d in [3usize, 5, 7, 11, 13] {
        assert!(is_prime(d));
        for k in 1..d as i64 {
            let report = is_biunimodular(&gauss_sequence(d, k).unwrap(), default_tolerance(d));
            assert!(report.passed, "d={d} k={k} dev={:e}", report.deviation());
        }
    }
}

#[test]
fn gauss_sequences_for_odd_composites_follow_coprimality() {
    for d in [9usize, 15, 21, 25] {
        for k in 1..d as i64 {
            let report = is_biunimodular(&gauss_sequence(d, k).unwrap(), default_tolerance(d));
            if coprime(k, d) {
                assert!(report.passed, "d={d} k={k}");
            } else {
                // expected failure; the flat spectrum breaks into zeros and peaks
                assert!(!report.passed, "d={d} k={k}");
                let min = report.transform_moduli.iter().cloned().fold(f64::INFINITY, f64::min);
                let max = report.transform_moduli.iter().cloned().fold(0.0, f64::max);
                eprintln!("d={d} k={k}: |ĉ| in [{min:.6}, {max:.6}]");
            }
        }
    }
}
