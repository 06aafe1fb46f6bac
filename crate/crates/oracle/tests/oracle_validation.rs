//! Validation of the independent slice oracles against hand values and
//! against the generalized pipeline.

use gennum_core::causal::{inverse_cauchy_schwarz, BilinearForm};
use gennum_core::fixtures;
use gennum_core::gen_linalg::{is_free, GenMatrix, GenVector};
use gennum_core::gen_num::{EpsGrid, GenNumber, IndexSet};
use gennum_core::rng::SplitMix64;
use gennum_oracle::{
    complex_spectrum_2x2, freeness_oracle, perturbation_check, slice_causality_oracle,
    slice_eigen_oracle, sym_eigenvalues_desc, OracleError, SliceValue,
};

fn grid() -> EpsGrid {
    EpsGrid::default()
}

#[test]
fn closed_form_matches_pipeline_on_diagonal() {
    let a = GenMatrix::from_rows_f64(grid(), &[vec![1.0, 0.0], vec![0.0, -1.0]]);
    let reports = slice_eigen_oracle(&a).unwrap();
    for r in &reports {
        match &r.classical {
            SliceValue::Eigenvalues(l) => assert_eq!(l, &vec![1.0, -1.0]),
            other => panic!("unexpected payload {other:?}"),
        }
        assert_eq!(r.delta, 0.0);
    }
}

#[test]
fn quadratic_roots_by_hand() {
    let l = sym_eigenvalues_desc(2, &[2.0, 1.0, 1.0, 2.0]).unwrap();
    assert_eq!(l, vec![3.0, 1.0]);
}

#[test]
fn cubic_and_sturm_agree_with_pipeline() {
    let mut rng = SplitMix64::new(2024);
    for n in 2..=6usize {
        for _ in 0..10 {
            let a = gennum_oracle::corpus::random_symmetric(grid(), n, &mut rng);
            let reports = slice_eigen_oracle(&a).unwrap();
            for r in &reports {
                let scale = a.max_abs_at(r.k).max(1.0);
                assert!(
                    r.delta <= 1e-10 * scale,
                    "delta {} too large at n={n}, k={}",
                    r.delta,
                    r.k
                );
            }
        }
    }
}

#[test]
fn sturm_handles_multiplicities() {
    // diag(2, 2, 2, 2) tests repeated roots in the bisection path
    let mut flat = vec![0.0; 16];
    for i in 0..4 {
        flat[i * 4 + i] = 2.0;
    }
    let l = sym_eigenvalues_desc(4, &flat).unwrap();
    for x in l {
        assert!((x - 2.0).abs() < 1e-12);
    }
}

#[test]
fn trig_method_against_sturm_on_3x3() {
    let mut rng = SplitMix64::new(5);
    for _ in 0..50 {
        let mut flat = vec![0.0; 9];
        for i in 0..3 {
            for j in i..3 {
                let v = rng.range(-2.0, 2.0);
                flat[i * 3 + j] = v;
                flat[j * 3 + i] = v;
            }
        }
        let trig = sym_eigenvalues_desc(3, &flat).unwrap();
        // embed into 4x4 with a far-away eigenvalue so the Sturm path runs
        let mut big = vec![0.0; 16];
        for i in 0..3 {
            for j in 0..3 {
                big[i * 4 + j] = flat[i * 3 + j];
            }
        }
        big[15] = 100.0;
        let sturm = sym_eigenvalues_desc(4, &big).unwrap();
        assert!((sturm[0] - 100.0).abs() < 1e-9);
        for (a, b) in trig.iter().zip(sturm[1..].iter()) {
            assert!((a - b).abs() < 1e-9, "trig {a} vs sturm {b}");
        }
    }
}

#[test]
fn perturbation_bound_on_random_3x3() {
    let mut rng = SplitMix64::new(77);
    for _ in 0..20 {
        let a = gennum_oracle::corpus::random_symmetric(grid(), 3, &mut rng);
        let e = gennum_oracle::corpus::random_negligible(grid(), 3, &mut rng);
        let reports = perturbation_check(&a, &e).unwrap();
        for r in &reports {
            assert!(
                r.delta <= 1e-10,
                "spectral distance exceeded sqrt(2)||E||_F + tol at k={}",
                r.k
            );
        }
    }
}

#[test]
fn complex_route_confirms_bound_for_nonsymmetric_2x2() {
    // A symmetric, A + E non-symmetric: the complex spectrum of the
    // perturbed slice stays within sqrt(2) ||E||_F of the real one
    let a = [1.0, 0.0, 0.0, -1.0];
    let e = [0.0, 3e-3, -2e-3, 0.0];
    let perturbed = [a[0] + e[0], a[1] + e[1], a[2] + e[2], a[3] + e[3]];
    let lam = sym_eigenvalues_desc(2, &a).unwrap();
    let mu = complex_spectrum_2x2(&perturbed);
    let dist = ((mu[0].0 - lam[0]).powi(2)
        + mu[0].1.powi(2)
        + (mu[1].0 - lam[1]).powi(2)
        + mu[1].1.powi(2))
    .sqrt();
    let e_norm = e.iter().map(|x| x * x).sum::<f64>().sqrt();
    assert!(dist <= std::f64::consts::SQRT_2 * e_norm + 1e-15);
}

#[test]
fn causality_oracle_on_minkowski_rest_vector() {
    let g = fixtures::minkowski(grid(), 4);
    let u = GenVector::from_f64s(grid(), &[1.0, 0.0, 0.0, 0.0]);
    let reports = slice_causality_oracle(&g, &u).unwrap();
    for r in reports {
        match r.classical {
            SliceValue::Causal { code, norm } => {
                assert_eq!(code, -1);
                assert_eq!(norm, -1.0);
            }
            other => panic!("unexpected payload {other:?}"),
        }
    }
}

#[test]
fn causality_oracle_sees_classical_timelike_slices_where_strictness_fails() {
    // every slice of the zero-divisor pair is classically time-like,
    // yet the generalized strict inequality fails: the purely
    // generalized phenomenon
    let g_mat = fixtures::minkowski(grid(), 4);
    let (u, v, _, _) = fixtures::cs_zero_divisor_pair(grid(), 4);
    let reports = slice_causality_oracle(&g_mat, &v).unwrap();
    for r in &reports {
        match r.classical {
            SliceValue::Causal { code, norm } => {
                assert_eq!(code, -1, "slice {} must be classically time-like", r.k);
                assert!(norm >= -1.0);
            }
            _ => unreachable!(),
        }
    }
    let form = BilinearForm::lorentzian(&g_mat).unwrap();
    let cs = inverse_cauchy_schwarz(&form, &u, &v).unwrap();
    assert!(cs.inequality.is_holds());
    assert!(cs.strict.is_fails());
}

#[test]
fn causality_oracle_flags_alternating_sign_norms() {
    let g = fixtures::minkowski(grid(), 2);
    let gr = grid();
    // norm alternates between -4 and +1 with grid parity
    let u = GenVector::new(vec![
        GenNumber::chi(gr, &IndexSet::Even).scaled(2.0),
        GenNumber::chi(gr, &IndexSet::Odd),
    ])
    .unwrap();
    let reports = slice_causality_oracle(&g, &u).unwrap();
    let mut saw_time = false;
    let mut saw_space = false;
    for r in reports {
        if let SliceValue::Causal { code, .. } = r.classical {
            saw_time |= code == -1;
            saw_space |= code == 1;
        }
    }
    assert!(saw_time && saw_space, "slices must disagree in sign");
}

#[test]
fn causality_oracle_rejects_non_lorentzian_slices() {
    let g = GenMatrix::identity(grid(), 3);
    let u = GenVector::basis(grid(), 3, 0);
    assert!(matches!(
        slice_causality_oracle(&g, &u).unwrap_err(),
        OracleError::SliceNotLorentzian { .. }
    ));
}

#[test]
fn freeness_oracle_on_basis_vector() {
    let v = GenVector::basis(grid(), 3, 0);
    let s = freeness_oracle(&v);
    assert!(s.eventually_nonzero);
    assert_eq!(s.lower_bound_exponent, Some(0));
    assert!(is_free(&v).is_holds());
}

#[test]
fn freeness_oracle_on_gap_vector() {
    let gr = grid();
    let v = GenVector::new(vec![
        GenNumber::chi(gr, &IndexSet::Even),
        GenNumber::constant(gr, 0.0),
    ])
    .unwrap();
    let s = freeness_oracle(&v);
    assert!(!s.eventually_nonzero);
    assert_eq!(s.lower_bound_exponent, None);
    assert!(is_free(&v).is_fails());
}

#[test]
fn freeness_oracle_exponent_for_power_law_pair() {
    let gr = grid();
    let v = GenVector::new(vec![
        GenNumber::make(gr, |e| e.powi(10)).unwrap(),
        GenNumber::make(gr, |e| e.powi(20)).unwrap(),
    ])
    .unwrap();
    let s = freeness_oracle(&v);
    assert!(s.eventually_nonzero);
    assert_eq!(s.lower_bound_exponent, Some(20));
    let f = is_free(&v);
    assert!(f.is_holds());
    assert_eq!(f.exponent(), Some(20));
}

#[test]
fn oracle_agrees_with_pipeline_on_freeness_corpus() {
    let mut rng = SplitMix64::new(314);
    let corpus = gennum_oracle::corpus::freeness_corpus(grid(), 60, &mut rng);
    for case in corpus {
        let norm_route = is_free(&case.vector).is_holds();
        let slice_route = freeness_oracle(&case.vector).eventually_nonzero;
        assert_eq!(
            norm_route, case.expect_free,
            "norm route disagrees on {}",
            case.kind
        );
        assert_eq!(
            slice_route, case.expect_free,
            "slice route disagrees on {}",
            case.kind
        );
    }
}

#[test]
fn dimension_cap_is_enforced() {
    let a = GenMatrix::identity(grid(), 7);
    assert!(matches!(
        slice_eigen_oracle(&a).unwrap_err(),
        OracleError::DimensionTooLarge { n: 7 }
    ));
}

#[test]
fn classification_agrees_with_classical_slices() {
    // when every slice is a classical Lorentz metric and the vector's
    // classical character is uniform across the tail, the generalized
    // verdict matches it
    let mut rng = SplitMix64::new(0xACC0);
    let g = grid();
    for _ in 0..15 {
        let scene = gennum_oracle::corpus::random_lorentz_scene(g, 4, &mut rng);
        let form = BilinearForm::lorentzian(&scene.form_matrix).unwrap();
        for _ in 0..5 {
            let u = scene.random_timelike(&mut rng);
            let reports = slice_causality_oracle(&scene.form_matrix, &u).unwrap();
            let codes: Vec<i8> = reports
                .iter()
                .map(|r| match r.classical {
                    SliceValue::Causal { code, .. } => code,
                    _ => unreachable!(),
                })
                .collect();
            assert!(codes.iter().all(|&c| c == -1), "time-like slices expected");
            let class = gennum_core::causal::classify(&form, &u).unwrap();
            assert_eq!(class.kind, gennum_core::causal::CausalKind::TimeLike);
        }
        let w = scene.random_spacelike_candidate(&mut rng);
        let reports = slice_causality_oracle(&scene.form_matrix, &w).unwrap();
        let codes: Vec<i8> = reports
            .iter()
            .map(|r| match r.classical {
                SliceValue::Causal { code, .. } => code,
                _ => unreachable!(),
            })
            .collect();
        if codes.iter().all(|&c| c == 1) {
            let class = gennum_core::causal::classify(&form, &w).unwrap();
            assert_eq!(class.kind, gennum_core::causal::CausalKind::SpaceLike);
        }
    }
}
