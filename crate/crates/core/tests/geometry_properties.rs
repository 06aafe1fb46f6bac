//! Randomized invariants for the geometry layer: positivity of
//! definite forms, orthogonal-complement positivity on generated
//! combinations, decomposition coherence, and the quantitative
//! diagonalization residual bound.

use gennum_core::causal::{
    classify, decompose, orthogonal_complement_basis, riemannian_from_pair, same_orientation,
    BilinearForm, CausalKind,
};
use gennum_core::fixtures;
use gennum_core::gen_linalg::{
    gen_eigen, gram_matrix, is_free, matrix_index, GenMatrix, GenVector,
};
use gennum_core::gen_num::{EpsGrid, GenNumber};
use gennum_core::rng::SplitMix64;

fn grid() -> EpsGrid {
    EpsGrid::default()
}

fn random_symmetric(g: EpsGrid, n: usize, rng: &mut SplitMix64) -> GenMatrix {
    let mut rows = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i..n {
            let v = rng.range(-2.0, 2.0);
            rows[i][j] = v;
            rows[j][i] = v;
        }
    }
    GenMatrix::from_rows_f64(g, &rows)
}

fn random_positive_definite(g: EpsGrid, n: usize, rng: &mut SplitMix64) -> GenMatrix {
    // diagonally dominant symmetric matrices are positive definite
    let mut rows = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let v = rng.range(-0.3, 0.3);
            rows[i][j] = v;
            rows[j][i] = v;
        }
    }
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] = rng.range(1.0, 2.0);
    }
    GenMatrix::from_rows_f64(g, &rows)
}

/// Positive definite forms are nonnegative everywhere and vanish only
/// on the zero class.
#[test]
fn definite_forms_are_nonnegative_and_separate_zero() {
    let g = grid();
    let mut rng = SplitMix64::new(41);
    for n in 2..=4usize {
        for _ in 0..10 {
            let h = random_positive_definite(g, n, &mut rng);
            assert!(matrix_index(&h).unwrap().is_positive_definite());
            let zero = GenNumber::constant(g, 0.0);
            for _ in 0..5 {
                let vals: Vec<f64> = (0..n).map(|_| rng.range(-2.0, 2.0)).collect();
                let v = GenVector::from_f64s(g, &vals);
                let q = h.bilinear(&v, &v).unwrap();
                assert!(zero.leq(&q).is_holds(), "h(v,v) must be >= 0");
            }
            // h(v, v) negligible exactly when every entry of v is
            let nearly_zero = GenVector::new(
                (0..n)
                    .map(|_| GenNumber::make(g, |e| (-1.0 / e).exp()).unwrap())
                    .collect(),
            )
            .unwrap();
            let q = h.bilinear(&nearly_zero, &nearly_zero).unwrap();
            assert!(q.is_negligible().is_holds());
            assert!(nearly_zero.is_negligible());
            let unit = GenVector::basis(g, n, 0);
            assert!(h.bilinear(&unit, &unit).unwrap().is_negligible().is_fails());
        }
    }
}

/// Positive definite forms are strictly positive on every free vector.
#[test]
fn definite_forms_are_strictly_positive_on_free_vectors() {
    let g = grid();
    let mut rng = SplitMix64::new(43);
    for _ in 0..20 {
        let h = random_positive_definite(g, 3, &mut rng);
        // free vectors of different species
        let candidates = [
            GenVector::from_f64s(g, &[rng.range(0.5, 1.5), rng.range(-1.0, 1.0), 0.0]),
            fixtures::signed_partition_vector(g, 3),
            GenVector::new(vec![
                GenNumber::make(g, |e| e.powi(2)).unwrap(),
                GenNumber::constant(g, 0.0),
                GenNumber::make(g, |e| e.powi(5)).unwrap(),
            ])
            .unwrap(),
        ];
        for v in candidates {
            assert!(is_free(&v).is_holds());
            assert!(h
                .bilinear(&v, &v)
                .unwrap()
                .is_strictly_positive()
                .is_holds());
        }
    }
}

/// Every vector of the orthogonal complement of a time-like vector
/// spans space-like directions: combinations with strictly nonzero
/// coefficients have strictly positive norm.
#[test]
fn complement_combinations_are_spacelike() {
    let g = grid();
    let mut rng = SplitMix64::new(47);
    for _ in 0..10 {
        let mut rows = vec![
            vec![rng.range(-2.0, -1.0), 0.0, 0.0],
            vec![0.0, rng.range(1.0, 2.0), rng.range(-0.2, 0.2)],
            vec![0.0, 0.0, rng.range(1.0, 2.0)],
        ];
        let c = rows[1][2];
        rows[2][1] = c;
        let form = BilinearForm::lorentzian(&GenMatrix::from_rows_f64(g, &rows)).unwrap();
        let u = GenVector::from_f64s(g, &[1.0, rng.range(-0.2, 0.2), rng.range(-0.2, 0.2)]);
        assert!(classify(&form, &u).unwrap().is_timelike());
        let comp = orthogonal_complement_basis(&form, &u).unwrap();
        for _ in 0..5 {
            // combination with strictly nonzero coefficients
            let coeffs: Vec<f64> = (0..comp.vectors.len())
                .map(|_| rng.range(0.3, 1.5) * rng.sign())
                .collect();
            let mut w = comp.vectors[0].scale_f64(coeffs[0]);
            for (vec, &c) in comp.vectors.iter().zip(coeffs.iter()).skip(1) {
                w = w.add(&vec.scale_f64(c)).unwrap();
            }
            assert!(is_free(&w).is_holds());
            let norm = form.apply(&w, &w).unwrap();
            assert!(
                norm.is_strictly_positive().is_holds(),
                "complement combination must be space-like"
            );
            // and it stays orthogonal to u
            assert!(form
                .apply(&u, &w)
                .unwrap()
                .is_negligible_with_floor(1e-10)
                .is_holds());
        }
        // the Gram matrix of the complement is positive definite
        let gram = gram_matrix(&comp.vectors, form.matrix()).unwrap();
        assert!(matrix_index(&gram).unwrap().is_positive_definite());
    }
}

/// The split along a time-like direction reconstructs the vector and
/// classifies its parts.
#[test]
fn decomposition_reconstructs_and_classifies() {
    let g = grid();
    let mut rng = SplitMix64::new(53);
    let form = BilinearForm::lorentzian(&fixtures::minkowski(g, 4)).unwrap();
    for _ in 0..20 {
        let u = GenVector::from_f64s(
            g,
            &[
                rng.range(1.0, 2.0),
                rng.range(-0.5, 0.5),
                rng.range(-0.5, 0.5),
                0.0,
            ],
        );
        assert!(classify(&form, &u).unwrap().is_timelike());
        let v = GenVector::from_f64s(
            g,
            &[
                rng.range(-2.0, 2.0),
                rng.range(-2.0, 2.0),
                rng.range(-2.0, 2.0),
                rng.range(-2.0, 2.0),
            ],
        );
        let (a, w) = decompose(&form, &u, &v).unwrap();
        let rebuilt = w.add(&u.scale(&a).unwrap()).unwrap();
        let diff = rebuilt.sub(&v).unwrap();
        for e in diff.entries() {
            assert!(e.is_negligible_with_floor(1e-12).is_holds());
        }
        assert!(form
            .apply(&u, &w)
            .unwrap()
            .is_negligible_with_floor(1e-12)
            .is_holds());
    }
}

/// Quantitative residual bound of the slice-wise diagonalization.
#[test]
fn diagonalization_residual_is_machine_precision_small() {
    let g = grid();
    let mut rng = SplitMix64::new(59);
    for n in 2..=5usize {
        for _ in 0..10 {
            let a = random_symmetric(g, n, &mut rng);
            let eig = gen_eigen(&a).unwrap();
            assert!(eig.residual().is_negligible().is_holds());
            for (i, k) in g.indices().enumerate() {
                let scale = {
                    let s = a.sample_at(k);
                    s.a.iter().map(|x| x * x).sum::<f64>().sqrt()
                };
                let bound = 10.0 * (n * n) as f64 * f64::EPSILON * scale.max(1.0);
                assert!(
                    eig.residual_raw()[i] <= bound,
                    "raw residual {} above {bound} at k={k} (n={n})",
                    eig.residual_raw()[i]
                );
            }
        }
    }
}

/// Same-orientation time-like pairs produce positive definite
/// Riemannian forms with strictly positive values on free vectors.
#[test]
fn pair_forms_are_strictly_positive_on_free_vectors() {
    let g = grid();
    let mut rng = SplitMix64::new(61);
    let form = BilinearForm::lorentzian(&fixtures::minkowski(g, 4)).unwrap();
    for _ in 0..10 {
        let u = GenVector::from_f64s(g, &[rng.range(1.0, 2.0), rng.range(-0.4, 0.4), 0.0, 0.0]);
        let v = GenVector::from_f64s(g, &[rng.range(1.0, 2.0), 0.0, rng.range(-0.4, 0.4), 0.0]);
        assert!(same_orientation(&form, &u, &v).unwrap().is_holds());
        let h = riemannian_from_pair(&form, &u, &v).unwrap();
        for w in [
            fixtures::signed_partition_vector(g, 4),
            GenVector::from_f64s(g, &[0.0, 1.0, 1.0, -1.0]),
            GenVector::new(vec![
                GenNumber::eps(g),
                GenNumber::constant(g, 0.0),
                GenNumber::constant(g, 0.0),
                GenNumber::make(g, |e| e * e).unwrap(),
            ])
            .unwrap(),
        ] {
            assert!(is_free(&w).is_holds());
            assert!(h
                .bilinear(&w, &w)
                .unwrap()
                .is_strictly_positive()
                .is_holds());
        }
    }
}

/// Exact dyadic null vectors classify as null; a norm defect that is a
/// nonzero constant net honestly classifies by the sign it carries.
#[test]
fn light_cone_classification_is_stable() {
    let g = grid();
    let form = BilinearForm::lorentzian(&fixtures::minkowski(g, 4)).unwrap();
    // squared-sum triples that are exact in dyadic arithmetic
    let exact_null = [
        [1.25, 1.0, 0.75, 0.0],
        [1.625, 0.625, 1.5, 0.0],
        [1.5, 1.0, 0.5, 1.0],
        [1.625, 0.375, 0.5, 1.5],
    ];
    for vals in exact_null {
        let v = GenVector::from_f64s(g, &vals);
        let norm = form.apply(&v, &v).unwrap();
        assert!(
            norm.samples().iter().all(|&s| s == 0.0),
            "fixture {vals:?} must have an exactly vanishing norm"
        );
        let c = classify(&form, &v).unwrap();
        assert_eq!(c.kind, CausalKind::Null, "fixture {vals:?}");
        assert!(c.free.unwrap().is_holds());
    }
    // the same direction scaled by eps stays null (free, zero norm)
    let v = GenVector::new(vec![
        GenNumber::make(g, |e| 1.25 * e).unwrap(),
        GenNumber::eps(g),
        GenNumber::make(g, |e| 0.75 * e).unwrap(),
        GenNumber::constant(g, 0.0),
    ])
    .unwrap();
    let c = classify(&form, &v).unwrap();
    assert_eq!(c.kind, CausalKind::Null);
}
