//! Property tests for the ring of nets: exactness of the ring axioms
//! on dyadic-safe corpora, verdict coherence, and order arithmetic.

use gennum_core::gen_num::{EpsGrid, GenNumber, IndexSet};
use proptest::prelude::*;

fn grid() -> EpsGrid {
    EpsGrid::new(16, 8, 40).unwrap()
}

/// Dyadic-safe coefficient: m/8 with |m| <= 16. Sums and products of
/// three such values scaled by eps^p (p <= 2) stay exactly
/// representable on the 16-point grid.
fn dyadic() -> impl Strategy<Value = f64> {
    (-16i32..=16).prop_map(|m| m as f64 / 8.0)
}

fn power() -> impl Strategy<Value = i32> {
    0i32..=2
}

fn corpus_net() -> impl Strategy<Value = GenNumber> {
    (dyadic(), power(), prop_oneof![Just(0u8), Just(1), Just(2)]).prop_map(|(c, p, chi_kind)| {
        let base = GenNumber::make(grid(), move |e| c * e.powi(p)).unwrap();
        match chi_kind {
            1 => &base * &GenNumber::chi(grid(), &IndexSet::Even),
            2 => &base * &GenNumber::chi(grid(), &IndexSet::Odd),
            _ => base,
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn distributivity_is_sample_exact(x in corpus_net(), y in corpus_net(), z in corpus_net()) {
        let left = &(&x + &y) * &z;
        let right = &(&x * &z) + &(&y * &z);
        for k in grid().indices() {
            prop_assert_eq!(left.sample(k), right.sample(k));
        }
    }

    #[test]
    fn addition_is_commutative_and_associative(x in corpus_net(), y in corpus_net(), z in corpus_net()) {
        let ab = &x + &y;
        let ba = &y + &x;
        let l = &(&x + &y) + &z;
        let r = &x + &(&y + &z);
        for k in grid().indices() {
            prop_assert_eq!(ab.sample(k), ba.sample(k));
            prop_assert_eq!(l.sample(k), r.sample(k));
        }
    }

    #[test]
    fn multiplication_is_commutative_and_associative(x in corpus_net(), y in corpus_net(), z in corpus_net()) {
        let ab = &x * &y;
        let ba = &y * &x;
        let l = &(&x * &y) * &z;
        let r = &x * &(&y * &z);
        for k in grid().indices() {
            prop_assert_eq!(ab.sample(k), ba.sample(k));
            prop_assert_eq!(l.sample(k), r.sample(k));
        }
    }

    #[test]
    fn strict_positivity_implies_invertibility(c in 1i32..=16, p in power()) {
        let c = c as f64 / 8.0;
        let x = GenNumber::make(grid(), move |e| c * e.powi(p)).unwrap();
        prop_assert!(x.is_strictly_positive().is_holds());
        prop_assert!(x.is_invertible().is_holds());
    }

    #[test]
    fn order_of_products_adds_for_power_laws(p in 0i32..=5, q in 0i32..=5, c in 1i32..=16, d in 1i32..=16) {
        let (c, d) = (c as f64 / 8.0, d as f64 / 8.0);
        let x = GenNumber::make(grid(), move |e| c * e.powi(p)).unwrap();
        let y = GenNumber::make(grid(), move |e| d * e.powi(q)).unwrap();
        let xy = &x * &y;
        prop_assert_eq!(xy.estimate_order().exponent(), Some(p + q));
    }

    #[test]
    fn leq_is_reflexive_and_respects_negligible_shifts(x in corpus_net()) {
        prop_assert!(x.leq(&x).is_holds());
        let shifted = &x + &GenNumber::make(grid(), |e| (-1.0 / e).exp()).unwrap();
        prop_assert!(x.leq(&shifted).is_holds());
        prop_assert!(shifted.leq(&x).is_holds());
        prop_assert!(x.eq_class(&shifted).is_holds());
    }

    #[test]
    fn negation_flips_order(x in corpus_net(), y in corpus_net()) {
        // x <= y implies -y <= -x
        if x.leq(&y).is_holds() {
            prop_assert!(y.negate().leq(&x.negate()).is_holds());
        }
    }

    #[test]
    fn order_is_antisymmetric_up_to_class_equality(x in corpus_net(), y in corpus_net()) {
        if x.leq(&y).is_holds() && y.leq(&x).is_holds() {
            prop_assert!(x.eq_class(&y).is_holds());
        }
    }

    #[test]
    fn negligibility_is_equality_with_zero(x in corpus_net()) {
        let zero = GenNumber::constant(grid(), 0.0);
        prop_assert_eq!(x.is_negligible().is_holds(), x.eq_class(&zero).is_holds());
    }

    #[test]
    fn chi_complement_pairs_annihilate(kind in 0u8..=2) {
        let set = match kind {
            0 => IndexSet::Even,
            1 => IndexSet::PowersOfTwo,
            _ => IndexSet::ArithmeticProgression(2, 3),
        };
        let g = grid();
        let a = GenNumber::chi(g, &set);
        let b = GenNumber::chi(g, &set.complement(g.k_max()));
        let prod = &a * &b;
        let sum = &a + &b;
        for k in g.indices() {
            prop_assert_eq!(prod.sample(k), 0.0);
            prop_assert_eq!(sum.sample(k), 1.0);
        }
        prop_assert!(prod.is_negligible().is_holds());
    }

    #[test]
    fn samples_stay_reproducible_through_ops(x in corpus_net(), y in corpus_net()) {
        let combined = &(&x * &y) + &x.negate();
        prop_assert!(combined.samples_reproducible());
    }
}
