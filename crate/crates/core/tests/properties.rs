use std::sync::Arc;

use proptest::prelude::*;

use lt_hkr::arith::LocalRational;
use lt_hkr::fgl::{self, FormalGroupLaw};
use lt_hkr::groups::{self, FiniteGroup, DEFAULT_CLOSURE_CAP, DEFAULT_TUPLE_BUDGET};
use lt_hkr::hkr::{self, Budgets, Character};

fn small_permutation_group() -> impl Strategy<Value = FiniteGroup> {
    (2usize..=5)
        .prop_flat_map(|d| {
            let perm = Just((0..d).collect::<Vec<usize>>()).prop_shuffle();
            (Just(d), prop::collection::vec(perm, 1..=2))
        })
        .prop_map(|(d, gens)| FiniteGroup::from_permutations("random", d, &gens, DEFAULT_CLOSURE_CAP).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn class_counts_agree_for_random_groups(g in small_permutation_group(), n in 1usize..=2, p in prop::sample::select(vec![2u64, 3])) {
        let g = Arc::new(g);
        let s = groups::tuple_classes(&g, n, p, DEFAULT_TUPLE_BUDGET).unwrap();
        let oracle = groups::centralizer_count_oracle(&g, n, p, DEFAULT_TUPLE_BUDGET).unwrap();
        let burnside = groups::burnside_count(&g, s.tuples()).unwrap();
        prop_assert_eq!(s.len() as u64, oracle);
        prop_assert_eq!(oracle, burnside);
        let sizes: usize = s.classes.iter().map(|c| c.size).sum();
        prop_assert_eq!(sizes, s.tuples().len());
    }

    #[test]
    fn unit_orbits_partition_the_classes(g in small_permutation_group(), p in prop::sample::select(vec![2u64, 3])) {
        let g = Arc::new(g);
        let k = lt_hkr::arith::LocalField::qp(p, 8).unwrap();
        let d = hkr::unit_orbits(&k, &g, None, Budgets::default()).unwrap();
        let sum: usize = d.degrees().iter().sum();
        prop_assert_eq!(sum, d.total_classes);
        for pt in &d.points {
            prop_assert_eq!(pt.degree * pt.stabilizer_order, d.acting_group_order);
        }
        prop_assert_eq!(d.total_classes, hkr::rank(&k, &g, Budgets::default()).unwrap());
    }

    #[test]
    fn endomorphisms_form_a_ring(a in -6i64..=6, b in -6i64..=6) {
        let f = FormalGroupLaw::hazewinkel(2, 1, 12).unwrap();
        let r = fgl::verify_ring_hom(&f, &LocalRational::from_int(a, 2), &LocalRational::from_int(b, 2), 12).unwrap();
        prop_assert!(r.pass);
    }

    #[test]
    fn characters_of_cyclic_groups(m in 2usize..=9, k in 0i64..9) {
        let g = FiniteGroup::cyclic(m);
        let lambda = Character::new(&[(k, m as i64)]).unwrap();
        let values = lambda.values(&g).unwrap();
        for x in 0..m {
            let expected = num_rational::Ratio::new((k * x as i64).rem_euclid(m as i64), m as i64);
            prop_assert_eq!(values[x], expected);
        }
        let bad = Character::new(&[(1, m as i64 + 1)]).unwrap();
        prop_assert!(bad.values(&g).is_err());
    }
}
