//! Randomized invariant checks over the core model operations and the
//! solver.

use num_bigint::BigInt;
use num_traits::Zero;
use nsw::binary::find_improving_path;
use nsw::model::{
    allocation_distance, apply_path, heavy_part, leximax_compare, nsw_product, utility_vector,
    Allocation, AlternatingPath, EdgeLabel, Instance, Rational, UtilityProfile,
};
use nsw::solver::solve;
use proptest::prelude::*;
use std::cmp::Ordering;

#[derive(Debug, Clone)]
struct ArbInstance {
    n: usize,
    m: usize,
    p: i64,
    heavy: Vec<(usize, usize)>,
}

fn arb_instance() -> impl Strategy<Value = ArbInstance> {
    (1usize..5, 0usize..7, 1i64..8).prop_flat_map(|(n, m, p)| {
        proptest::collection::vec(proptest::bool::ANY, n * m).prop_map(move |mask| {
            let heavy = mask
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(i, _)| (i / m.max(1), i % m.max(1)))
                .filter(|&(a, g)| a < n && g < m)
                .collect();
            ArbInstance { n, m, p, heavy }
        })
    })
}

fn build(spec: &ArbInstance) -> Instance {
    Instance::from_integer_p(spec.n, spec.m, spec.p, spec.heavy.clone()).unwrap()
}

fn arb_allocation(n: usize, m: usize) -> impl Strategy<Value = Allocation> {
    proptest::collection::vec(proptest::option::of(0..n.max(1)), m)
        .prop_map(Allocation::from_owner)
}

fn arb_pair() -> impl Strategy<Value = (ArbInstance, Allocation)> {
    arb_instance().prop_flat_map(|spec| {
        let (n, m) = (spec.n, spec.m);
        (Just(spec), arb_allocation(n, m))
    })
}

fn arb_triple() -> impl Strategy<Value = (ArbInstance, Allocation, Allocation, Allocation)> {
    arb_instance().prop_flat_map(|spec| {
        let (n, m) = (spec.n, spec.m);
        (
            Just(spec),
            arb_allocation(n, m),
            arb_allocation(n, m),
            arb_allocation(n, m),
        )
    })
}

fn invert(instance: &Instance, path: &AlternatingPath) -> AlternatingPath {
    AlternatingPath::new(
        instance,
        path.vertices().to_vec(),
        path.labels()
            .iter()
            .map(|l| match l {
                EdgeLabel::InAllocation => EdgeLabel::OutOfAllocation,
                EdgeLabel::OutOfAllocation => EdgeLabel::InAllocation,
            })
            .collect(),
    )
    .unwrap()
}

proptest! {
    #[test]
    fn heavy_part_is_idempotent((spec, alloc) in arb_pair()) {
        let inst = build(&spec);
        let h = heavy_part(&inst, &alloc).unwrap();
        prop_assert_eq!(heavy_part(&inst, &h).unwrap(), h);
    }

    #[test]
    fn utilities_are_additive((spec, alloc) in arb_pair()) {
        let inst = build(&spec);
        let u = utility_vector(&inst, &alloc).unwrap();
        let mut expected = vec![Rational::zero(); inst.agent_count()];
        for g in 0..inst.good_count() {
            if let Some(a) = alloc.owner_of(g) {
                expected[a] += inst.value(a, g);
            }
        }
        prop_assert_eq!(u.values, expected);
    }

    #[test]
    fn product_matches_utilities((spec, alloc) in arb_pair()) {
        let inst = build(&spec);
        let u = utility_vector(&inst, &alloc).unwrap();
        let product = nsw_product(&inst, &alloc).unwrap();
        let expected: Rational = u.values.iter().product();
        prop_assert_eq!(product.product, expected);
        prop_assert_eq!(product.n, inst.agent_count());
    }

    #[test]
    fn distance_is_a_metric((spec, a, b, c) in arb_triple()) {
        let _ = build(&spec);
        let d = |x: &Allocation, y: &Allocation| allocation_distance(x, y).unwrap();
        prop_assert_eq!(d(&a, &a), 0);
        prop_assert_eq!(d(&a, &b), d(&b, &a));
        prop_assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c));
        if d(&a, &b) == 0 {
            prop_assert_eq!(&a, &b);
        }
    }

    #[test]
    fn path_application_is_an_involution((spec, alloc) in arb_pair()) {
        let inst = build(&spec);
        // improving paths only exist against heavy-only allocations
        let base = heavy_part(&inst, &alloc).unwrap();
        if let Some(path) = find_improving_path(&inst, &base) {
            let after = apply_path(&base, &path).unwrap();
            prop_assert_ne!(&after, &base);
            let back = invert(&inst, &path);
            prop_assert_eq!(apply_path(&after, &back).unwrap(), base);
        }
    }

    #[test]
    fn augmentation_preserves_cardinality((spec, alloc) in arb_pair()) {
        let inst = build(&spec);
        let base = heavy_part(&inst, &alloc).unwrap();
        if let Some(path) = find_improving_path(&inst, &base) {
            let after = apply_path(&base, &path).unwrap();
            prop_assert_eq!(after.assigned_count(), base.assigned_count());
        }
    }

    #[test]
    fn leximax_is_permutation_invariant_and_total(
        values in proptest::collection::vec(0i64..20, 1..6),
        seed in 0u64..1000,
    ) {
        let to_profile = |vs: &[i64]| UtilityProfile {
            sorted: {
                let mut s: Vec<Rational> =
                    vs.iter().map(|&v| Rational::from_integer(BigInt::from(v))).collect();
                s.sort();
                s
            },
        };
        let a = to_profile(&values);
        // rotate by seed: a permutation of the same multiset
        let mut rotated = values.clone();
        rotated.rotate_left((seed as usize) % values.len());
        let b = to_profile(&rotated);
        prop_assert_eq!(leximax_compare(&a, &b).unwrap(), Ordering::Equal);
        // antisymmetry against a perturbed copy
        let mut bumped = values.clone();
        bumped[0] += 1;
        let c = to_profile(&bumped);
        let ab = leximax_compare(&a, &c).unwrap();
        let ba = leximax_compare(&c, &a).unwrap();
        prop_assert_eq!(ab, ba.reverse());
    }

    #[test]
    fn solver_output_is_complete_and_consistent(spec in arb_instance()) {
        let inst = build(&spec);
        let result = solve(&inst).unwrap();
        prop_assert!(result.allocation.is_complete());
        let u = utility_vector(&inst, &result.allocation).unwrap();
        prop_assert_eq!(u.profile().sorted, result.profile.sorted.clone());
        let expected: Rational = if u.values.iter().any(|v| v.is_zero()) {
            Rational::zero()
        } else {
            u.values.iter().product()
        };
        prop_assert_eq!(result.nsw.product, expected);
        prop_assert_eq!(
            result.optimality_claimed,
            inst.good_count() >= inst.agent_count()
        );
    }
}
