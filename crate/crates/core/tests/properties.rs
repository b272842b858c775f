mod common;

use std::collections::BTreeMap;

use common::{figure1_instances, twisted};
use diagroot::{
    chi_eval, figure1_rows, generate, nichols_dimension, sl2_order_finite, subslz_certificate,
    twist_equivalent, weyl_equivalent, weyl_orbit, BraidingMatrix, CartanEntry, GroupValue,
    IntVector, Mat2Z, OrderedBasis, ValueGroup, DEFAULT_CAP,
};
use proptest::prelude::*;

fn group() -> impl Strategy<Value = ValueGroup> {
    (0usize..=2, 1u64..=24).prop_map(|(f, n)| ValueGroup::new(f, n).unwrap())
}

fn value_in(g: ValueGroup) -> impl Strategy<Value = GroupValue> {
    (
        prop::collection::vec(-6i64..=6, g.free_rank()),
        0..g.torsion(),
    )
        .prop_map(move |(f, t)| g.value(f, t).unwrap())
}

fn rank2_matrix() -> impl Strategy<Value = BraidingMatrix> {
    group().prop_flat_map(|g| {
        prop::collection::vec(value_in(g), 4).prop_map(|e| BraidingMatrix::new(2, e).unwrap())
    })
}

fn small_vector(n: usize) -> impl Strategy<Value = IntVector> {
    prop::collection::vec(-4i64..=4, n).prop_map(IntVector)
}

fn unimodular() -> impl Strategy<Value = Mat2Z> {
    (-4i64..=4, -4i64..=4, -4i64..=4, -4i64..=4)
        .prop_map(|(a, b, c, d)| Mat2Z::new(a, b, c, d))
        .prop_filter("det ±1", |m| m.det().abs() == 1)
}

proptest! {
    #[test]
    fn group_laws((a, b, c) in group().prop_flat_map(|g| (value_in(g), value_in(g), value_in(g)))) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert!(a.mul(&a.inv().unwrap()).unwrap().is_one());
        prop_assert_eq!(a.pow(3).unwrap(), a.mul(&a).unwrap().mul(&a).unwrap());
        prop_assert_eq!(a.pow(-2).unwrap(), a.inv().unwrap().pow(2).unwrap());
    }

    #[test]
    fn finite_orders_annihilate(a in group().prop_flat_map(value_in)) {
        if let diagroot::Order::Finite(n) = a.order() {
            prop_assert!(a.pow(n as i64).unwrap().is_one());
            prop_assert!(a.is_primitive_root(n));
            for k in 1..n {
                prop_assert!(!a.pow(k as i64).unwrap().is_one());
            }
        } else {
            prop_assert!(a.free().iter().any(|&x| x != 0));
        }
    }

    #[test]
    fn chi_is_bimultiplicative(
        (q, d, e, f) in rank2_matrix().prop_flat_map(|q| (Just(q), small_vector(2), small_vector(2), small_vector(2)))
    ) {
        let de = d.checked_add(&e).unwrap();
        let lhs = chi_eval(&q, &de, &f).unwrap();
        let rhs = chi_eval(&q, &d, &f).unwrap().mul(&chi_eval(&q, &e, &f).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let lhs = chi_eval(&q, &f, &de).unwrap();
        let rhs = chi_eval(&q, &f, &d).unwrap().mul(&chi_eval(&q, &f, &e).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cartan_entries_are_minimal(q in rank2_matrix()) {
        let x = q.get(0, 0);
        let y = q.symmetrized(0, 1).unwrap();
        let hits = |k: u64| -> bool {
            x.pow(k as i64).unwrap().mul(&y).unwrap().is_one() || (!x.is_one() && x.pow(k as i64 + 1).unwrap().is_one())
        };
        match q.cartan(0, 1).unwrap() {
            CartanEntry::Defined(m) => {
                prop_assert!(hits(m));
                for k in 0..m {
                    prop_assert!(!hits(k));
                }
            }
            CartanEntry::Undefined => {
                for k in 0..64 {
                    prop_assert!(!hits(k));
                }
            }
        }
    }

    #[test]
    fn twist_preserves_outcome_and_dimension(
        (q, t) in group().prop_flat_map(|g| (prop::collection::vec(value_in(g), 4), value_in(g)))
    ) {
        let q = BraidingMatrix::new(2, q).unwrap();
        let tw = twisted(&q, &t);
        prop_assert!(twist_equivalent(&q, &tw).unwrap());
        let a = generate(&q, &OrderedBasis::standard(2), 2_000).unwrap();
        let b = generate(&tw, &OrderedBasis::standard(2), 2_000).unwrap();
        prop_assert_eq!(a.label(), b.label());
        if let (Some(ra), Some(rb)) = (a.root_system(), b.root_system()) {
            prop_assert_eq!(ra.roots(), rb.roots());
            prop_assert_eq!(nichols_dimension(&q, ra).unwrap(), nichols_dimension(&tw, rb).unwrap());
            prop_assert_eq!(weyl_orbit(&q, 2_000).unwrap(), weyl_orbit(&tw, 2_000).unwrap());
        }
    }

    #[test]
    fn order_finiteness_is_conjugation_invariant((a, p) in (unimodular(), unimodular())) {
        let pinv = p.unimodular_inverse().unwrap();
        let conj = p * a * pinv;
        prop_assert_eq!(sl2_order_finite(&a).unwrap(), sl2_order_finite(&conj).unwrap());
        prop_assert_eq!(sl2_order_finite(&a).unwrap(), sl2_order_finite(&a.unimodular_inverse().unwrap()).unwrap());
    }

    #[test]
    fn certified_semigroups_are_closed(
        gens in prop::collection::vec(
            (1i64..=4, 1i64..=8, 1i64..=30).prop_filter_map("shape", |(b, d, a)| {
                let ok = d < 2 * b && 2 * b < a && (a * d + 1) % b == 0;
                ok.then(|| Mat2Z::new(a, -b, (a * d + 1) / b, -d))
            }),
            1..4,
        ),
        word in prop::collection::vec(0usize..4, 1..6),
    ) {
        prop_assert!(subslz_certificate(&gens, 2));
        let product = word.iter().map(|&i| gens[i % gens.len()]).fold(Mat2Z::IDENTITY, |acc, g| acc * g);
        prop_assert!(subslz_certificate(&[product], 2));
        prop_assert_ne!(product, Mat2Z::IDENTITY);
    }
}

#[test]
fn weyl_equivalence_is_orbit_equality_on_the_table() {
    // Within each row and choice of root of unity, equivalence is symmetric
    // and agrees with equality of orbits, which makes it transitive.
    let instances = figure1_instances();
    let mut by_group: BTreeMap<(u8, String), Vec<&BraidingMatrix>> = BTreeMap::new();
    for inst in &instances {
        let zeta = inst
            .params
            .zeta
            .as_ref()
            .map(|z| z.to_string())
            .unwrap_or_default();
        by_group
            .entry((inst.row, zeta))
            .or_default()
            .push(&inst.matrix);
    }
    let reps: Vec<&BraidingMatrix> = by_group.values().map(|v| v[0]).collect();
    let sample: Vec<&BraidingMatrix> = reps.iter().step_by(3).copied().take(12).collect();
    for a in &sample {
        for b in &sample {
            if a.group() != b.group() {
                continue;
            }
            let ab = weyl_equivalent(a, b, DEFAULT_CAP).unwrap();
            let ba = weyl_equivalent(b, a, DEFAULT_CAP).unwrap();
            assert_eq!(ab, ba, "{a} vs {b}");
            let same = weyl_orbit(a, DEFAULT_CAP).unwrap() == weyl_orbit(b, DEFAULT_CAP).unwrap();
            assert_eq!(ab, same, "{a} vs {b}");
        }
        assert!(weyl_equivalent(a, a, DEFAULT_CAP).unwrap());
    }
}

#[test]
fn equivalent_variants_share_root_values_and_dimension() {
    type Summary = (Vec<GroupValue>, Option<String>);
    let mut by_class: BTreeMap<(u8, String), Vec<Summary>> = BTreeMap::new();
    for inst in figure1_instances() {
        let out = generate(&inst.matrix, &OrderedBasis::standard(2), DEFAULT_CAP).unwrap();
        let roots = out.root_system().unwrap();
        let mut values: Vec<GroupValue> = roots
            .positive()
            .iter()
            .map(|d| chi_eval(&inst.matrix, d, d).unwrap())
            .collect();
        values.sort();
        let dim = nichols_dimension(&inst.matrix, roots)
            .unwrap()
            .value()
            .map(|v| v.to_string());
        let zeta = inst
            .params
            .zeta
            .as_ref()
            .map(|z| z.to_string())
            .unwrap_or_default();
        by_class
            .entry((inst.row, zeta))
            .or_default()
            .push((values, dim));
    }
    for ((row, zeta), members) in by_class {
        for m in &members[1..] {
            assert_eq!(m, &members[0], "row {row} ζ={zeta}");
        }
    }
}

#[test]
fn every_row_is_recognised_at_its_own_instances() {
    for inst in figure1_instances() {
        let hit = diagroot::figure1_classify(&inst.matrix)
            .unwrap()
            .expect("table match");
        assert_eq!(hit.row, inst.row, "{}", inst.label);
    }
    assert_eq!(figure1_rows().len(), 16);
}
