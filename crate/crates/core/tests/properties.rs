use proptest::prelude::*;

use origami_core::group::FiniteGroup;
use origami_core::hurwitz::{
    construct_coprime, hts_from_group, is_th_order, th_witness_for_order, verify_theorem_range,
    Limits,
};
use origami_core::origami::{random_origami, random_permutation};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn translation_count_is_bounded(d in 1usize..=12, seed in any::<u64>()) {
        let o = random_origami(d, seed);
        let g = o.genus();
        let t = o.translation_group().len();
        prop_assert_eq!(d % t, 0);
        if g >= 2 {
            prop_assert!(t <= 4 * g - 4);
            if t == 4 * g - 4 {
                prop_assert!(o.is_normal());
                prop_assert!(o.singularity_data().is_principal());
            }
        }
    }

    #[test]
    fn invariants_survive_relabelling(d in 1usize..=16, seed in any::<u64>()) {
        let o = random_origami(d, seed);
        let p = o.relabel(&random_permutation(d, seed ^ 0x5eed));
        prop_assert_eq!(o.singularity_data(), p.singularity_data());
        prop_assert_eq!(o.translation_group().len(), p.translation_group().len());
        prop_assert_eq!(o.is_hurwitz(), p.is_hurwitz());
        prop_assert!(o.is_equivalent(&p));
        prop_assert_eq!(o.canonical_form(), p.canonical_form());
    }

    #[test]
    fn canonical_form_is_idempotent(d in 1usize..=16, seed in any::<u64>()) {
        let c = random_origami(d, seed).canonical_form();
        prop_assert_eq!(c.canonical_form(), c);
    }

    #[test]
    fn th_arithmetic(g in 2usize..1_000_000) {
        prop_assert_eq!(is_th_order(4 * g - 4), g % 2 == 1 || (g - 1) % 3 == 0);
    }
}

/// The regular-representation origami generates a permutation group of the
/// witness order, and its commutator is a fixed-point-free involution.
#[test]
fn constructed_surfaces_against_permutation_closure() {
    for n in (8..=240).filter(|&n| is_th_order(n)) {
        let w = th_witness_for_order(n, 20_000).unwrap().unwrap();
        let o = hts_from_group(&w);
        let closure =
            FiniteGroup::from_generators(&[o.sigma_a().clone(), o.sigma_b().clone()]).unwrap();
        assert_eq!(closure.order(), n);
        let c = o.commutator();
        assert_eq!(c.fixed_points(), 0);
        assert!(c.then(&c).is_identity());
        assert_eq!(c.cycles0().len(), n / 2);
        assert_eq!(o.genus(), n / 4 + 1);
    }
}

#[test]
fn coprime_extension_keeps_commutator_order() {
    let w = th_witness_for_order(12, 20_000).unwrap().unwrap();
    for m in [1, 5, 7, 11, 13, 25] {
        assert_eq!(construct_coprime(&w, m).unwrap().commutator_order(), 2);
    }
}

#[test]
fn range_table_matches_arithmetic() {
    let rows = verify_theorem_range(14, Limits::default()).unwrap();
    let yes: Vec<usize> = rows
        .iter()
        .filter(|r| r.realizable)
        .map(|r| r.genus)
        .collect();
    assert_eq!(yes, [3, 4, 5, 7, 9, 10, 11, 13]);
}
