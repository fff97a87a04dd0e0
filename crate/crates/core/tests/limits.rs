mod common;

use std::collections::BTreeMap;

use common::systems::{free_subsystem, nested_system};
use hft_core::dynamics::builtin_example;
use hft_core::limits::{
    check_poset_directed, image_group, quotient_exchange, DirectSystem, Poset, RelationMode,
};
use hft_core::zmod::{FgAbelianGroup, IntegerMatrix, Presentation};
use hft_core::{GeneratorSet, HftError};
use num_bigint::BigInt;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn colimit_of_system_with_top(seed in any::<u64>(), n in 1usize..6, r in 1usize..4) {
        let f = nested_system(seed, n, r, true);
        let expected = Presentation::new(f.rank, f.lattice.clone()).unwrap().group();
        let top = f.sys.poset.maximum().unwrap();
        prop_assert_eq!(&f.sys.groups[top].group(), &expected);
        prop_assert_eq!(&f.sys.direct_limit(RelationMode::HasseEdges), &expected);
        prop_assert_eq!(&f.sys.direct_limit(RelationMode::AllPairs), &expected);
        prop_assert!(f.sys.check_vanishing(2).unwrap() > 0);
    }

    #[test]
    fn hasse_matches_all_pairs(seed in any::<u64>(), n in 1usize..7, r in 1usize..4) {
        let f = nested_system(seed, n, r, false);
        prop_assert_eq!(
            f.sys.direct_limit(RelationMode::HasseEdges),
            f.sys.direct_limit(RelationMode::AllPairs)
        );
    }

    #[test]
    fn quotient_commutes_with_limit(seed in any::<u64>(), n in 1usize..5, r in 1usize..4, a in 1usize..3) {
        let f = nested_system(seed, n, r, true);
        let (sub, incl, m) = free_subsystem(&f, seed.rotate_left(17), a);
        let (lim_q, coker, lim_a, image) = quotient_exchange(&sub, &f.sys, &incl).unwrap();
        let expected = Presentation::new(r, f.lattice.hstack(&m)).unwrap().group();
        prop_assert_eq!(&lim_q, &expected);
        prop_assert_eq!(&coker, &expected);
        prop_assert_eq!(lim_a, FgAbelianGroup::free(a));
        prop_assert_eq!(image, image_group(&m, &f.lattice));
    }
}

#[test]
fn image_group_examples() {
    // 2 in Z/4 generates Z/2; (1, 1) in Z + Z/2 generates Z
    let x = IntegerMatrix::from_i64(&[&[2]]);
    let rel = IntegerMatrix::from_i64(&[&[4]]);
    assert_eq!(
        image_group(&x, &rel),
        FgAbelianGroup {
            free_rank: 0,
            torsion: vec![BigInt::from(2)]
        }
    );
    let x = IntegerMatrix::from_i64(&[&[1], &[1]]);
    let rel = IntegerMatrix::from_i64(&[&[0], &[2]]);
    assert_eq!(image_group(&x, &rel), FgAbelianGroup::free(1));
}

#[test]
fn vanishing_needs_directed_poset() {
    // two maximal elements over a common bottom
    let poset = Poset::new(vec![
        vec![true, true, true],
        vec![false, true, false],
        vec![false, false, true],
    ])
    .unwrap();
    assert!(!poset.directedness().directed);
    let g = vec![Presentation::free(1); 3];
    let mut maps = BTreeMap::new();
    maps.insert((0, 1), IntegerMatrix::identity(1));
    maps.insert((0, 2), IntegerMatrix::identity(1));
    let sys = DirectSystem::new(poset, g, maps).unwrap();
    assert!(matches!(
        sys.check_vanishing(1),
        Err(HftError::Precondition(_))
    ));
    // Z pushed out along two identities is Z
    assert_eq!(
        sys.direct_limit(RelationMode::AllPairs),
        FgAbelianGroup::free(1)
    );
}

#[test]
fn incoherent_maps_rejected() {
    let poset = Poset::new(vec![
        vec![true, true, true],
        vec![false, true, true],
        vec![false, false, true],
    ])
    .unwrap();
    let mut maps = BTreeMap::new();
    maps.insert((0, 1), IntegerMatrix::identity(1));
    maps.insert((1, 2), IntegerMatrix::identity(1));
    maps.insert((0, 2), IntegerMatrix::from_i64(&[&[2]]));
    let r = DirectSystem::new(poset, vec![Presentation::free(1); 3], maps);
    assert!(matches!(r, Err(HftError::ChainCondition(_))));
}

#[test]
fn ill_formed_orders_rejected() {
    let not_transitive = vec![
        vec![true, true, false],
        vec![false, true, true],
        vec![false, false, true],
    ];
    assert!(Poset::new(not_transitive).is_err());
    let cycle = vec![vec![true, true], vec![true, true]];
    assert!(Poset::new(cycle).is_err());
}

#[test]
fn inclusion_families() {
    let d = builtin_example("fig6b").unwrap();
    let s = |ids: &[&str]| GeneratorSet::from_strs(&d, ids).unwrap();
    let chain = [s(&["p", "s"]), s(&["p", "q", "r", "s"])];
    assert!(check_poset_directed(&chain).unwrap().directed);
    let split = [s(&["p", "q"]), s(&["p", "r"])];
    let dir = check_poset_directed(&split).unwrap();
    assert!(!dir.directed);
    assert_eq!(dir.counterexample, Some((0, 1)));
    let capped = [s(&["p", "q"]), s(&["p", "r"]), s(&["p", "q", "r"])];
    assert!(check_poset_directed(&capped).unwrap().directed);
}
