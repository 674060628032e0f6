mod common;

use proptest::prelude::*;
use ultraforest::classify::{classify, ClassId, ClassifyError};
use ultraforest::tree::ballean;
use ultraforest::{audit_equivalences, build_representing_tree, enumerate_spaces, random_space, Space};

fn verdicts(s: &Space) -> Vec<(String, Option<bool>)> {
    classify(s)
        .unwrap()
        .entries
        .into_iter()
        .map(|e| (e.class, e.verdict))
        .collect()
}

#[test]
fn catalog_round_trips_through_names() {
    for c in ClassId::CATALOG {
        assert_eq!(c.to_string().parse::<ClassId>().unwrap(), c);
    }
    assert_eq!("strictly-2-ary".parse::<ClassId>().unwrap(), ClassId::StrictlyBinary);
    assert!(matches!(
        "strictly-1-ary".parse::<ClassId>(),
        Err(ClassifyError::UnknownClass(_))
    ));
}

#[test]
fn every_enumerated_space_audits_clean_up_to_five() {
    for n in 2..=5 {
        for s in enumerate_spaces(n) {
            let r = audit_equivalences(&s).unwrap();
            assert!(r.is_clean(), "{s:?}: {:?}", r.discrepancies);
        }
    }
}

#[test]
fn small_spaces_are_tsi() {
    for n in 2..=4 {
        for s in enumerate_spaces(n) {
            assert!(ClassId::Tsi.contains(&s).unwrap(), "{s:?}");
        }
    }
}

#[test]
fn singleton_is_rejected() {
    let s = random_space(1, 0);
    assert_eq!(classify(&s), Err(ClassifyError::SingletonSpace));
}

proptest! {
    #[test]
    fn verdicts_survive_weak_similarity(n in 2usize..9, seed in any::<u64>(), k in 1i64..5) {
        let s = random_space(n, seed);
        let k = ultraforest::Rational::from(k);
        let scaled = s.map_distances(|v| &(v * &k) + &(v * v));
        let perm: Vec<usize> = (0..n).rev().collect();
        prop_assert_eq!(verdicts(&s), verdicts(&scaled.permute(&perm)));
    }

    #[test]
    fn ball_count_bounds(n in 2usize..50, seed in any::<u64>()) {
        let s = random_space(n, seed);
        let tree = build_representing_tree(&s);
        let balls = ballean(&tree).len() as i64;
        let x = n as i64;
        let sp = s.spectrum().len() as i64;
        let delta = tree.max_out_degree() as i64;
        prop_assert!(sp <= x);
        prop_assert!((delta - 1) * balls >= delta * x - 1);
        prop_assert!(2 * balls * (delta - 1) >= sp * (delta - 1) + 2 * delta * x - delta - x);
        // Equality in the first bound exactly for strictly delta-ary trees.
        let strict = tree.internal_nodes().all(|v| tree.out_degree(v) as i64 == delta);
        prop_assert_eq!((delta - 1) * balls == delta * x - 1, strict);
    }
}
