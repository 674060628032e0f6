mod common;

use common::{brute_isometric, brute_self_isometries, brute_weakly_similar};
use proptest::prelude::*;
use ultraforest::{
    are_isometric, are_weakly_similar, build_representing_tree, count_self_isometries, enumerate_spaces, random_space,
    Rational, Space,
};

/// Doubles every distance and adds its square: strictly increasing, fixes zero.
fn stretch(s: &Space) -> Space {
    s.map_distances(|v| &(v + v) + &(v * v))
}

#[test]
fn isometry_matches_permutation_search() {
    let mut spaces = enumerate_spaces(5);
    spaces.extend(enumerate_spaces(5).iter().map(stretch));
    for a in &spaces {
        for b in &spaces {
            assert_eq!(are_isometric(a, b), brute_isometric(a, b), "{a:?} vs {b:?}");
        }
    }
}

#[test]
fn weak_similarity_matches_permutation_search() {
    let mut spaces = enumerate_spaces(4);
    spaces.extend(enumerate_spaces(4).iter().map(stretch));
    spaces.extend(enumerate_spaces(5).into_iter().take(12));
    for a in &spaces {
        for b in &spaces {
            let map = are_weakly_similar(a, b);
            assert_eq!(map.is_some(), brute_weakly_similar(a, b), "{a:?} vs {b:?}");
            if let Some(m) = map {
                assert_eq!(m.0.len(), a.spectrum().len());
                assert!(m.0.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 < w[1].1));
            }
        }
    }
}

#[test]
fn self_isometry_counts_match_brute_force() {
    for n in 2..=6 {
        for s in enumerate_spaces(n) {
            let fast = count_self_isometries(&build_representing_tree(&s));
            assert_eq!(fast.to_string(), brute_self_isometries(&s).to_string(), "{s:?}");
        }
    }
}

#[test]
fn distinct_enumerated_spaces_are_pairwise_non_isometric() {
    let spaces = enumerate_spaces(6);
    for (i, a) in spaces.iter().enumerate() {
        for b in &spaces[i + 1..] {
            assert!(are_weakly_similar(a, b).is_none());
        }
    }
}

proptest! {
    #[test]
    fn permuted_copies_are_isometric(n in 1usize..9, seed in any::<u64>(), rot in 0usize..9) {
        let s = random_space(n, seed);
        let perm: Vec<usize> = (0..n).map(|i| (i + rot) % n).collect();
        let p = s.permute(&perm).rename(|x| format!("p_{x}"));
        prop_assert!(are_isometric(&s, &p));
        prop_assert!(are_weakly_similar(&s, &stretch(&p)).is_some());
    }

    #[test]
    fn changing_one_value_breaks_isometry(n in 3usize..8, seed in any::<u64>()) {
        let s = random_space(n, seed);
        let top = s.diameter().clone();
        let bumped = s.map_distances(|v| if *v == top { v + &Rational::from(1) } else { v.clone() });
        prop_assert!(!are_isometric(&s, &bumped));
        prop_assert!(are_weakly_similar(&s, &bumped).is_some());
    }

    #[test]
    fn random_pairs_agree_with_brute_force(n in 2usize..6, a in 0u64..40, b in 0u64..40) {
        let x = random_space(n, a);
        let y = random_space(n, b);
        prop_assert_eq!(are_isometric(&x, &y), brute_isometric(&x, &y));
        prop_assert_eq!(are_weakly_similar(&x, &y).is_some(), brute_weakly_similar(&x, &y));
    }
}
