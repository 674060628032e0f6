mod common;

use std::collections::BTreeSet;

use common::{all_integer_ultrametrics, brute_weakly_similar, weak_similarity_classes};
use ultraforest::{build_representing_tree, canonical_code, enumerate_shapes, enumerate_spaces, CodeMode};

#[test]
fn frozen_counts() {
    let spaces: Vec<usize> = (1..=7).map(|n| enumerate_spaces(n).len()).collect();
    assert_eq!(spaces, [1, 1, 2, 6, 20, 90, 468]);
    let shapes: Vec<usize> = (1..=7).map(|n| enumerate_shapes(n).len()).collect();
    assert_eq!(shapes, [1, 1, 2, 5, 12, 33, 90]);
}

#[test]
fn complete_against_raw_matrices() {
    // With n - 1 distinct positive values every order type on n points occurs.
    for n in 1..=4 {
        let raw = all_integer_ultrametrics(n, n.max(2) as i64 - 1);
        let classes = weak_similarity_classes(&raw);
        let enumerated = enumerate_spaces(n);
        assert_eq!(classes.len(), enumerated.len(), "n = {n}");
        for c in &classes {
            let hits = enumerated.iter().filter(|e| brute_weakly_similar(c, e)).count();
            assert_eq!(hits, 1, "{c:?}");
        }
    }
}

#[test]
fn shapes_are_the_unlabeled_types_of_spaces() {
    for n in 1..=7 {
        let from_spaces: BTreeSet<String> = enumerate_spaces(n)
            .iter()
            .map(|s| canonical_code(&build_representing_tree(s), CodeMode::Unlabeled).0)
            .collect();
        let shapes: BTreeSet<String> = enumerate_shapes(n).iter().map(|s| s.code()).collect();
        assert_eq!(from_spaces, shapes);
    }
}

#[test]
fn enumerated_spaces_use_rank_labels() {
    for s in enumerate_spaces(6) {
        let sp = s.spectrum().0;
        for (i, v) in sp.iter().enumerate() {
            assert_eq!(v.to_string(), i.to_string());
        }
        let points: Vec<String> = (1..=6).map(|i| format!("x{i}")).collect();
        assert_eq!(s.points(), points.as_slice());
    }
}
