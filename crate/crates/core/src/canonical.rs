//! Canonical codes for representing trees.
//!
//! Two spaces are isometric exactly when their representing trees are
//! isomorphic as labeled rooted trees, so comparing labeled codes decides
//! isometry. Replacing labels by their rank decides weak similarity.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::rational::Rational;
use crate::space::Space;
use crate::tree::{build_representing_tree, RootedTree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CodeMode {
    /// Node labels included verbatim.
    Labeled,
    /// Shape only.
    Unlabeled,
    /// Each label replaced by its rank among the tree's labels (0 for leaves).
    RankLabeled,
}

/// Text token describing a tree up to isomorphism.
///
/// Leaves are `x`; an internal node is `(` + label + `:` + child codes in
/// sorted order + `)` (the label and colon are omitted in unlabeled mode).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonCode(pub String);

impl fmt::Display for CanonCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Code of every subtree, indexed by node id.
pub fn node_codes(tree: &RootedTree, mode: CodeMode) -> Vec<String> {
    let ranks: HashMap<Rational, usize> = match mode {
        CodeMode::RankLabeled => tree.label_set().into_iter().enumerate().map(|(i, l)| (l, i)).collect(),
        _ => HashMap::new(),
    };
    let mut codes: Vec<String> = vec![String::new(); tree.len()];
    for v in tree.postorder() {
        if tree.is_leaf(v) {
            codes[v.0] = "x".to_string();
            continue;
        }
        let mut kids: Vec<&str> = tree.children(v).iter().map(|c| codes[c.0].as_str()).collect();
        kids.sort_unstable();
        let mut s = String::with_capacity(2 + kids.iter().map(|k| k.len()).sum::<usize>());
        s.push('(');
        match mode {
            CodeMode::Labeled => {
                s.push_str(&tree.label(v).to_string());
                s.push(':');
            }
            CodeMode::RankLabeled => {
                s.push_str(&ranks[tree.label(v)].to_string());
                s.push(':');
            }
            CodeMode::Unlabeled => {}
        }
        for k in kids {
            s.push_str(k);
        }
        s.push(')');
        codes[v.0] = s;
    }
    codes
}

pub fn canonical_code(tree: &RootedTree, mode: CodeMode) -> CanonCode {
    let mut codes = node_codes(tree, mode);
    CanonCode(codes.swap_remove(tree.root().0))
}

/// Decides whether two spaces are isometric.
pub fn are_isometric(x: &Space, y: &Space) -> bool {
    if x.len() != y.len() || x.spectrum() != y.spectrum() {
        return false;
    }
    canonical_code(&build_representing_tree(x), CodeMode::Labeled)
        == canonical_code(&build_representing_tree(y), CodeMode::Labeled)
}

/// Order isomorphism between two spectra, as `(from, to)` pairs in increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalingMap(pub Vec<(Rational, Rational)>);

impl ScalingMap {
    pub fn apply(&self, v: &Rational) -> Option<&Rational> {
        self.0.iter().find(|(a, _)| a == v).map(|(_, b)| b)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|(a, b)| a == b)
    }
}

/// Decides weak similarity; on success returns the (unique) scaling function.
pub fn are_weakly_similar(x: &Space, y: &Space) -> Option<ScalingMap> {
    let sx = x.spectrum();
    let sy = y.spectrum();
    if x.len() != y.len() || sx.len() != sy.len() {
        return None;
    }
    let cx = canonical_code(&build_representing_tree(x), CodeMode::RankLabeled);
    let cy = canonical_code(&build_representing_tree(y), CodeMode::RankLabeled);
    if cx != cy {
        return None;
    }
    Some(ScalingMap(sx.0.into_iter().zip(sy.0).collect()))
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// Order of the isometry group: automorphisms of the labeled tree.
pub fn count_self_isometries(tree: &RootedTree) -> BigUint {
    let codes = node_codes(tree, CodeMode::Labeled);
    let mut total = BigUint::one();
    for v in tree.internal_nodes() {
        let mut groups: BTreeMap<&str, usize> = BTreeMap::new();
        for c in tree.children(v) {
            *groups.entry(codes[c.0].as_str()).or_default() += 1;
        }
        for m in groups.into_values() {
            total *= factorial(m);
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::tree::NestedTree;

    fn tree(s: &Space) -> RootedTree {
        build_representing_tree(s)
    }

    #[test]
    fn singletons_share_every_code() {
        let a = Space::from_integer_matrix(&["p"], &[&[0]]).unwrap();
        let b = Space::from_integer_matrix(&["q"], &[&[0]]).unwrap();
        for mode in [CodeMode::Labeled, CodeMode::Unlabeled, CodeMode::RankLabeled] {
            assert_eq!(canonical_code(&tree(&a), mode), canonical_code(&tree(&b), mode));
        }
    }

    #[test]
    fn label_modes_distinguish_correctly() {
        let a = fixtures::isosceles();
        let b = Space::from_integer_matrix(&["a", "b", "c"], &[&[0, 3, 5], &[3, 0, 5], &[5, 5, 0]]).unwrap();
        let code = |s: &Space, m| canonical_code(&tree(s), m);
        assert_ne!(code(&a, CodeMode::Labeled), code(&b, CodeMode::Labeled));
        assert_eq!(code(&a, CodeMode::Unlabeled), code(&b, CodeMode::Unlabeled));
        assert_eq!(code(&a, CodeMode::RankLabeled), code(&b, CodeMode::RankLabeled));
        assert_eq!(code(&a, CodeMode::Labeled).0, "(2:(1:xx)x)");
    }

    #[test]
    fn stars_with_different_labels_share_shape() {
        let a = RootedTree::from_nested(&NestedTree::internal(
            1,
            vec![NestedTree::leaf("a"), NestedTree::leaf("b"), NestedTree::leaf("c")],
        ))
        .unwrap();
        let b = RootedTree::from_nested(&NestedTree::internal(
            2,
            vec![NestedTree::leaf("a"), NestedTree::leaf("b"), NestedTree::leaf("c")],
        ))
        .unwrap();
        assert_eq!(
            canonical_code(&a, CodeMode::Unlabeled),
            canonical_code(&b, CodeMode::Unlabeled)
        );
        assert_eq!(canonical_code(&a, CodeMode::Unlabeled).0, "(xxx)");
    }

    #[test]
    fn isometry_examples() {
        let iso = fixtures::isosceles();
        assert!(are_isometric(&iso, &iso));
        assert!(!are_isometric(&iso, &fixtures::equilateral(2)));
        let renamed = iso.rename(|p| format!("{p}'"));
        assert!(are_isometric(&iso, &renamed));
    }

    #[test]
    fn weak_similarity_examples() {
        let iso = fixtures::isosceles();
        let same = are_weakly_similar(&iso, &iso).unwrap();
        assert!(same.is_identity());
        let b = Space::from_integer_matrix(&["a", "b", "c"], &[&[0, 3, 5], &[3, 0, 5], &[5, 5, 0]]).unwrap();
        let f = are_weakly_similar(&iso, &b).unwrap();
        let pairs: Vec<(i64, i64)> = vec![(0, 0), (1, 3), (2, 5)];
        let expected = ScalingMap(
            pairs
                .into_iter()
                .map(|(a, b)| (Rational::from(a), Rational::from(b)))
                .collect(),
        );
        assert_eq!(f, expected);
        assert!(are_weakly_similar(&iso, &fixtures::equilateral(1)).is_none());
    }

    #[test]
    fn self_isometry_counts() {
        let single = Space::from_integer_matrix(&["p"], &[&[0]]).unwrap();
        assert_eq!(count_self_isometries(&tree(&single)), BigUint::from(1u32));
        let two = Space::from_integer_matrix(&["a", "b"], &[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(count_self_isometries(&tree(&two)), BigUint::from(2u32));
        assert_eq!(
            count_self_isometries(&tree(&fixtures::isosceles())),
            BigUint::from(2u32)
        );
        assert_eq!(
            count_self_isometries(&tree(&fixtures::perfect_binary_four())),
            BigUint::from(8u32)
        );
        assert_eq!(
            count_self_isometries(&tree(&fixtures::equilateral(1))),
            BigUint::from(6u32)
        );
    }
}
