//! Class predicates read off the representing tree.

use std::collections::HashMap;

use crate::rational::Rational;
use crate::space::Space;
use crate::tree::{NodeId, RootedTree};
use crate::unrooted::has_leaf_child_everywhere;

use super::{Certificate, ClassifyError, Verdict};

/// Internal nodes at each level `0..height`.
pub(crate) fn inner_by_level(tree: &RootedTree) -> Vec<Vec<NodeId>> {
    let mut out = vec![Vec::new(); tree.height()];
    for v in tree.internal_nodes() {
        out[tree.level(v)].push(v);
    }
    out
}

fn degree_mismatch(tree: &RootedTree, nodes: &[NodeId]) -> Option<(NodeId, NodeId)> {
    let first = *nodes.first()?;
    nodes
        .iter()
        .find(|&&v| tree.out_degree(v) != tree.out_degree(first))
        .map(|&v| (first, v))
}

fn degree_cert(tree: &RootedTree, a: NodeId, b: NodeId) -> Certificate {
    Certificate::DegreeMismatch {
        first: tree.describe(a),
        second: tree.describe(b),
        degrees: (tree.out_degree(a), tree.out_degree(b)),
    }
}

fn inner_count_cert(level: usize, nodes: &[NodeId], tree: &RootedTree) -> Certificate {
    Certificate::InnerNodeCount {
        level,
        nodes: nodes.iter().map(|&v| tree.describe(v)).collect(),
    }
}

/// `|Sp(X)| = |X|`.
pub fn check_class_u(space: &Space) -> Result<Verdict, ClassifyError> {
    if space.len() < 2 {
        return Err(ClassifyError::SingletonSpace);
    }
    let distances = space.spectrum().len();
    Ok(Verdict::new(
        distances == space.len(),
        Certificate::SpectrumSize {
            points: space.len(),
            distances,
        },
    ))
}

pub fn is_class_u(space: &Space) -> Result<bool, ClassifyError> {
    Ok(check_class_u(space)?.holds)
}

/// Pairwise distinct internal labels.
pub fn check_injective_labels(tree: &RootedTree) -> Verdict {
    let mut seen: HashMap<&Rational, NodeId> = HashMap::new();
    for v in tree.internal_nodes() {
        if let Some(&u) = seen.get(tree.label(v)) {
            return Verdict::no(Certificate::RepeatedLabel {
                label: tree.label(v).clone(),
                first: tree.describe(u),
                second: tree.describe(v),
            });
        }
        seen.insert(tree.label(v), v);
    }
    Verdict::yes(Certificate::Labels {
        labels: tree.internal_nodes().map(|v| tree.label(v).clone()).collect(),
    })
}

pub fn has_injective_internal_labels(tree: &RootedTree) -> bool {
    check_injective_labels(tree).holds
}

/// The common out-degree of all internal nodes, if there is one.
pub fn strictly_nary_degree(tree: &RootedTree) -> Option<usize> {
    let mut inner = tree.internal_nodes();
    let n = tree.out_degree(inner.next()?);
    inner.all(|v| tree.out_degree(v) == n).then_some(n)
}

pub fn check_strictly_nary(tree: &RootedTree, n: usize) -> Verdict {
    match tree.internal_nodes().find(|&v| tree.out_degree(v) != n) {
        Some(v) => Verdict::no(Certificate::OutDegree {
            node: tree.describe(v),
            degree: tree.out_degree(v),
            expected: n,
        }),
        None => Verdict::yes(Certificate::Arity { n }),
    }
}

pub fn is_strictly_nary(tree: &RootedTree, n: usize) -> bool {
    check_strictly_nary(tree, n).holds
}

pub fn check_strictly_binary(tree: &RootedTree) -> Verdict {
    check_strictly_nary(tree, 2)
}

pub fn is_strictly_binary(tree: &RootedTree) -> bool {
    check_strictly_binary(tree).holds
}

fn check_leaves_level(tree: &RootedTree) -> Result<(), Certificate> {
    let mut leaves = tree.node_ids().filter(|&v| tree.is_leaf(v));
    let Some(first) = leaves.next() else {
        return Ok(());
    };
    match leaves.find(|&v| tree.level(v) != tree.level(first)) {
        Some(v) => Err(Certificate::LeafLevels {
            first: tree.point(first).unwrap_or_default().to_string(),
            first_level: tree.level(first),
            second: tree.point(v).unwrap_or_default().to_string(),
            second_level: tree.level(v),
        }),
        None => Ok(()),
    }
}

/// All leaves on one level.
pub fn check_leaves_same_level(tree: &RootedTree) -> Verdict {
    match check_leaves_level(tree) {
        Ok(()) => Verdict::yes(Certificate::Height { height: tree.height() }),
        Err(c) => Verdict::no(c),
    }
}

pub fn leaves_same_level(tree: &RootedTree) -> bool {
    check_leaves_same_level(tree).holds
}

/// Internal nodes on a common level carry a common label.
pub fn check_labels_same_level(tree: &RootedTree) -> Verdict {
    for (level, nodes) in inner_by_level(tree).iter().enumerate() {
        if let Some(&v) = nodes.iter().find(|&&v| tree.label(v) != tree.label(nodes[0])) {
            return Verdict::no(Certificate::LevelMismatch {
                level,
                first: tree.describe(nodes[0]),
                second: tree.describe(v),
                property: "label".into(),
            });
        }
    }
    Verdict::yes(Certificate::Height { height: tree.height() })
}

pub fn labels_same_level(tree: &RootedTree) -> bool {
    check_labels_same_level(tree).holds
}

/// `Some(n)` when the tree is strictly `n`-ary with every leaf on one level.
pub fn perfect_arity(tree: &RootedTree) -> Option<usize> {
    let n = strictly_nary_degree(tree)?;
    check_leaves_level(tree).ok().map(|_| n)
}

pub fn check_perfect(tree: &RootedTree) -> Verdict {
    let Some(n) = strictly_nary_degree(tree) else {
        let degrees: Vec<NodeId> = tree.internal_nodes().collect();
        return match degree_mismatch(tree, &degrees) {
            Some((a, b)) => Verdict::no(degree_cert(tree, a, b)),
            None => Verdict::no(Certificate::Note {
                detail: "no internal nodes".into(),
            }),
        };
    };
    match check_leaves_level(tree) {
        Ok(()) => Verdict::yes(Certificate::Arity { n }),
        Err(c) => Verdict::no(c),
    }
}

pub fn is_perfect_strictly_nary(tree: &RootedTree) -> Option<usize> {
    perfect_arity(tree)
}

/// Exactly one internal node on each level above the last.
pub fn check_r_tilde(tree: &RootedTree) -> Verdict {
    for (level, nodes) in inner_by_level(tree).iter().enumerate() {
        if nodes.len() != 1 {
            return Verdict::no(inner_count_cert(level, nodes, tree));
        }
    }
    Verdict::yes(Certificate::Height { height: tree.height() })
}

pub fn is_class_r_tilde(tree: &RootedTree) -> bool {
    check_r_tilde(tree).holds
}

/// Strictly binary with one internal node per level.
pub fn check_r(tree: &RootedTree) -> Verdict {
    let binary = check_strictly_binary(tree);
    if !binary.holds {
        return binary;
    }
    check_r_tilde(tree)
}

pub fn is_class_r(tree: &RootedTree) -> bool {
    check_r(tree).holds
}

/// One internal node on each level `k < h - 1`; equal out-degrees on level `h - 1`.
pub fn check_class_t(tree: &RootedTree) -> Verdict {
    let levels = inner_by_level(tree);
    let h = levels.len();
    for (level, nodes) in levels.iter().enumerate().take(h.saturating_sub(1)) {
        if nodes.len() != 1 {
            return Verdict::no(inner_count_cert(level, nodes, tree));
        }
    }
    if let Some(last) = levels.last() {
        if let Some((a, b)) = degree_mismatch(tree, last) {
            return Verdict::no(degree_cert(tree, a, b));
        }
    }
    Verdict::yes(Certificate::Height { height: h })
}

pub fn is_class_t(tree: &RootedTree) -> bool {
    check_class_t(tree).holds
}

/// Shape condition under which every labeling is tree-spectrum isometric:
/// one internal node on levels `1..=h-2`, at most two on level `h - 1`, and
/// those two of equal out-degree.
pub fn check_tsi_shape(tree: &RootedTree) -> Verdict {
    let levels = inner_by_level(tree);
    let h = levels.len();
    for (level, nodes) in levels.iter().enumerate().take(h.saturating_sub(1)) {
        if nodes.len() != 1 {
            return Verdict::no(inner_count_cert(level, nodes, tree));
        }
    }
    if let Some(last) = levels.last() {
        if last.len() > 2 {
            return Verdict::no(inner_count_cert(h - 1, last, tree));
        }
        if let Some((a, b)) = degree_mismatch(tree, last) {
            return Verdict::no(degree_cert(tree, a, b));
        }
    }
    Verdict::yes(Certificate::Height { height: h })
}

pub fn tsi_shape_guarantee(tree: &RootedTree) -> bool {
    check_tsi_shape(tree).holds
}

/// Tree-spectrum isometry for injectively labeled trees: internal nodes
/// sharing a level all sit on level `h - 1` and have equal out-degrees.
pub fn check_tsi_injective(tree: &RootedTree) -> Result<Verdict, ClassifyError> {
    if !has_injective_internal_labels(tree) {
        return Err(ClassifyError::NotInjective);
    }
    // The tree's internal levels are `0..h`; only the last may hold several nodes.
    Ok(check_class_t(tree))
}

pub fn tsi_injective(tree: &RootedTree) -> Result<bool, ClassifyError> {
    Ok(check_tsi_injective(tree)?.holds)
}

/// Nodes on a common level share their label and their out-degree.
pub fn check_homogeneous(tree: &RootedTree) -> Verdict {
    for (level, nodes) in tree.levels().iter().enumerate() {
        let first = nodes[0];
        for &v in &nodes[1..] {
            let property = if tree.label(v) != tree.label(first) {
                "label"
            } else if tree.out_degree(v) != tree.out_degree(first) {
                "out-degree"
            } else {
                continue;
            };
            return Verdict::no(Certificate::LevelMismatch {
                level,
                first: tree.describe(first),
                second: tree.describe(v),
                property: property.into(),
            });
        }
    }
    Verdict::yes(Certificate::Height { height: tree.height() })
}

pub fn is_homogeneous(tree: &RootedTree) -> bool {
    check_homogeneous(tree).holds
}

/// Strictly binary, and either every internal node has a leaf child or the
/// root is the only node whose two children are both internal.
pub fn check_ball_preserving(tree: &RootedTree) -> Verdict {
    let binary = check_strictly_binary(tree);
    if !binary.holds {
        return binary;
    }
    let both_inner: Vec<NodeId> = tree
        .internal_nodes()
        .filter(|&v| tree.children(v).iter().all(|&c| !tree.is_leaf(c)))
        .collect();
    match both_inner.as_slice() {
        [] => Verdict::yes(Certificate::Note {
            detail: "every inner node has a leaf child".into(),
        }),
        [v] if *v == tree.root() => Verdict::yes(Certificate::Note {
            detail: "the root alone has two inner children".into(),
        }),
        [..] => {
            let v = *both_inner.iter().find(|&&v| v != tree.root()).expect("non-root node");
            Verdict::no(Certificate::MissingLeafChild { node: tree.describe(v) })
        }
    }
}

pub fn is_ball_preserving_class(tree: &RootedTree) -> bool {
    check_ball_preserving(tree).holds
}

/// Every internal node has a leaf child.
pub fn check_unrooted_generated(tree: &RootedTree) -> Verdict {
    match has_leaf_child_everywhere(tree).witness {
        Some(v) => Verdict::no(Certificate::MissingLeafChild { node: tree.describe(v) }),
        None => Verdict::yes(Certificate::Note {
            detail: "every inner node has a leaf child".into(),
        }),
    }
}
