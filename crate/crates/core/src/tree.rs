//! The representing tree of a finite ultrametric space.
//!
//! Internal nodes are the nonsingular balls of the space, labeled by their
//! diameters; leaves are the points, labeled zero. The distance between two
//! points is the label of their lowest common ancestor.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canonical::{node_codes, CodeMode};
use crate::rational::Rational;
use crate::space::Space;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("node label {child} is not below its parent's label {parent}")]
    LabelMonotonicityViolation { parent: Rational, child: Rational },
    #[error("leaf `{point}` has nonzero label {label}")]
    LeafLabelNonzero { point: String, label: Rational },
    #[error("leaf without a point id")]
    LeafWithoutPoint,
    #[error("internal node carries point id `{0}`")]
    InternalWithPoint(String),
    #[error("internal node labeled {0} has fewer than two children")]
    TooFewChildren(Rational),
    #[error("internal node label {0} is not positive")]
    NonPositiveLabel(Rational),
    #[error("point `{0}` appears on more than one leaf")]
    DuplicatePoint(String),
    #[error("unknown node {0}")]
    UnknownNode(usize),
    #[error("the space has a single point")]
    SingletonSpace,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub usize);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Node {
    label: Rational,
    children: Vec<NodeId>,
    parent: Option<NodeId>,
    point: Option<usize>,
    level: usize,
}

/// A labeled rooted tree satisfying the representing-tree invariants.
///
/// Nodes are numbered breadth-first from the root (`NodeId(0)`), and children
/// are kept in canonical order, so two isometric spaces with the same point
/// names produce identical trees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    nodes: Vec<Node>,
    points: Vec<String>,
}

/// Level, out-degree and leaf set of one node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeInfo {
    pub level: usize,
    pub out_degree: usize,
    pub leaf_set: BTreeSet<String>,
}

/// Nested form of a rooted tree, used for the tree JSON format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NestedTree {
    pub label: Rational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<String>,
    #[serde(default)]
    pub children: Vec<NestedTree>,
}

impl NestedTree {
    pub fn leaf(point: impl Into<String>) -> Self {
        NestedTree {
            label: Rational::zero(),
            point: Some(point.into()),
            children: Vec::new(),
        }
    }

    pub fn internal(label: impl Into<Rational>, children: Vec<NestedTree>) -> Self {
        NestedTree {
            label: label.into(),
            point: None,
            children,
        }
    }
}

/// Mutable scratch node used while assembling a tree.
struct Draft {
    label: Rational,
    children: Vec<usize>,
    point: Option<usize>,
}

impl RootedTree {
    /// Renumbers breadth-first from `root` and fills in parents and levels.
    fn from_drafts(drafts: &[Draft], root: usize, points: Vec<String>) -> RootedTree {
        let mut order = Vec::with_capacity(drafts.len());
        let mut queue = VecDeque::from([root]);
        while let Some(d) = queue.pop_front() {
            order.push(d);
            queue.extend(drafts[d].children.iter().copied());
        }
        let mut new_id = vec![usize::MAX; drafts.len()];
        for (i, &d) in order.iter().enumerate() {
            new_id[d] = i;
        }
        let mut nodes: Vec<Node> = order
            .iter()
            .map(|&d| Node {
                label: drafts[d].label.clone(),
                children: drafts[d].children.iter().map(|&c| NodeId(new_id[c])).collect(),
                parent: None,
                point: drafts[d].point,
                level: 0,
            })
            .collect();
        for i in 0..nodes.len() {
            let children = nodes[i].children.clone();
            let level = nodes[i].level;
            for c in children {
                nodes[c.0].parent = Some(NodeId(i));
                nodes[c.0].level = level + 1;
            }
        }
        RootedTree { nodes, points }
    }

    /// Sorts children canonically and renumbers. Siblings with equal codes are
    /// ordered by the smallest point index below them.
    fn assemble(mut drafts: Vec<Draft>, root: usize, points: Vec<String>) -> RootedTree {
        let provisional = RootedTree::from_drafts(&drafts, root, points.clone());
        // Map draft ids to provisional ids to look up codes and min points.
        let mut prov_of = vec![0usize; drafts.len()];
        {
            let mut queue = VecDeque::from([root]);
            let mut next = 0;
            while let Some(d) = queue.pop_front() {
                prov_of[d] = next;
                next += 1;
                queue.extend(drafts[d].children.iter().copied());
            }
        }
        let codes = node_codes(&provisional, CodeMode::Labeled);
        let min_point = provisional.min_point_per_node();
        for d in drafts.iter_mut() {
            d.children.sort_by(|&a, &b| {
                let (pa, pb) = (prov_of[a], prov_of[b]);
                codes[pa].cmp(&codes[pb]).then(min_point[pa].cmp(&min_point[pb]))
            });
        }
        RootedTree::from_drafts(&drafts, root, points)
    }

    fn min_point_per_node(&self) -> Vec<usize> {
        let mut min = vec![usize::MAX; self.nodes.len()];
        for v in self.postorder() {
            let node = &self.nodes[v.0];
            min[v.0] = match node.point {
                Some(p) => p,
                None => node.children.iter().map(|c| min[c.0]).min().unwrap_or(usize::MAX),
            };
        }
        min
    }

    /// Builds a tree from its nested description, checking every invariant.
    ///
    /// Point order (used by [`tree_to_space`]) is the preorder of the leaves.
    pub fn from_nested(nested: &NestedTree) -> Result<RootedTree, TreeError> {
        let mut drafts: Vec<Draft> = Vec::new();
        let mut points: Vec<String> = Vec::new();
        let mut seen: HashSet<String> = HashSet::new();
        // Explicit stack: (node, parent draft index).
        let mut stack: Vec<(&NestedTree, Option<usize>)> = vec![(nested, None)];
        while let Some((n, parent)) = stack.pop() {
            if let Some(pi) = parent {
                let parent_label = &drafts[pi].label;
                if n.label >= *parent_label {
                    return Err(TreeError::LabelMonotonicityViolation {
                        parent: parent_label.clone(),
                        child: n.label.clone(),
                    });
                }
            }
            let id = drafts.len();
            let point = if n.children.is_empty() {
                let p = n.point.clone().ok_or(TreeError::LeafWithoutPoint)?;
                if !n.label.is_zero() {
                    return Err(TreeError::LeafLabelNonzero {
                        point: p,
                        label: n.label.clone(),
                    });
                }
                if !seen.insert(p.clone()) {
                    return Err(TreeError::DuplicatePoint(p));
                }
                points.push(p);
                Some(points.len() - 1)
            } else {
                if let Some(p) = &n.point {
                    return Err(TreeError::InternalWithPoint(p.clone()));
                }
                if n.children.len() < 2 {
                    return Err(TreeError::TooFewChildren(n.label.clone()));
                }
                if !n.label.is_positive() {
                    return Err(TreeError::NonPositiveLabel(n.label.clone()));
                }
                None
            };
            drafts.push(Draft {
                label: n.label.clone(),
                children: Vec::new(),
                point,
            });
            if let Some(pi) = parent {
                drafts[pi].children.push(id);
            }
            for c in n.children.iter().rev() {
                stack.push((c, Some(id)));
            }
        }
        Ok(RootedTree::assemble(drafts, 0, points))
    }

    pub fn to_nested(&self) -> NestedTree {
        self.nested_at(self.root())
    }

    fn nested_at(&self, v: NodeId) -> NestedTree {
        let node = &self.nodes[v.0];
        NestedTree {
            label: node.label.clone(),
            point: node.point.map(|p| self.points[p].clone()),
            children: node.children.iter().map(|&c| self.nested_at(c)).collect(),
        }
    }

    pub fn root(&self) -> NodeId {
        NodeId(0)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.nodes.len()).map(NodeId)
    }

    pub fn internal_nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.node_ids().filter(|&v| !self.is_leaf(v))
    }

    /// Point ids in the order used by [`tree_to_space`].
    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn label(&self, v: NodeId) -> &Rational {
        &self.nodes[v.0].label
    }

    pub fn children(&self, v: NodeId) -> &[NodeId] {
        &self.nodes[v.0].children
    }

    pub fn parent(&self, v: NodeId) -> Option<NodeId> {
        self.nodes[v.0].parent
    }

    pub fn level(&self, v: NodeId) -> usize {
        self.nodes[v.0].level
    }

    pub fn out_degree(&self, v: NodeId) -> usize {
        self.nodes[v.0].children.len()
    }

    pub fn is_leaf(&self, v: NodeId) -> bool {
        self.nodes[v.0].children.is_empty()
    }

    /// Index (into [`Self::points`]) of the point on leaf `v`.
    pub fn point_index(&self, v: NodeId) -> Option<usize> {
        self.nodes[v.0].point
    }

    pub fn point(&self, v: NodeId) -> Option<&str> {
        self.nodes[v.0].point.map(|p| self.points[p].as_str())
    }

    pub fn check_node(&self, v: NodeId) -> Result<(), TreeError> {
        if v.0 < self.nodes.len() {
            Ok(())
        } else {
            Err(TreeError::UnknownNode(v.0))
        }
    }

    /// Children first, root last.
    pub fn postorder(&self) -> Vec<NodeId> {
        // Breadth-first numbering puts every child after its parent.
        (0..self.nodes.len()).rev().map(NodeId).collect()
    }

    /// Leaf point indices below every node, in node order.
    pub fn leaf_index_sets(&self) -> Vec<Vec<usize>> {
        let mut sets: Vec<Vec<usize>> = vec![Vec::new(); self.nodes.len()];
        for v in self.postorder() {
            let node = &self.nodes[v.0];
            let mut s = match node.point {
                Some(p) => vec![p],
                None => node.children.iter().flat_map(|c| sets[c.0].iter().copied()).collect(),
            };
            s.sort_unstable();
            sets[v.0] = s;
        }
        sets
    }

    pub fn leaf_set(&self, v: NodeId) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            if let Some(p) = self.point(u) {
                out.insert(p.to_string());
            }
            stack.extend(self.children(u).iter().copied());
        }
        out
    }

    /// Number of edges on the longest root-to-leaf path.
    pub fn height(&self) -> usize {
        self.nodes.iter().map(|n| n.level).max().unwrap_or(0)
    }

    /// Largest out-degree over all nodes.
    pub fn max_out_degree(&self) -> usize {
        self.nodes.iter().map(|n| n.children.len()).max().unwrap_or(0)
    }

    pub fn node_info(&self, v: NodeId) -> Result<NodeInfo, TreeError> {
        self.check_node(v)?;
        Ok(NodeInfo {
            level: self.level(v),
            out_degree: self.out_degree(v),
            leaf_set: self.leaf_set(v),
        })
    }

    /// Leaf node carrying point index `p`.
    pub fn leaf_of(&self, p: usize) -> Option<NodeId> {
        self.node_ids().find(|&v| self.nodes[v.0].point == Some(p))
    }

    /// Lowest common ancestor by intersecting root paths.
    pub fn lca(&self, a: NodeId, b: NodeId) -> NodeId {
        let mut on_path = HashSet::new();
        let mut u = Some(a);
        while let Some(x) = u {
            on_path.insert(x);
            u = self.parent(x);
        }
        let mut w = b;
        loop {
            if on_path.contains(&w) {
                return w;
            }
            w = self.parent(w).expect("root is a common ancestor");
        }
    }

    /// Labels of nodes at each level: `levels()[k]` lists the nodes at level `k`.
    pub fn levels(&self) -> Vec<Vec<NodeId>> {
        let mut out: Vec<Vec<NodeId>> = vec![Vec::new(); self.height() + 1];
        for v in self.node_ids() {
            out[self.level(v)].push(v);
        }
        out
    }

    /// Sorted distinct labels, zero included.
    pub fn label_set(&self) -> Vec<Rational> {
        self.nodes
            .iter()
            .map(|n| n.label.clone())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// Short human-readable description of a node, e.g. `{x1,x2}`.
    pub fn describe(&self, v: NodeId) -> String {
        let names: Vec<String> = self.leaf_set(v).into_iter().collect();
        format!("{{{}}}", names.join(","))
    }
}

/// Ranks below `subset` with diameter rank `diam`, split into the classes of
/// the relation `d(u,v) < diam` (connected components of the complement of
/// the diametrical graph).
fn split_below_diameter(space: &Space, subset: &[usize], diam: u32) -> Vec<Vec<usize>> {
    let mut seen = vec![false; subset.len()];
    let mut parts = Vec::new();
    for start in 0..subset.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut part = vec![subset[start]];
        let mut queue = vec![start];
        while let Some(i) = queue.pop() {
            for j in 0..subset.len() {
                if !seen[j] && space.rank(subset[i], subset[j]) < diam {
                    seen[j] = true;
                    part.push(subset[j]);
                    queue.push(j);
                }
            }
        }
        part.sort_unstable();
        parts.push(part);
    }
    parts
}

fn diameter_rank(space: &Space, subset: &[usize]) -> u32 {
    let mut d = 0;
    for (k, &i) in subset.iter().enumerate() {
        for &j in &subset[k + 1..] {
            d = d.max(space.rank(i, j));
        }
    }
    d
}

fn sort_parts(parts: &mut [BTreeSet<String>]) {
    parts.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.first().cmp(&b.first())));
}

/// Parts of the complete multipartite diametrical graph of `space`.
///
/// Sorted by size, then by smallest point id.
pub fn multipartite_parts(space: &Space) -> Result<Vec<BTreeSet<String>>, TreeError> {
    if space.len() < 2 {
        return Err(TreeError::SingletonSpace);
    }
    let all: Vec<usize> = (0..space.len()).collect();
    let diam = diameter_rank(space, &all);
    let mut parts: Vec<BTreeSet<String>> = split_below_diameter(space, &all, diam)
        .into_iter()
        .map(|p| p.into_iter().map(|i| space.point(i).to_string()).collect())
        .collect();
    sort_parts(&mut parts);
    Ok(parts)
}

/// Constructs the representing tree of `space`.
pub fn build_representing_tree(space: &Space) -> RootedTree {
    let spectrum = space.spectrum_values();
    let mut drafts: Vec<Draft> = Vec::new();
    let mut work: Vec<(Vec<usize>, Option<usize>)> = vec![((0..space.len()).collect(), None)];
    while let Some((subset, parent)) = work.pop() {
        let id = drafts.len();
        if subset.len() == 1 {
            drafts.push(Draft {
                label: Rational::zero(),
                children: Vec::new(),
                point: Some(subset[0]),
            });
        } else {
            let diam = diameter_rank(space, &subset);
            drafts.push(Draft {
                label: spectrum[diam as usize].clone(),
                children: Vec::new(),
                point: None,
            });
            for part in split_below_diameter(space, &subset, diam).into_iter().rev() {
                work.push((part, Some(id)));
            }
        }
        if let Some(p) = parent {
            drafts[p].children.push(id);
        }
    }
    RootedTree::assemble(drafts, 0, space.points().to_vec())
}

/// Recovers the space: `d(x,y)` is the label of the lowest common ancestor.
pub fn tree_to_space(tree: &RootedTree) -> Space {
    let labels = tree.label_set();
    let rank_of: HashMap<&Rational, u32> = labels.iter().enumerate().map(|(i, l)| (l, i as u32)).collect();
    let n = tree.points().len();
    let mut ranks = vec![0u32; n * n];
    let sets = tree.leaf_index_sets();
    for v in tree.internal_nodes() {
        let r = rank_of[tree.label(v)];
        let children = tree.children(v);
        for (k, a) in children.iter().enumerate() {
            for b in &children[k + 1..] {
                for &x in &sets[a.0] {
                    for &y in &sets[b.0] {
                        ranks[x * n + y] = r;
                        ranks[y * n + x] = r;
                    }
                }
            }
        }
    }
    Space::from_ranks_unchecked(tree.points().to_vec(), labels, ranks)
}

/// All balls of the space, one per node of the tree, in node order.
pub fn ballean(tree: &RootedTree) -> Vec<BTreeSet<String>> {
    let sets = tree.leaf_index_sets();
    sets.into_iter()
        .map(|s| s.into_iter().map(|p| tree.points()[p].clone()).collect())
        .collect()
}

pub fn node_info(tree: &RootedTree, v: NodeId) -> Result<NodeInfo, TreeError> {
    tree.node_info(v)
}

pub fn height(tree: &RootedTree) -> usize {
    tree.height()
}

pub fn max_out_degree(tree: &RootedTree) -> usize {
    tree.max_out_degree()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn set(v: &[&str]) -> BTreeSet<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn singleton_tree() {
        let s = Space::from_integer_matrix(&["x"], &[&[0]]).unwrap();
        let t = build_representing_tree(&s);
        assert_eq!(t.len(), 1);
        assert!(t.label(t.root()).is_zero());
        assert_eq!(t.point(t.root()), Some("x"));
        assert_eq!(ballean(&t), vec![set(&["x"])]);
        assert_eq!(tree_to_space(&t), s);
        assert_eq!(multipartite_parts(&s).unwrap_err(), TreeError::SingletonSpace);
    }

    #[test]
    fn equilateral_tree() {
        let t = build_representing_tree(&fixtures::equilateral(1));
        assert_eq!(t.label(t.root()), &Rational::from(1));
        assert_eq!(t.out_degree(t.root()), 3);
        assert!(t.children(t.root()).iter().all(|&c| t.is_leaf(c)));
        assert_eq!(
            multipartite_parts(&fixtures::equilateral(1)).unwrap(),
            vec![set(&["a"]), set(&["b"]), set(&["c"])]
        );
    }

    #[test]
    fn isosceles_tree() {
        let s = fixtures::isosceles();
        let t = build_representing_tree(&s);
        let root = t.root();
        assert_eq!(t.label(root), &Rational::from(2));
        let kids = t.children(root);
        assert_eq!(kids.len(), 2);
        // Inner node sorts before the leaf: "(" < "x".
        assert_eq!(t.label(kids[0]), &Rational::from(1));
        assert_eq!(t.leaf_set(kids[0]), set(&["a", "b"]));
        assert_eq!(t.point(kids[1]), Some("c"));
        assert_eq!(multipartite_parts(&s).unwrap(), vec![set(&["c"]), set(&["a", "b"])]);
        let mut balls = ballean(&t);
        balls.sort();
        let mut expected = vec![
            set(&["a"]),
            set(&["b"]),
            set(&["c"]),
            set(&["a", "b"]),
            set(&["a", "b", "c"]),
        ];
        expected.sort();
        assert_eq!(balls, expected);
    }

    #[test]
    fn two_point_parts() {
        let s = Space::from_integer_matrix(&["a", "b"], &[&[0, 5], &[5, 0]]).unwrap();
        assert_eq!(multipartite_parts(&s).unwrap(), vec![set(&["a"]), set(&["b"])]);
    }

    #[test]
    fn nested_round_trip_and_inverse_of_build() {
        let nested = NestedTree::internal(
            2,
            vec![
                NestedTree::leaf("c"),
                NestedTree::internal(1, vec![NestedTree::leaf("a"), NestedTree::leaf("b")]),
            ],
        );
        let t = RootedTree::from_nested(&nested).unwrap();
        let s = tree_to_space(&t);
        assert_eq!(s.dist_by_id("a", "b").unwrap(), &Rational::from(1));
        assert_eq!(s.dist_by_id("a", "c").unwrap(), &Rational::from(2));
        assert_eq!(s.dist_by_id("b", "c").unwrap(), &Rational::from(2));
        let rebuilt = RootedTree::from_nested(&t.to_nested()).unwrap();
        assert_eq!(rebuilt.to_nested(), t.to_nested());
    }

    #[test]
    fn nested_validation_errors() {
        let bad = NestedTree::internal(
            1,
            vec![
                NestedTree::leaf("a"),
                NestedTree::internal(1, vec![NestedTree::leaf("b"), NestedTree::leaf("c")]),
            ],
        );
        assert!(matches!(
            RootedTree::from_nested(&bad),
            Err(TreeError::LabelMonotonicityViolation { .. })
        ));
        let one_child = NestedTree::internal(1, vec![NestedTree::leaf("a")]);
        assert!(matches!(
            RootedTree::from_nested(&one_child),
            Err(TreeError::TooFewChildren(_))
        ));
        let dup = NestedTree::internal(1, vec![NestedTree::leaf("a"), NestedTree::leaf("a")]);
        assert_eq!(
            RootedTree::from_nested(&dup).unwrap_err(),
            TreeError::DuplicatePoint("a".into())
        );
        let mut leaf = NestedTree::leaf("a");
        leaf.label = Rational::from(1);
        assert!(matches!(
            RootedTree::from_nested(&leaf),
            Err(TreeError::LeafLabelNonzero { .. })
        ));
        let no_point = NestedTree {
            label: Rational::zero(),
            point: None,
            children: vec![],
        };
        assert_eq!(
            RootedTree::from_nested(&no_point).unwrap_err(),
            TreeError::LeafWithoutPoint
        );
        let mut with_point = NestedTree::internal(1, vec![NestedTree::leaf("a"), NestedTree::leaf("b")]);
        with_point.point = Some("z".into());
        assert_eq!(
            RootedTree::from_nested(&with_point).unwrap_err(),
            TreeError::InternalWithPoint("z".into())
        );
    }

    #[test]
    fn node_queries() {
        let t = build_representing_tree(&fixtures::isosceles());
        let info = node_info(&t, t.root()).unwrap();
        assert_eq!(info.level, 0);
        assert_eq!(info.out_degree, 2);
        assert_eq!(info.leaf_set, set(&["a", "b", "c"]));
        assert_eq!(node_info(&t, NodeId(99)).unwrap_err(), TreeError::UnknownNode(99));
        assert_eq!(height(&t), 2);
        assert_eq!(max_out_degree(&t), 2);
    }

    #[test]
    fn homogeneous_shape() {
        let t = RootedTree::from_nested(&fixtures::homogeneous_tree(3, 2, 1)).unwrap();
        assert_eq!(t.height(), 3);
        assert_eq!(t.max_out_degree(), 4);
        assert_eq!(t.points().len(), 24);
    }

    #[test]
    fn perfect_ternary_shape() {
        let t = RootedTree::from_nested(&fixtures::perfect_nary_tree(3, 3)).unwrap();
        assert_eq!(t.height(), 3);
        assert_eq!(t.points().len(), 27);
        assert!(t.internal_nodes().all(|v| t.out_degree(v) == 3));
    }

    #[test]
    fn sixteen_point_distances() {
        let s = fixtures::sixteen_point_space();
        let d = |a: &str, b: &str| s.dist_by_id(a, b).unwrap().clone();
        assert_eq!(d("x8", "x9"), Rational::from(1));
        assert_eq!(d("x3", "x5"), Rational::from(4));
        assert_eq!(d("x5", "x14"), Rational::from(2));
        let sub = s.restrict(&["x8", "x9", "x3"]).unwrap();
        assert_eq!(sub.dist_by_id("x8", "x9").unwrap(), &Rational::from(1));
        assert_eq!(sub.dist_by_id("x8", "x3").unwrap(), &Rational::from(3));
        assert_eq!(sub.dist_by_id("x9", "x3").unwrap(), &Rational::from(3));
        let spec: Vec<Rational> = (0..=4).map(|v: i64| Rational::from(v)).collect();
        assert_eq!(s.spectrum().0, spec);
        assert_eq!(s.diameter(), &Rational::from(4));
    }

    #[test]
    fn lca_matches_distance() {
        let s = fixtures::sixteen_point_space();
        let t = build_representing_tree(&s);
        for i in 0..s.len() {
            for j in 0..s.len() {
                if i == j {
                    continue;
                }
                let a = t.leaf_of(i).unwrap();
                let b = t.leaf_of(j).unwrap();
                assert_eq!(t.label(t.lca(a, b)), s.dist(i, j));
            }
        }
    }
}
