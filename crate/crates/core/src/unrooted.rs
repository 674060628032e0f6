//! Ultrametrics generated by vertex-labeled free trees.
//!
//! For a free tree `T` with labeling `l`, `d_l(u, v)` is the largest label on
//! the path from `u` to `v` (and 0 when `u = v`). A space comes from such a
//! tree exactly when every inner node of its representing tree has a leaf
//! child; [`unrooted_from_representing`] builds the tree in that case.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::Rational;
use crate::space::{validate_space, Space};
use crate::tree::{NodeId, RootedTree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UnrootedError {
    #[error("tree has no vertices")]
    Empty,
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("vertex `{0}` has a negative label")]
    NegativeLabel(String),
    #[error("loop at `{0}`")]
    Loop(String),
    #[error("edge {{{0}, {1}}} listed twice")]
    DuplicateEdge(String, String),
    #[error("expected {expected} edges for a tree, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("edges do not connect the vertices")]
    Disconnected,
    #[error("both ends of edge {{{0}, {1}}} are labeled 0")]
    NotUltrametricGenerating(String, String),
    #[error("inner node {0} has no leaf child")]
    MissingLeafChild(NodeId),
}

/// A verdict together with an optional counterexample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witnessed<W> {
    pub holds: bool,
    pub witness: Option<W>,
}

impl<W> Witnessed<W> {
    pub fn yes() -> Self {
        Witnessed {
            holds: true,
            witness: None,
        }
    }

    pub fn no(witness: W) -> Self {
        Witnessed {
            holds: false,
            witness: Some(witness),
        }
    }
}

/// Vertex-labeled free tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "UnrootedDoc", into = "UnrootedDoc")]
pub struct UnrootedTree {
    vertices: Vec<String>,
    labels: Vec<Rational>,
    adj: Vec<Vec<usize>>,
    index: HashMap<String, usize>,
}

impl UnrootedTree {
    pub fn new(vertices: Vec<(String, Rational)>, edges: Vec<(String, String)>) -> Result<Self, UnrootedError> {
        if vertices.is_empty() {
            return Err(UnrootedError::Empty);
        }
        let mut index = HashMap::with_capacity(vertices.len());
        let mut names = Vec::with_capacity(vertices.len());
        let mut labels = Vec::with_capacity(vertices.len());
        for (i, (id, label)) in vertices.into_iter().enumerate() {
            if label.is_negative() {
                return Err(UnrootedError::NegativeLabel(id));
            }
            if index.insert(id.clone(), i).is_some() {
                return Err(UnrootedError::DuplicateVertex(id));
            }
            names.push(id);
            labels.push(label);
        }
        let n = names.len();
        let mut adj = vec![Vec::new(); n];
        let mut seen = BTreeSet::new();
        for (a, b) in &edges {
            let i = *index.get(a).ok_or_else(|| UnrootedError::UnknownVertex(a.clone()))?;
            let j = *index.get(b).ok_or_else(|| UnrootedError::UnknownVertex(b.clone()))?;
            if i == j {
                return Err(UnrootedError::Loop(a.clone()));
            }
            if !seen.insert((i.min(j), i.max(j))) {
                return Err(UnrootedError::DuplicateEdge(a.clone(), b.clone()));
            }
            adj[i].push(j);
            adj[j].push(i);
        }
        if edges.len() != n - 1 {
            return Err(UnrootedError::EdgeCount {
                expected: n - 1,
                found: edges.len(),
            });
        }
        for ns in &mut adj {
            ns.sort_unstable();
        }
        let tree = UnrootedTree {
            vertices: names,
            labels,
            adj,
            index,
        };
        // n - 1 distinct edges plus connectivity rules out cycles.
        if tree.path_maxima(0).iter().any(Option::is_none) {
            return Err(UnrootedError::Disconnected);
        }
        Ok(tree)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn index_of(&self, id: &str) -> Result<usize, UnrootedError> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| UnrootedError::UnknownVertex(id.to_string()))
    }

    pub fn label(&self, i: usize) -> &Rational {
        &self.labels[i]
    }

    pub fn label_of(&self, id: &str) -> Result<&Rational, UnrootedError> {
        Ok(&self.labels[self.index_of(id)?])
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    /// Edges as index pairs `(i, j)` with `i < j`, sorted.
    pub fn edge_indices(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.len().saturating_sub(1));
        for (i, ns) in self.adj.iter().enumerate() {
            out.extend(ns.iter().filter(|&&j| j > i).map(|&j| (i, j)));
        }
        out
    }

    pub fn edges(&self) -> Vec<(String, String)> {
        self.edge_indices()
            .into_iter()
            .map(|(i, j)| (self.vertices[i].clone(), self.vertices[j].clone()))
            .collect()
    }

    /// Largest label on the path from `src` to every vertex; `None` if unreachable.
    fn path_maxima(&self, src: usize) -> Vec<Option<Rational>> {
        let mut best: Vec<Option<Rational>> = vec![None; self.len()];
        best[src] = Some(self.labels[src].clone());
        let mut stack = vec![src];
        while let Some(u) = stack.pop() {
            let here = best[u].clone().expect("visited");
            for &w in &self.adj[u] {
                if best[w].is_none() {
                    let l = &self.labels[w];
                    best[w] = Some(if *l > here { l.clone() } else { here.clone() });
                    stack.push(w);
                }
            }
        }
        best
    }

    /// Full `d_l` matrix in vertex order.
    pub fn dl_matrix(&self) -> Vec<Vec<Rational>> {
        (0..self.len())
            .map(|i| {
                let mut row: Vec<Rational> = self.path_maxima(i).into_iter().map(|m| m.expect("connected")).collect();
                row[i] = Rational::zero();
                row
            })
            .collect()
    }
}

/// `d_l(u, v)`: the largest label on the `u`–`v` path, or 0 when `u = v`.
pub fn dl_distance(tree: &UnrootedTree, u: &str, v: &str) -> Result<Rational, UnrootedError> {
    let i = tree.index_of(u)?;
    let j = tree.index_of(v)?;
    if i == j {
        return Ok(Rational::zero());
    }
    Ok(tree.path_maxima(i)[j].clone().expect("connected"))
}

/// Whether every edge has an endpoint with positive label.
pub fn generates_ultrametric(tree: &UnrootedTree) -> Witnessed<(String, String)> {
    for (i, j) in tree.edge_indices() {
        if tree.labels[i].is_zero() && tree.labels[j].is_zero() {
            return Witnessed::no((tree.vertices[i].clone(), tree.vertices[j].clone()));
        }
    }
    Witnessed::yes()
}

/// The space `(V(T), d_l)`.
pub fn space_from_unrooted(tree: &UnrootedTree) -> Result<Space, UnrootedError> {
    if let Some((a, b)) = generates_ultrametric(tree).witness {
        return Err(UnrootedError::NotUltrametricGenerating(a, b));
    }
    Ok(validate_space(&tree.dl_matrix(), &tree.vertices)
        .expect("d_l is an ultrametric when no edge has two zero labels"))
}

/// Whether every inner node has a leaf child; the witness is the first
/// offending node in breadth-first order.
pub fn has_leaf_child_everywhere(tree: &RootedTree) -> Witnessed<NodeId> {
    for v in tree.internal_nodes() {
        if !tree.children(v).iter().any(|&c| tree.is_leaf(c)) {
            return Witnessed::no(v);
        }
    }
    Witnessed::yes()
}

/// Builds a labeled free tree whose `d_l` is the metric of `tree`.
///
/// The leaf children of each inner node form a chain carrying the node's
/// label; the chains of its inner children hang off the last vertex of that
/// chain. Children are visited in the tree's canonical order.
pub fn unrooted_from_representing(tree: &RootedTree) -> Result<UnrootedTree, UnrootedError> {
    if let Some(v) = has_leaf_child_everywhere(tree).witness {
        return Err(UnrootedError::MissingLeafChild(v));
    }
    let root = tree.root();
    if tree.is_leaf(root) {
        let p = tree.point(root).expect("leaf").to_string();
        return UnrootedTree::new(vec![(p, Rational::zero())], Vec::new());
    }
    let mut vertices = Vec::with_capacity(tree.points().len());
    let mut edges = Vec::with_capacity(tree.points().len());
    let mut stack: Vec<(NodeId, Option<String>)> = vec![(root, None)];
    while let Some((v, anchor)) = stack.pop() {
        let label = tree.label(v);
        let mut prev = anchor;
        let mut inner = Vec::new();
        for &c in tree.children(v) {
            match tree.point(c) {
                Some(p) => {
                    vertices.push((p.to_string(), label.clone()));
                    if let Some(q) = prev {
                        edges.push((q, p.to_string()));
                    }
                    prev = Some(p.to_string());
                }
                None => inner.push(c),
            }
        }
        let last = prev.expect("every inner node has a leaf child");
        for &c in inner.iter().rev() {
            stack.push((c, Some(last.clone())));
        }
    }
    // Keep the vertex order of the tree's point list.
    let order: HashMap<&str, usize> = tree.points().iter().enumerate().map(|(i, p)| (p.as_str(), i)).collect();
    vertices.sort_by_key(|(p, _)| order[p.as_str()]);
    UnrootedTree::new(vertices, edges)
}

/// Edges of the labeled tree on `0..n` encoded by a Prüfer sequence of length `n - 2`.
pub fn decode_pruefer(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    assert!(n >= 2 && seq.len() == n - 2, "Prüfer sequence of length n - 2");
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut leaves: BTreeSet<usize> = (0..n).filter(|&i| degree[i] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = leaves.pop_first().expect("a leaf exists");
        edges.push((leaf.min(s), leaf.max(s)));
        degree[s] -= 1;
        if degree[s] == 1 {
            leaves.insert(s);
        }
    }
    let a = leaves.pop_first().expect("two leaves remain");
    let b = leaves.pop_first().expect("two leaves remain");
    edges.push((a, b));
    edges
}

#[derive(Serialize, Deserialize)]
struct VertexDoc {
    id: String,
    label: Rational,
}

#[derive(Serialize, Deserialize)]
struct UnrootedDoc {
    vertices: Vec<VertexDoc>,
    #[serde(default)]
    edges: Vec<[String; 2]>,
}

impl TryFrom<UnrootedDoc> for UnrootedTree {
    type Error = UnrootedError;

    fn try_from(doc: UnrootedDoc) -> Result<Self, Self::Error> {
        UnrootedTree::new(
            doc.vertices.into_iter().map(|v| (v.id, v.label)).collect(),
            doc.edges.into_iter().map(|[a, b]| (a, b)).collect(),
        )
    }
}

impl From<UnrootedTree> for UnrootedDoc {
    fn from(t: UnrootedTree) -> Self {
        let edges = t.edges().into_iter().map(|(a, b)| [a, b]).collect();
        UnrootedDoc {
            vertices: t
                .vertices
                .into_iter()
                .zip(t.labels)
                .map(|(id, label)| VertexDoc { id, label })
                .collect(),
            edges,
        }
    }
}
