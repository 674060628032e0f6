//! Level graphs of a space and complete multipartite recognition.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use thiserror::Error;

use crate::rational::Rational;
use crate::space::Space;
use crate::tree::{NodeId, RootedTree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("{0} is not a distance of the space")]
    ValueNotInSpectrum(Rational),
    #[error("level graphs need a positive radius")]
    ZeroRadius,
    #[error("every vertex is isolated")]
    AllVerticesIsolated,
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("loop at `{0}`")]
    Loop(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Undirected simple graph on named vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    vertices: Vec<String>,
    adj: Vec<BTreeSet<usize>>,
}

impl SimpleGraph {
    pub fn new<V: AsRef<str>>(vertices: &[V], edges: &[(V, V)]) -> Result<Self, GraphError> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(GraphError::DuplicateVertex(v.clone()));
            }
        }
        let mut adj = vec![BTreeSet::new(); vertices.len()];
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let i = *index.get(a).ok_or_else(|| GraphError::UnknownVertex(a.into()))?;
            let j = *index.get(b).ok_or_else(|| GraphError::UnknownVertex(b.into()))?;
            if i == j {
                return Err(GraphError::Loop(a.into()));
            }
            adj[i].insert(j);
            adj[j].insert(i);
        }
        Ok(SimpleGraph { vertices, adj })
    }

    /// Complete multipartite graph on the given parts.
    pub fn complete_multipartite(parts: &[Vec<String>]) -> Self {
        let vertices: Vec<String> = parts.iter().flatten().cloned().collect();
        let mut part_of = Vec::new();
        for (k, p) in parts.iter().enumerate() {
            part_of.extend(std::iter::repeat_n(k, p.len()));
        }
        let n = vertices.len();
        let adj = (0..n)
            .map(|i| (0..n).filter(|&j| part_of[j] != part_of[i]).collect())
            .collect();
        SimpleGraph { vertices, adj }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn has_edge_idx(&self, i: usize, j: usize) -> bool {
        self.adj[i].contains(&j)
    }

    pub fn neighbors(&self, i: usize) -> &BTreeSet<usize> {
        &self.adj[i]
    }

    /// Edges as vertex-name pairs, `(u, v)` with `u` listed before `v`.
    pub fn edges(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for (i, ns) in self.adj.iter().enumerate() {
            for &j in ns.range(i + 1..) {
                out.push((self.vertices[i].clone(), self.vertices[j].clone()));
            }
        }
        out
    }

    pub fn vertex_set(&self) -> BTreeSet<String> {
        self.vertices.iter().cloned().collect()
    }

    /// Subgraph induced on the given vertex indices (kept in increasing order).
    pub fn induced(&self, keep: &[usize]) -> SimpleGraph {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut new_of = HashMap::new();
        for (k, &i) in keep.iter().enumerate() {
            new_of.insert(i, k);
        }
        let adj = keep
            .iter()
            .map(|&i| self.adj[i].iter().filter_map(|j| new_of.get(j).copied()).collect())
            .collect();
        SimpleGraph {
            vertices: keep.iter().map(|&i| self.vertices[i].clone()).collect(),
            adj,
        }
    }

    /// Connected components as sorted vertex index lists, ordered by smallest index.
    pub fn components(&self) -> Vec<Vec<usize>> {
        components_of(self.vertices.len(), |i, j| self.adj[i].contains(&j))
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// One `u v` line per edge; isolated vertices appear alone on a line.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if self.adj[i].is_empty() {
                let _ = writeln!(out, "{v}");
            }
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    pub fn from_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut vertices: Vec<String> = Vec::new();
        let mut seen = BTreeSet::new();
        let mut edges = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let toks: Vec<&str> = line.split_whitespace().collect();
            let mut add = |v: &str| {
                if seen.insert(v.to_string()) {
                    vertices.push(v.to_string());
                }
            };
            match toks.as_slice() {
                [] => {}
                [v] => add(v),
                [u, v] => {
                    add(u);
                    add(v);
                    edges.push((u.to_string(), v.to_string()));
                }
                _ => {
                    return Err(GraphError::Parse {
                        line: ln + 1,
                        message: format!("expected `u v`, found `{line}`"),
                    })
                }
            }
        }
        SimpleGraph::new(&vertices, &edges)
    }
}

/// Connected components of an implicit graph on `0..n`.
fn components_of(n: usize, adjacent: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for (v, sv) in seen.iter_mut().enumerate() {
                if !*sv && adjacent(u, v) {
                    *sv = true;
                    comp.push(v);
                    stack.push(v);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Graph on `X` joining the pairs at distance exactly `r`.
pub fn level_graph(space: &Space, r: &Rational) -> Result<SimpleGraph, GraphError> {
    if r.is_zero() {
        return Err(GraphError::ZeroRadius);
    }
    let rank = space
        .spectrum_values()
        .binary_search(r)
        .map_err(|_| GraphError::ValueNotInSpectrum(r.clone()))? as u32;
    Ok(level_graph_by_rank(space, rank))
}

pub(crate) fn level_graph_by_rank(space: &Space, rank: u32) -> SimpleGraph {
    let n = space.len();
    let adj = (0..n)
        .map(|i| (0..n).filter(|&j| j != i && space.rank(i, j) == rank).collect())
        .collect();
    SimpleGraph {
        vertices: space.points().to_vec(),
        adj,
    }
}

/// Drops isolated vertices.
pub fn strip_isolated(g: &SimpleGraph) -> Result<SimpleGraph, GraphError> {
    if g.vertex_count() == 0 {
        return Err(GraphError::EmptyGraph);
    }
    let keep: Vec<usize> = (0..g.vertex_count()).filter(|&i| !g.adj[i].is_empty()).collect();
    if keep.is_empty() {
        return Err(GraphError::AllVerticesIsolated);
    }
    Ok(g.induced(&keep))
}

fn sort_parts(parts: &mut [BTreeSet<String>]) {
    parts.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.first().cmp(&b.first())));
}

/// Parts `[X_1, ..., X_k]`, `k >= 2`, if `g` is complete multipartite.
///
/// Candidate parts are the components of the complement; the verdict is then
/// confirmed by checking that no edge lies inside a part.
pub fn complete_multipartite_parts(g: &SimpleGraph) -> Option<Vec<BTreeSet<String>>> {
    let n = g.vertex_count();
    let comps = components_of(n, |i, j| i != j && !g.adj[i].contains(&j));
    if comps.len() < 2 {
        return None;
    }
    for comp in &comps {
        for (a, &i) in comp.iter().enumerate() {
            if comp[a + 1..].iter().any(|&j| g.adj[i].contains(&j)) {
                return None;
            }
        }
    }
    let mut parts: Vec<BTreeSet<String>> = comps
        .into_iter()
        .map(|c| c.into_iter().map(|i| g.vertices[i].clone()).collect())
        .collect();
    sort_parts(&mut parts);
    Some(parts)
}

/// One piece of a level graph: the inner node labeled `r` and its parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelPiece {
    pub node: NodeId,
    pub parts: Vec<BTreeSet<String>>,
}

/// Splits `G'_{r,X}` into the complete multipartite pieces given by the
/// inner nodes labeled `r`; each piece's parts are the leaf sets of the
/// node's children.
pub fn decompose_level_graph(space: &Space, r: &Rational, tree: &RootedTree) -> Result<Vec<LevelPiece>, GraphError> {
    if r.is_zero() {
        return Err(GraphError::ZeroRadius);
    }
    if space.spectrum_values().binary_search(r).is_err() {
        return Err(GraphError::ValueNotInSpectrum(r.clone()));
    }
    Ok(tree
        .internal_nodes()
        .filter(|&v| tree.label(v) == r)
        .map(|v| {
            let mut parts: Vec<BTreeSet<String>> = tree.children(v).iter().map(|&c| tree.leaf_set(c)).collect();
            sort_parts(&mut parts);
            LevelPiece { node: v, parts }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::tree::build_representing_tree;

    fn set(v: &[&str]) -> BTreeSet<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn pairs(g: &SimpleGraph) -> Vec<(String, String)> {
        g.edges()
    }

    fn s(a: &str, b: &str) -> (String, String) {
        (a.to_string(), b.to_string())
    }

    #[test]
    fn level_graph_examples() {
        let two = fixtures::two_point(3);
        let g = level_graph(&two, &Rational::from(3)).unwrap();
        assert_eq!(pairs(&g), vec![s("a", "b")]);

        let iso = fixtures::isosceles();
        let g2 = level_graph(&iso, &Rational::from(2)).unwrap();
        assert_eq!(pairs(&g2), vec![s("a", "c"), s("b", "c")]);
        let g1 = level_graph(&iso, &Rational::from(1)).unwrap();
        assert_eq!(pairs(&g1), vec![s("a", "b")]);
        assert!(g1.neighbors(2).is_empty());

        assert_eq!(
            level_graph(&iso, &Rational::from(7)).unwrap_err(),
            GraphError::ValueNotInSpectrum(Rational::from(7))
        );
        assert_eq!(
            level_graph(&iso, &Rational::zero()).unwrap_err(),
            GraphError::ZeroRadius
        );
    }

    #[test]
    fn strip_examples() {
        let k2 = SimpleGraph::new(&["a", "b"], &[("a", "b")]).unwrap();
        assert_eq!(strip_isolated(&k2).unwrap(), k2);
        let g1 = level_graph(&fixtures::isosceles(), &Rational::from(1)).unwrap();
        let stripped = strip_isolated(&g1).unwrap();
        assert_eq!(stripped.vertex_set(), set(&["a", "b"]));
        assert_eq!(stripped.edge_count(), 1);
        let empty = SimpleGraph::new::<&str>(&["a", "b", "c"], &[]).unwrap();
        assert_eq!(strip_isolated(&empty).unwrap_err(), GraphError::AllVerticesIsolated);
    }

    #[test]
    fn multipartite_examples() {
        let k23 = SimpleGraph::complete_multipartite(&[
            vec!["a".into(), "b".into()],
            vec!["c".into(), "d".into(), "e".into()],
        ]);
        let parts = complete_multipartite_parts(&k23).unwrap();
        assert_eq!(parts, vec![set(&["a", "b"]), set(&["c", "d", "e"])]);

        // A three-vertex path is K_{1,2}; four vertices break it.
        let p3 = SimpleGraph::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        assert_eq!(
            complete_multipartite_parts(&p3).unwrap(),
            vec![set(&["b"]), set(&["a", "c"])]
        );
        let p4 = SimpleGraph::new(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d")]).unwrap();
        assert_eq!(complete_multipartite_parts(&p4), None);

        let k3 = SimpleGraph::new(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
        assert_eq!(
            complete_multipartite_parts(&k3).unwrap(),
            vec![set(&["a"]), set(&["b"]), set(&["c"])]
        );

        let single = SimpleGraph::new::<&str>(&["a"], &[]).unwrap();
        assert_eq!(complete_multipartite_parts(&single), None);
    }

    #[test]
    fn decomposition_examples() {
        let iso = fixtures::isosceles();
        let t = build_representing_tree(&iso);
        let top = decompose_level_graph(&iso, &Rational::from(2), &t).unwrap();
        assert_eq!(top.len(), 1);
        assert_eq!(top[0].node, t.root());
        assert_eq!(top[0].parts, vec![set(&["c"]), set(&["a", "b"])]);
        let low = decompose_level_graph(&iso, &Rational::from(1), &t).unwrap();
        assert_eq!(low.len(), 1);
        assert_eq!(low[0].parts, vec![set(&["a"]), set(&["b"])]);

        let big = fixtures::sixteen_point_space();
        let bt = build_representing_tree(&big);
        let pieces = decompose_level_graph(&big, &Rational::from(1), &bt).unwrap();
        let mut sizes: Vec<Vec<usize>> = pieces
            .iter()
            .map(|p| p.parts.iter().map(BTreeSet::len).collect())
            .collect();
        sizes.sort();
        assert_eq!(sizes, vec![vec![1, 1], vec![1, 1], vec![1, 1], vec![1, 1, 1]]);
    }

    #[test]
    fn edge_list_round_trip() {
        let g = SimpleGraph::new(&["a", "b", "c", "z"], &[("a", "b"), ("b", "c")]).unwrap();
        let text = g.to_edge_list();
        let back = SimpleGraph::from_edge_list(&text).unwrap();
        assert_eq!(back.vertex_set(), g.vertex_set());
        assert_eq!(back.edges().len(), 2);
        assert!(SimpleGraph::from_edge_list("a b c").is_err());
        assert_eq!(
            SimpleGraph::from_edge_list("a a").unwrap_err(),
            GraphError::Loop("a".into())
        );
    }
}
