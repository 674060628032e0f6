//! Graphviz DOT export.
//!
//! Rooted trees are drawn top-down with each internal node showing its label
//! and each leaf its point id. Unrooted trees show vertex ids with the labels
//! placed beside the vertices.

use std::fmt::Write;

use crate::graphs::SimpleGraph;
use crate::tree::RootedTree;
use crate::unrooted::UnrootedTree;

/// Quotes a DOT identifier.
fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

pub fn tree_to_dot(tree: &RootedTree) -> String {
    let mut s = String::from("digraph representing_tree {\n");
    s.push_str("  node [fontname=\"Helvetica\"];\n  edge [arrowhead=none];\n");
    for v in tree.node_ids() {
        let attrs = match tree.point(v) {
            Some(p) => format!("label={}, shape=plaintext", quote(p)),
            None => format!("label={}, shape=circle", quote(&tree.label(v).to_string())),
        };
        writeln!(s, "  n{} [{attrs}];", v.0).unwrap();
    }
    for v in tree.node_ids() {
        for &c in tree.children(v) {
            writeln!(s, "  n{} -> n{};", v.0, c.0).unwrap();
        }
    }
    s.push_str("}\n");
    s
}

pub fn unrooted_to_dot(tree: &UnrootedTree) -> String {
    let mut s = String::from("graph labeled_tree {\n");
    s.push_str("  node [fontname=\"Helvetica\", shape=circle];\n  forcelabels=true;\n");
    for (i, id) in tree.vertices().iter().enumerate() {
        let label = tree.label(i).to_string();
        writeln!(s, "  v{i} [label={}, xlabel={}];", quote(id), quote(&label)).unwrap();
    }
    for (a, b) in tree.edge_indices() {
        writeln!(s, "  v{a} -- v{b};").unwrap();
    }
    s.push_str("}\n");
    s
}

pub fn graph_to_dot(graph: &SimpleGraph) -> String {
    let mut s = String::from("graph G {\n");
    for v in graph.vertices() {
        writeln!(s, "  {};", quote(v)).unwrap();
    }
    for (a, b) in graph.edges() {
        writeln!(s, "  {} -- {};", quote(&a), quote(&b)).unwrap();
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{isosceles, sixteen_point_unrooted};
    use crate::graphs::level_graph;
    use crate::tree::build_representing_tree;

    #[test]
    fn isosceles_tree() {
        let dot = tree_to_dot(&build_representing_tree(&isosceles()));
        assert!(dot.starts_with("digraph"));
        assert!(dot.contains("n0 [label=\"2\", shape=circle];"));
        assert!(dot.contains("label=\"c\", shape=plaintext"));
        assert_eq!(dot.matches("->").count(), 4);
    }

    #[test]
    fn unrooted_edges_and_labels() {
        let t = sixteen_point_unrooted();
        let dot = unrooted_to_dot(&t);
        assert_eq!(dot.matches(" -- ").count(), 15);
        assert!(dot.contains("xlabel=\"4\""));
    }

    #[test]
    fn level_graph_dot() {
        let g = level_graph(&isosceles(), &2.into()).unwrap();
        let dot = graph_to_dot(&g);
        assert_eq!(dot.matches(" -- ").count(), 2);
    }

    #[test]
    fn quoting() {
        assert_eq!(quote("a\"b"), "\"a\\\"b\"");
    }
}
