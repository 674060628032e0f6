//! Cross-checks every characterization on a single space.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::canonical::count_self_isometries;
use crate::graphs::{complete_multipartite_parts, decompose_level_graph, level_graph};
use crate::space::Space;
use crate::tree::{ballean, build_representing_tree, tree_to_space, RootedTree};
use crate::unrooted::{space_from_unrooted, unrooted_from_representing};

use super::oracle::{self, RELABEL_LIMIT};
use super::structural::*;
use super::ClassifyError;

/// A check whose conditions disagreed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub check: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Skipped {
    pub check: String,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub checks_run: usize,
    pub discrepancies: Vec<Discrepancy>,
    pub skipped: Vec<Skipped>,
}

impl AuditReport {
    pub fn is_clean(&self) -> bool {
        self.discrepancies.is_empty()
    }

    pub fn merge(&mut self, other: AuditReport) {
        self.checks_run += other.checks_run;
        self.discrepancies.extend(other.discrepancies);
        self.skipped.extend(other.skipped);
    }

    /// All named conditions must agree.
    fn agree(&mut self, check: &str, conditions: &[(&str, bool)]) {
        self.checks_run += 1;
        if conditions.iter().any(|&(_, v)| v != conditions[0].1) {
            let detail = conditions
                .iter()
                .map(|(name, v)| format!("{name}={v}"))
                .collect::<Vec<_>>()
                .join(", ");
            self.fail(check, detail);
        }
    }

    fn implies(&mut self, check: &str, (pn, p): (&str, bool), (qn, q): (&str, bool)) {
        self.checks_run += 1;
        if p && !q {
            self.fail(check, format!("{pn} holds but {qn} does not"));
        }
    }

    fn expect(&mut self, check: &str, ok: bool, detail: impl FnOnce() -> String) {
        self.checks_run += 1;
        if !ok {
            self.fail(check, detail());
        }
    }

    fn fail(&mut self, check: &str, detail: String) {
        self.discrepancies.push(Discrepancy {
            check: check.to_string(),
            detail,
        });
    }

    fn skip(&mut self, check: &str, err: ClassifyError) {
        self.skipped.push(Skipped {
            check: check.to_string(),
            reason: err.to_string(),
        });
    }

    /// Unwraps an oracle result, recording oversize inputs as skipped.
    fn oracle<T>(&mut self, check: &str, r: Result<T, ClassifyError>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.skip(check, e);
                None
            }
        }
    }
}

/// Runs every two-sided characterization against `space`.
pub fn audit_equivalences(space: &Space) -> Result<AuditReport, ClassifyError> {
    if space.len() < 2 {
        return Err(ClassifyError::SingletonSpace);
    }
    let tree = build_representing_tree(space);
    let mut a = AuditReport::default();
    tree_checks(space, &tree, &mut a);
    gomory_hu_checks(space, &tree, &mut a);
    arity_checks(space, &tree, &mut a);
    level_checks(space, &tree, &mut a);
    perfect_checks(space, &tree, &mut a);
    unrooted_checks(space, &tree, &mut a);
    rigidity_checks(space, &tree, &mut a);
    tsi_checks(space, &tree, &mut a);
    Ok(a)
}

fn tree_checks(space: &Space, tree: &RootedTree, a: &mut AuditReport) {
    let diam = level_graph(space, space.diameter()).expect("diameter is a distance");
    let parts = complete_multipartite_parts(&diam);
    let mut children: Vec<BTreeSet<String>> = tree.children(tree.root()).iter().map(|&c| tree.leaf_set(c)).collect();
    children.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.first().cmp(&y.first())));
    a.expect(
        "diametrical graph is complete multipartite",
        parts.as_ref() == Some(&children),
        || format!("parts {parts:?}, root children {children:?}"),
    );

    let from_tree: BTreeSet<BTreeSet<String>> = ballean(tree).into_iter().collect();
    let from_space: BTreeSet<BTreeSet<String>> = oracle::ball_sets(space).into_iter().collect();
    a.expect("tree nodes are the balls", from_tree == from_space, || {
        format!("{} nodes, {} balls", from_tree.len(), from_space.len())
    });

    let back = tree_to_space(tree);
    let same = space.points().iter().all(|x| {
        space
            .points()
            .iter()
            .all(|y| back.dist_by_id(x, y).ok() == space.dist_by_id(x, y).ok())
    });
    a.expect("distance is the label of the lowest common ancestor", same, || {
        "tree metric differs from the input".into()
    });
}

fn gomory_hu_checks(space: &Space, tree: &RootedTree, a: &mut AuditReport) {
    let sp = space.spectrum().len();
    let n = space.len();
    a.expect("spectrum size is at most the number of points", sp <= n, || {
        format!("|Sp|={sp}, |X|={n}")
    });

    let binary = is_strictly_binary(tree);
    let injective = has_injective_internal_labels(tree);
    a.agree(
        "spaces attaining the spectrum bound",
        &[
            ("|Sp|=|X|", sp == n),
            (
                "level graphs complete bipartite",
                oracle::all_level_graphs_complete_bipartite(space),
            ),
            ("binary with distinct labels", binary && injective),
        ],
    );
    a.agree(
        "distinct internal labels",
        &[
            ("distinct labels", injective),
            (
                "level graphs complete multipartite",
                oracle::all_level_graphs_complete_multipartite(space),
            ),
            ("level graphs connected", oracle::all_level_graphs_connected(space)),
            ("distinct ball diameters", oracle::distinct_ball_diameters(space)),
            ("|Sp|=|B|-|X|+1", oracle::spectrum_ball_identity(space)),
        ],
    );
}

fn arity_checks(space: &Space, tree: &RootedTree, a: &mut AuditReport) {
    let binary = is_strictly_binary(tree);
    a.agree(
        "strictly binary trees",
        &[
            ("binary tree", binary),
            ("no equilateral triangle", oracle::no_equilateral_triangle(space)),
        ],
    );
    if let Some(h) = a.oracle("Hamiltonian cycles", oracle::hamilton_oracle_strictly_binary(space)) {
        a.agree(
            "Hamiltonian cycles",
            &[("binary tree", binary), ("two heaviest edges", h)],
        );
    }

    for n in 2..=space.len().max(3) {
        a.agree(
            &format!("strictly {n}-ary trees"),
            &[
                ("tree", is_strictly_nary(tree, n)),
                ("level graphs", oracle::level_graphs_nary_union(space, n)),
                ("equidistant balls", oracle::equidistant_partition_oracle(space, n)),
                ("ball count", oracle::ball_formula_check(space, n)),
            ],
        );
    }

    // Ball-count inequalities in integer form, Δ = largest out-degree.
    let delta = tree.max_out_degree() as i64;
    let balls = tree.len() as i64;
    let x = space.len() as i64;
    let sp = space.spectrum().len() as i64;
    let lhs = (delta - 1) * balls;
    let rhs = delta * x - 1;
    a.expect("ball count lower bound", lhs >= rhs, || format!("{lhs} < {rhs}"));
    a.agree(
        "ball count lower bound is attained",
        &[
            ("equality", lhs == rhs),
            ("strictly Δ-ary", is_strictly_nary(tree, delta as usize)),
        ],
    );
    let lhs = 2 * balls * (delta - 1);
    let rhs = sp * (delta - 1) + 2 * delta * x - delta - x;
    a.expect("ball count bound with spectrum", lhs >= rhs, || {
        format!("{lhs} < {rhs}")
    });
    a.agree(
        "ball count bound with spectrum is attained",
        &[
            ("equality", lhs == rhs),
            (
                "strictly Δ-ary with distinct labels",
                is_strictly_nary(tree, delta as usize) && has_injective_internal_labels(tree),
            ),
        ],
    );
}

fn level_checks(space: &Space, tree: &RootedTree, a: &mut AuditReport) {
    a.agree(
        "homogeneous spaces",
        &[
            ("tree", is_homogeneous(tree)),
            ("spectra and balls", oracle::homogeneous_oracle(space)),
        ],
    );
    let leaves = leaves_same_level(tree);
    let labels = labels_same_level(tree);
    a.agree(
        "leaves on one level",
        &[
            ("tree", leaves),
            ("point spectra of equal size", oracle::spec_size_oracle(space)),
        ],
    );
    a.agree(
        "labels constant on levels",
        &[
            ("tree", labels),
            ("point spectra are final segments", oracle::spec_suffix_oracle(space)),
        ],
    );
    a.agree(
        "equal point spectra",
        &[
            ("tree", leaves && labels),
            ("point spectra equal", oracle::spec_equal_oracle(space)),
        ],
    );
    if leaves {
        a.agree(
            "full-vertex level graphs",
            &[
                ("labels constant on levels", labels),
                ("level graphs cover X", oracle::full_vertex_level_graphs(space)),
            ],
        );
    }
}

fn perfect_checks(space: &Space, tree: &RootedTree, a: &mut AuditReport) {
    let arity = perfect_arity(tree);
    let graphs = oracle::graph_oracle_perfect(space);
    a.expect("perfect trees", arity == graphs, || {
        format!("tree {arity:?}, graphs {graphs:?}")
    });
    if has_injective_internal_labels(tree) {
        let single = oracle::graph_oracle_perfect_injective(space);
        a.expect("perfect trees with distinct labels", arity == single, || {
            format!("tree {arity:?}, graphs {single:?}")
        });
    }

    // Each stripped level graph splits into one complete multipartite piece per node.
    for (r, g) in oracle::stripped_level_graphs(space) {
        let pieces = decompose_level_graph(space, &r, tree).expect("r is a nonzero distance");
        let from_tree: BTreeSet<Vec<BTreeSet<String>>> = pieces.into_iter().map(|p| p.parts).collect();
        let from_graph: Option<BTreeSet<Vec<BTreeSet<String>>>> = g
            .components()
            .iter()
            .map(|c| complete_multipartite_parts(&g.induced(c)))
            .collect();
        a.expect(
            "level graph decomposition",
            from_graph.as_ref() == Some(&from_tree),
            || format!("r={r}: tree {from_tree:?}, graph {from_graph:?}"),
        );
    }
}

fn unrooted_checks(space: &Space, tree: &RootedTree, a: &mut AuditReport) {
    let structural = check_unrooted_generated(tree).holds;
    a.agree(
        "leaf child in every inner node",
        &[
            ("tree", structural),
            ("ball with a far point", oracle::leaf_point_ball_oracle(space)),
        ],
    );
    if let Some(found) = a.oracle("generated by a labeled tree", oracle::unrooted_generation_oracle(space)) {
        a.agree(
            "generated by a labeled tree",
            &[("tree", structural), ("labeled tree search", found)],
        );
    }
    if structural {
        let ok = unrooted_from_representing(tree)
            .ok()
            .and_then(|t| space_from_unrooted(&t).ok())
            .is_some_and(|s| {
                space.points().iter().all(|x| {
                    space
                        .points()
                        .iter()
                        .all(|y| s.dist_by_id(x, y).ok() == space.dist_by_id(x, y).ok())
                })
            });
        a.expect("labeled tree round trip", ok, || {
            "chain construction changed the metric".into()
        });
    }
}

fn rigidity_checks(space: &Space, tree: &RootedTree, a: &mut AuditReport) {
    let r = is_class_r(tree);
    let r_tilde = is_class_r_tilde(tree);
    let injective = has_injective_internal_labels(tree);
    let count = count_self_isometries(tree);
    a.agree(
        "as rigid as possible",
        &[("tree", r), ("two self-isometries", count == 2u32.into())],
    );
    if let Some((isos, min_fix)) = a.oracle("as rigid as possible", oracle::rigidity_oracle(space)) {
        a.agree(
            "as rigid as possible",
            &[("tree", r), ("min fixed points is |X|-2", min_fix + 2 == space.len())],
        );
        a.expect("self-isometry count", count == isos.into(), || {
            format!("{count} vs {isos}")
        });
    }
    a.implies("R inside R-tilde", ("R", r), ("R-tilde", r_tilde));
    a.implies("R-tilde inside D", ("R-tilde", r_tilde), ("distinct labels", injective));
    a.implies(
        "U inside binary with distinct labels",
        ("U", space.spectrum().len() == space.len()),
        ("binary with distinct labels", is_strictly_binary(tree) && injective),
    );
    if let Some(g) = a.oracle(
        "weak similarity generating spaces",
        oracle::weak_similarity_generating_oracle(space),
    ) {
        a.agree(
            "weak similarity generating spaces",
            &[("R-tilde", r_tilde), ("every relabeling similar", g)],
        );
    }
    if injective {
        if let Some(g) = a.oracle(
            "class T among distinct labels",
            oracle::injective_weak_similarity_oracle(space),
        ) {
            a.agree(
                "class T among distinct labels",
                &[("T", is_class_t(tree)), ("every injective relabeling similar", g)],
            );
        }
    }
}

fn tsi_checks(space: &Space, tree: &RootedTree, a: &mut AuditReport) {
    let shape = tsi_shape_guarantee(tree);
    a.implies(
        "R-tilde spaces are TSI",
        ("R-tilde", is_class_r_tilde(tree)),
        ("TSI shape", shape),
    );
    let inner = tree.internal_nodes().count();
    if inner > RELABEL_LIMIT {
        a.skip(
            "TSI",
            ClassifyError::TooLarge {
                what: "spectrum relabeling",
                size: inner,
                limit: RELABEL_LIMIT,
            },
        );
        return;
    }
    let Some(tsi) = a.oracle("TSI", oracle::tsi_oracle(space)) else {
        return;
    };
    a.implies("TSI shape guarantee", ("shape", shape), ("TSI", tsi));
    a.implies("small spaces are TSI", ("|X|<=4", space.len() <= 4), ("TSI", tsi));
    if let Ok(v) = tsi_injective(tree) {
        a.agree("TSI with distinct labels", &[("tree", v), ("relabeling search", tsi)]);
    }
}
