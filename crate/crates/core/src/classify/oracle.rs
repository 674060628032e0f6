//! Oracles that work from the distance matrix alone.
//!
//! These deliberately avoid the representing tree (except where a class is
//! defined through tree shapes, as for the relabeling oracles) so that the
//! audit can compare two independent computations.

use std::collections::{BTreeMap, BTreeSet};

use crate::canonical::{canonical_code, CodeMode};
use crate::graphs::{complete_multipartite_parts, level_graph_by_rank, strip_isolated, SimpleGraph};
use crate::rational::Rational;
use crate::space::Space;
use crate::tree::{build_representing_tree, tree_to_space, NodeId, RootedTree};
use crate::unrooted::decode_pruefer;

use super::ClassifyError;

/// Largest space accepted by the bijection and cycle searches.
pub const SEARCH_LIMIT: usize = 7;
/// Largest number of internal nodes accepted by the relabeling oracles.
pub const RELABEL_LIMIT: usize = 6;

fn too_large(what: &'static str, size: usize, limit: usize) -> ClassifyError {
    ClassifyError::TooLarge { what, size, limit }
}

/// Every closed ball `B(x, r)`, `r ∈ Sp(X)`, as a sorted index list; sorted and distinct.
pub fn space_balls(space: &Space) -> Vec<Vec<usize>> {
    let n = space.len();
    let m = space.spectrum().len() as u32;
    let mut balls = BTreeSet::new();
    for x in 0..n {
        for r in 0..m {
            balls.insert((0..n).filter(|&y| space.rank(x, y) <= r).collect::<Vec<_>>());
        }
    }
    balls.into_iter().collect()
}

fn diameter_rank(space: &Space, set: &[usize]) -> u32 {
    let mut d = 0;
    for (k, &i) in set.iter().enumerate() {
        for &j in &set[k + 1..] {
            d = d.max(space.rank(i, j));
        }
    }
    d
}

fn names(space: &Space, set: &[usize]) -> BTreeSet<String> {
    set.iter().map(|&i| space.point(i).to_string()).collect()
}

/// An equilateral triple, if any.
pub fn equilateral_triangle(space: &Space) -> Option<[String; 3]> {
    let n = space.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let r = space.rank(a, b);
                if space.rank(a, c) == r && space.rank(b, c) == r {
                    return Some([a, b, c].map(|i| space.point(i).to_string()));
                }
            }
        }
    }
    None
}

pub fn no_equilateral_triangle(space: &Space) -> bool {
    equilateral_triangle(space).is_none()
}

/// Cyclic orders of `items` with the first element fixed, each visited once up to reversal.
fn for_each_cycle(items: &[usize], mut f: impl FnMut(&[usize]) -> bool) -> bool {
    fn rec(cycle: &mut Vec<usize>, rest: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if rest.is_empty() {
            // Skip one orientation of each cycle.
            if cycle.len() > 2 && cycle[1] > cycle[cycle.len() - 1] {
                return false;
            }
            return f(cycle);
        }
        for k in 0..rest.len() {
            let x = rest.remove(k);
            cycle.push(x);
            let stop = rec(cycle, rest, f);
            cycle.pop();
            rest.insert(k, x);
            if stop {
                return true;
            }
        }
        false
    }
    let mut cycle = vec![items[0]];
    let mut rest = items[1..].to_vec();
    rec(&mut cycle, &mut rest, &mut f)
}

/// Every subset of at least three points admits a Hamiltonian cycle of the
/// weighted complete graph with exactly two edges of maximal weight.
pub fn hamilton_oracle_strictly_binary(space: &Space) -> Result<bool, ClassifyError> {
    let n = space.len();
    if n > SEARCH_LIMIT {
        return Err(too_large("Hamiltonian cycle search", n, SEARCH_LIMIT));
    }
    for mask in 0u32..(1 << n) {
        if mask.count_ones() < 3 {
            continue;
        }
        let subset: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let found = for_each_cycle(&subset, |cycle| {
            let k = cycle.len();
            let weights: Vec<u32> = (0..k).map(|i| space.rank(cycle[i], cycle[(i + 1) % k])).collect();
            let top = *weights.iter().max().expect("nonempty");
            weights.iter().filter(|&&w| w == top).count() == 2
        });
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `G'_{r,X}` for every nonzero `r ∈ Sp(X)`, in increasing order of `r`.
pub fn stripped_level_graphs(space: &Space) -> Vec<(Rational, SimpleGraph)> {
    let spectrum = space.spectrum().0;
    (1..spectrum.len())
        .map(|k| {
            let g = strip_isolated(&level_graph_by_rank(space, k as u32)).expect("every spectrum value is attained");
            (spectrum[k].clone(), g)
        })
        .collect()
}

pub fn all_level_graphs_complete_bipartite(space: &Space) -> bool {
    stripped_level_graphs(space)
        .iter()
        .all(|(_, g)| complete_multipartite_parts(g).is_some_and(|p| p.len() == 2))
}

pub fn all_level_graphs_complete_multipartite(space: &Space) -> bool {
    stripped_level_graphs(space)
        .iter()
        .all(|(_, g)| complete_multipartite_parts(g).is_some())
}

pub fn all_level_graphs_connected(space: &Space) -> bool {
    stripped_level_graphs(space).iter().all(|(_, g)| g.is_connected())
}

/// `V(G'_{r,X}) = X` for every nonzero `r`.
pub fn full_vertex_level_graphs(space: &Space) -> bool {
    stripped_level_graphs(space)
        .iter()
        .all(|(_, g)| g.vertex_count() == space.len())
}

/// Different nonsingular balls have different diameters.
pub fn distinct_ball_diameters(space: &Space) -> bool {
    let mut seen = BTreeSet::new();
    space_balls(space)
        .iter()
        .filter(|b| b.len() > 1)
        .all(|b| seen.insert(diameter_rank(space, b)))
}

/// `|Sp(X)| = |B_X| - |X| + 1`, counting balls from the matrix.
pub fn spectrum_ball_identity(space: &Space) -> bool {
    space.spectrum().len() + space.len() == space_balls(space).len() + 1
}

/// `(n - 1)|B_Y| + 1 = n|Y|` for every ball `Y`, with `B_Y` the balls inside `Y`.
pub fn ball_formula_check(space: &Space, n: usize) -> bool {
    let balls = space_balls(space);
    balls.iter().all(|y| {
        let inside = balls
            .iter()
            .filter(|b| b.iter().all(|p| y.binary_search(p).is_ok()))
            .count();
        (n - 1) * inside + 1 == n * y.len()
    })
}

/// Maximal balls strictly inside `ball`.
fn maximal_sub_balls(balls: &[Vec<usize>], ball: &[usize]) -> Vec<Vec<usize>> {
    let inside = |a: &[usize], b: &[usize]| a.len() < b.len() && a.iter().all(|p| b.binary_search(p).is_ok());
    let proper: Vec<&Vec<usize>> = balls.iter().filter(|b| inside(b, ball)).collect();
    proper
        .iter()
        .filter(|b| !proper.iter().any(|c| inside(b, c)))
        .map(|b| (*b).clone())
        .collect()
}

/// Every nonsingular ball is the union of exactly `n` pairwise equidistant disjoint balls.
pub fn equidistant_partition_oracle(space: &Space, n: usize) -> bool {
    let balls = space_balls(space);
    balls.iter().filter(|b| b.len() > 1).all(|ball| {
        let parts = maximal_sub_balls(&balls, ball);
        parts.len() == n
            && parts.iter().map(Vec::len).sum::<usize>() == ball.len()
            && equidistant(space, &parts).is_some()
    })
}

/// The common distance between points of different parts, if there is one.
pub(crate) fn equidistant(space: &Space, parts: &[Vec<usize>]) -> Option<u32> {
    let mut common = None;
    for (a, pa) in parts.iter().enumerate() {
        for pb in &parts[a + 1..] {
            for &i in pa {
                for &j in pb {
                    let r = space.rank(i, j);
                    if r == 0 || *common.get_or_insert(r) != r {
                        return None;
                    }
                }
            }
        }
    }
    common
}

/// Components of `G'_{t,X}` as separate graphs.
fn components(g: &SimpleGraph) -> Vec<SimpleGraph> {
    g.components().iter().map(|c| g.induced(c)).collect()
}

/// For every nonzero `t`, `G'_{t,X}` is a disjoint union of `p` complete
/// `n`-partite graphs, `p` being the number of balls of diameter `t`.
pub fn level_graphs_nary_union(space: &Space, n: usize) -> bool {
    let balls = space_balls(space);
    let mut per_diameter: BTreeMap<u32, usize> = BTreeMap::new();
    for b in balls.iter().filter(|b| b.len() > 1) {
        *per_diameter.entry(diameter_rank(space, b)).or_default() += 1;
    }
    stripped_level_graphs(space).iter().enumerate().all(|(k, (_, g))| {
        let comps = components(g);
        comps.len() == per_diameter.get(&(k as u32 + 1)).copied().unwrap_or(0)
            && comps
                .iter()
                .all(|c| complete_multipartite_parts(c).is_some_and(|p| p.len() == n))
    })
}

/// The `n` for which every component of every `G'_{r,X}` is complete
/// `n`-partite with equally sized parts, if such `n` exists.
pub fn graph_oracle_perfect(space: &Space) -> Option<usize> {
    let mut arity = None;
    for (_, g) in stripped_level_graphs(space) {
        for c in components(&g) {
            let parts = complete_multipartite_parts(&c)?;
            if parts.iter().any(|p| p.len() != parts[0].len()) {
                return None;
            }
            if *arity.get_or_insert(parts.len()) != parts.len() {
                return None;
            }
        }
    }
    arity
}

/// Each `G'_{r,X}` is itself complete `n`-partite with equal part sizes, for one common `n`.
pub fn graph_oracle_perfect_injective(space: &Space) -> Option<usize> {
    let mut arity = None;
    for (_, g) in stripped_level_graphs(space) {
        let parts = complete_multipartite_parts(&g)?;
        if parts.iter().any(|p| p.len() != parts[0].len()) {
            return None;
        }
        if *arity.get_or_insert(parts.len()) != parts.len() {
            return None;
        }
    }
    arity
}

/// All point spectra have the same size.
pub fn spec_size_oracle(space: &Space) -> bool {
    let first = space.point_spectrum_ranks(0).len();
    (1..space.len()).all(|i| space.point_spectrum_ranks(i).len() == first)
}

/// Each point spectrum is `{0} ∪` a final segment of `Sp(X)`.
pub fn spec_suffix_oracle(space: &Space) -> bool {
    let top = space.spectrum().len() as u32 - 1;
    (0..space.len()).all(|i| {
        let ranks = space.point_spectrum_ranks(i);
        let tail = &ranks[1..];
        tail.is_empty() || tail.iter().zip(tail[0]..).all(|(&r, k)| r == k) && *tail.last().unwrap() == top
    })
}

/// All point spectra coincide.
pub fn spec_equal_oracle(space: &Space) -> bool {
    let first = space.point_spectrum_ranks(0);
    (1..space.len()).all(|i| space.point_spectrum_ranks(i) == first)
}

/// Backtracking search for a distance-preserving bijection `a -> b` between
/// two index lists of the same space.
fn find_isometry(space: &Space, a: &[usize], b: &[usize]) -> bool {
    fn rec(space: &Space, a: &[usize], b: &[usize], image: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let k = image.len();
        if k == a.len() {
            return true;
        }
        for j in 0..b.len() {
            if used[j] {
                continue;
            }
            if (0..k).all(|i| space.rank(a[i], a[k]) == space.rank(b[image[i]], b[j])) {
                used[j] = true;
                image.push(j);
                if rec(space, a, b, image, used) {
                    return true;
                }
                image.pop();
                used[j] = false;
            }
        }
        false
    }
    a.len() == b.len() && rec(space, a, b, &mut Vec::new(), &mut vec![false; b.len()])
}

/// Equal point spectra, and any two balls of equal diameter are isometric.
pub fn homogeneous_oracle(space: &Space) -> bool {
    if !spec_equal_oracle(space) {
        return false;
    }
    let mut by_diameter: BTreeMap<u32, Vec<Vec<usize>>> = BTreeMap::new();
    for b in space_balls(space) {
        by_diameter.entry(diameter_rank(space, &b)).or_default().push(b);
    }
    by_diameter
        .values()
        .all(|group| group[1..].iter().all(|b| find_isometry(space, &group[0], b)))
}

/// Every self-isometry as a permutation of point indices.
pub fn self_isometries(space: &Space) -> Result<Vec<Vec<usize>>, ClassifyError> {
    let n = space.len();
    if n > SEARCH_LIMIT {
        return Err(too_large("isometry enumeration", n, SEARCH_LIMIT));
    }
    fn rec(space: &Space, image: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let k = image.len();
        if k == space.len() {
            out.push(image.clone());
            return;
        }
        for j in 0..space.len() {
            if !used[j] && (0..k).all(|i| space.rank(i, k) == space.rank(image[i], j)) {
                used[j] = true;
                image.push(j);
                rec(space, image, used, out);
                image.pop();
                used[j] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(space, &mut Vec::new(), &mut vec![false; n], &mut out);
    Ok(out)
}

/// `(|Iso(X)|, min |Fix(g)|)` by enumeration.
pub fn rigidity_oracle(space: &Space) -> Result<(usize, usize), ClassifyError> {
    let isos = self_isometries(space)?;
    let min_fix = isos
        .iter()
        .map(|g| g.iter().enumerate().filter(|&(i, &j)| i == j).count())
        .min()
        .unwrap_or(space.len());
    Ok((isos.len(), min_fix))
}

/// Whether some vertex-labeled tree on `X` generates `d`, by trying every
/// labeled tree (Prüfer sequences) with its largest admissible labeling.
///
/// A labeling `l` generates `d` only if `l(v) <= d(v, w)` for every edge
/// `vw`, and raising each label to `min_w d(v, w)` keeps path maxima within
/// `d`; so that maximal labeling works whenever any labeling does.
pub fn unrooted_generation_oracle(space: &Space) -> Result<bool, ClassifyError> {
    let n = space.len();
    if n > SEARCH_LIMIT {
        return Err(too_large("labeled tree enumeration", n, SEARCH_LIMIT));
    }
    if n <= 2 {
        return Ok(true);
    }
    let mut seq = vec![0usize; n - 2];
    loop {
        if tree_generates(space, &decode_pruefer(&seq, n)) {
            return Ok(true);
        }
        // Next sequence in lexicographic order.
        let mut k = seq.len();
        loop {
            if k == 0 {
                return Ok(false);
            }
            k -= 1;
            seq[k] += 1;
            if seq[k] < n {
                break;
            }
            seq[k] = 0;
        }
    }
}

fn tree_generates(space: &Space, edges: &[(usize, usize)]) -> bool {
    let n = space.len();
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let label: Vec<u32> = (0..n)
        .map(|v| adj[v].iter().map(|&w| space.rank(v, w)).min().expect("connected"))
        .collect();
    (0..n).all(|src| {
        let mut best = vec![u32::MAX; n];
        best[src] = label[src];
        let mut stack = vec![src];
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if best[w] == u32::MAX {
                    best[w] = best[u].max(label[w]);
                    stack.push(w);
                }
            }
        }
        (0..n).all(|t| t == src || best[t] == space.rank(src, t))
    })
}

/// Every nonsingular ball `B` has a point at distance `diam B` from all others in `B`.
pub fn leaf_point_ball_oracle(space: &Space) -> bool {
    space_balls(space).iter().filter(|b| b.len() > 1).all(|b| {
        let d = diameter_rank(space, b);
        b.iter().any(|&z| b.iter().all(|&t| t == z || space.rank(z, t) == d))
    })
}

/// Calls `f` with every labeling of the internal nodes (node order) by
/// values in `1..=m` that strictly decreases from parent to child; with
/// `surjective`, only labelings using every value. Stops early when `f`
/// returns `false`, and reports whether it ran to completion.
pub(crate) fn for_each_labeling(
    tree: &RootedTree,
    m: u32,
    surjective: bool,
    mut f: impl FnMut(&[u32]) -> bool,
) -> bool {
    let inner: Vec<NodeId> = tree.internal_nodes().collect();
    let pos: BTreeMap<NodeId, usize> = inner.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let parent: Vec<Option<usize>> = inner.iter().map(|&v| tree.parent(v).map(|p| pos[&p])).collect();
    fn rec(
        k: usize,
        m: u32,
        surjective: bool,
        parent: &[Option<usize>],
        labels: &mut Vec<u32>,
        f: &mut dyn FnMut(&[u32]) -> bool,
    ) -> bool {
        if k == parent.len() {
            if surjective {
                let used: BTreeSet<u32> = labels.iter().copied().collect();
                if used.len() != m as usize {
                    return true;
                }
            }
            return f(labels);
        }
        let cap = parent[k].map_or(m, |p| labels[p] - 1);
        for l in 1..=cap {
            labels.push(l);
            let go_on = rec(k + 1, m, surjective, parent, labels, f);
            labels.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
    rec(0, m, surjective, &parent, &mut Vec::with_capacity(inner.len()), &mut f)
}

/// `tree` with internal node `i` (node order) relabeled `values[labels[i] - 1]`.
pub(crate) fn relabel(tree: &RootedTree, labels: &[u32], values: &[Rational]) -> RootedTree {
    let mut nested = tree.to_nested();
    let mut it = labels.iter();
    // `to_nested` walks children in node order, so a breadth-first walk matches node ids.
    let mut queue = std::collections::VecDeque::from([&mut nested]);
    while let Some(node) = queue.pop_front() {
        if !node.children.is_empty() {
            node.label = values[*it.next().expect("one label per inner node") as usize - 1].clone();
            queue.extend(node.children.iter_mut());
        }
    }
    RootedTree::from_nested(&nested).expect("strictly decreasing labels")
}

fn inner_count(tree: &RootedTree) -> usize {
    tree.internal_nodes().count()
}

/// Every space with the same unlabeled tree and the same spectrum is isometric to `space`.
pub fn tsi_oracle(space: &Space) -> Result<bool, ClassifyError> {
    let tree = build_representing_tree(space);
    let k = inner_count(&tree);
    if k > RELABEL_LIMIT {
        return Err(too_large("spectrum relabeling", k, RELABEL_LIMIT));
    }
    let values: Vec<Rational> = space.spectrum().0[1..].to_vec();
    let own = canonical_code(&tree, CodeMode::Labeled);
    Ok(for_each_labeling(&tree, values.len() as u32, true, |labels| {
        canonical_code(&relabel(&tree, labels, &values), CodeMode::Labeled) == own
    }))
}

/// A space with the same unlabeled tree and spectrum that is not isometric to `space`.
pub fn tsi_counterexample(space: &Space) -> Result<Option<Space>, ClassifyError> {
    let tree = build_representing_tree(space);
    let k = inner_count(&tree);
    if k > RELABEL_LIMIT {
        return Err(too_large("spectrum relabeling", k, RELABEL_LIMIT));
    }
    let values: Vec<Rational> = space.spectrum().0[1..].to_vec();
    let own = canonical_code(&tree, CodeMode::Labeled);
    let mut found = None;
    for_each_labeling(&tree, values.len() as u32, true, |labels| {
        let other = relabel(&tree, labels, &values);
        if canonical_code(&other, CodeMode::Labeled) != own {
            found = Some(tree_to_space(&other));
            return false;
        }
        true
    });
    Ok(found)
}

fn rank_values(m: u32) -> Vec<Rational> {
    (1..=m).map(Rational::from).collect()
}

/// Every space whose unlabeled tree matches `space`'s is weakly similar to it.
pub fn weak_similarity_generating_oracle(space: &Space) -> Result<bool, ClassifyError> {
    let tree = build_representing_tree(space);
    let k = inner_count(&tree);
    if k > RELABEL_LIMIT {
        return Err(too_large("rank relabeling", k, RELABEL_LIMIT));
    }
    let own = canonical_code(&tree, CodeMode::RankLabeled);
    Ok((1..=k as u32).all(|m| {
        let values = rank_values(m);
        for_each_labeling(&tree, m, true, |labels| {
            canonical_code(&relabel(&tree, labels, &values), CodeMode::RankLabeled) == own
        })
    }))
}

/// Among injectively labeled spaces, every one with `space`'s unlabeled
/// tree is weakly similar to it. `space` must have injective labels.
pub fn injective_weak_similarity_oracle(space: &Space) -> Result<bool, ClassifyError> {
    let tree = build_representing_tree(space);
    let k = inner_count(&tree);
    if k > RELABEL_LIMIT {
        return Err(too_large("rank relabeling", k, RELABEL_LIMIT));
    }
    if space.spectrum().len() != k + 1 {
        return Err(ClassifyError::NotInjective);
    }
    let own = canonical_code(&tree, CodeMode::RankLabeled);
    let values = rank_values(k as u32);
    Ok(for_each_labeling(&tree, k as u32, true, |labels| {
        canonical_code(&relabel(&tree, labels, &values), CodeMode::RankLabeled) == own
    }))
}

/// Nonsingular balls as point-id sets (for reports).
pub fn ball_sets(space: &Space) -> Vec<BTreeSet<String>> {
    space_balls(space).iter().map(|b| names(space, b)).collect()
}
