//! Brute-force reference implementations shared by the integration tests.
//! Each one works straight from the distance matrix, without trees.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use ultraforest::{Rational, SimpleGraph, Space};

/// Some bijection preserves every distance.
pub fn brute_isometric(x: &Space, y: &Space) -> bool {
    x.len() == y.len() && any_map(x, y, |a, b| a == b)
}

/// Number of isometries of `x` onto itself.
pub fn brute_self_isometries(x: &Space) -> usize {
    count_maps(x, x, |a, b| a == b)
}

/// Some bijection together with a strictly increasing map between the
/// spectra carries one space onto the other.
pub fn brute_weakly_similar(x: &Space, y: &Space) -> bool {
    if x.len() != y.len() {
        return false;
    }
    let sx = x.spectrum().0;
    let sy = y.spectrum().0;
    if sx.len() != sy.len() {
        return false;
    }
    let rank = |s: &[Rational], v: &Rational| s.iter().position(|w| w == v).unwrap();
    any_map(x, y, |a, b| rank(&sx, a) == rank(&sy, b))
}

fn any_map(x: &Space, y: &Space, same: impl Fn(&Rational, &Rational) -> bool) -> bool {
    let n = x.len();
    (0..n)
        .permutations(n)
        .any(|p| (0..n).all(|i| (i + 1..n).all(|j| same(x.dist(i, j), y.dist(p[i], p[j])))))
}

fn count_maps(x: &Space, y: &Space, same: impl Fn(&Rational, &Rational) -> bool) -> usize {
    let n = x.len();
    (0..n)
        .permutations(n)
        .filter(|p| (0..n).all(|i| (i + 1..n).all(|j| same(x.dist(i, j), y.dist(p[i], p[j])))))
        .count()
}

/// Every triple satisfies the strong triangle inequality.
pub fn brute_ultrametric(m: &[Vec<Rational>]) -> bool {
    let n = m.len();
    for i in 0..n {
        if !m[i][i].is_zero() {
            return false;
        }
        for j in 0..n {
            if m[i][j] != m[j][i] || (i != j && !m[i][j].is_positive()) {
                return false;
            }
            for k in 0..n {
                if m[i][j] > m[i][k].clone().max(m[k][j].clone()) {
                    return false;
                }
            }
        }
    }
    true
}

/// All closed balls `B(c, r)` for centers and radii in the spectrum.
pub fn brute_balls(x: &Space) -> BTreeSet<BTreeSet<String>> {
    let mut out = BTreeSet::new();
    for c in 0..x.len() {
        for r in x.spectrum().0 {
            let ball: BTreeSet<String> = (0..x.len())
                .filter(|&j| x.dist(c, j) <= &r)
                .map(|j| x.point(j).to_string())
                .collect();
            out.insert(ball);
        }
    }
    out
}

/// Every set partition of `0..n`, as block lists.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn rec(i: usize, n: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..cur.len() {
            cur[b].push(i);
            rec(i + 1, n, cur, out);
            cur[b].pop();
        }
        cur.push(vec![i]);
        rec(i + 1, n, cur, out);
        cur.pop();
    }
    let mut out = Vec::new();
    rec(0, n, &mut Vec::new(), &mut out);
    out
}

/// The parts of `g` as a complete k-partite graph with k >= 2, found by
/// trying every partition of the vertex set.
pub fn brute_multipartite(g: &SimpleGraph) -> Option<BTreeSet<BTreeSet<String>>> {
    let n = g.vertex_count();
    for p in set_partitions(n) {
        if p.len() < 2 {
            continue;
        }
        let block: BTreeMap<usize, usize> = p
            .iter()
            .enumerate()
            .flat_map(|(b, vs)| vs.iter().map(move |&v| (v, b)))
            .collect();
        let fits = (0..n).all(|i| (i + 1..n).all(|j| g.has_edge_idx(i, j) == (block[&i] != block[&j])));
        if fits {
            return Some(
                p.iter()
                    .map(|vs| vs.iter().map(|&v| g.vertices()[v].clone()).collect())
                    .collect(),
            );
        }
    }
    None
}

/// Every ultrametric on `n` points with distances drawn from `1..=max`,
/// generated entry by entry.
pub fn all_integer_ultrametrics(n: usize, max: i64) -> Vec<Space> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let points: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let mut out = Vec::new();
    for values in std::iter::repeat_n(1..=max, pairs.len()).multi_cartesian_product() {
        let mut m = vec![vec![Rational::zero(); n]; n];
        for (&(i, j), &v) in pairs.iter().zip(&values) {
            m[i][j] = Rational::from(v);
            m[j][i] = Rational::from(v);
        }
        if brute_ultrametric(&m) {
            out.push(ultraforest::validate_space(&m, &points).unwrap());
        }
    }
    if pairs.is_empty() {
        out.push(ultraforest::validate_space(&[vec![Rational::zero()]], &points).unwrap());
    }
    out
}

/// Representatives of the weak similarity classes of `spaces`.
pub fn weak_similarity_classes(spaces: &[Space]) -> Vec<Space> {
    let mut reps: Vec<Space> = Vec::new();
    for s in spaces {
        if !reps.iter().any(|r| brute_weakly_similar(r, s)) {
            reps.push(s.clone());
        }
    }
    reps
}
