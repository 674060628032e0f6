//! Exhaustive and random generation of spaces.
//!
//! Spaces are produced through their representing trees: an unlabeled shape
//! (every internal node with at least two children) plus an order type of
//! internal labels that strictly decreases from the root.

use std::collections::{BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::canonical::{canonical_code, CodeMode};
use crate::classify::oracle::{for_each_labeling, relabel};
use crate::rational::Rational;
use crate::space::Space;
use crate::tree::{tree_to_space, NestedTree, RootedTree};
use crate::unrooted::{decode_pruefer, UnrootedTree};

/// Unlabeled rooted tree; a node without children is a leaf.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shape {
    pub children: Vec<Shape>,
}

impl Shape {
    pub fn leaf() -> Self {
        Shape { children: Vec::new() }
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    pub fn leaves(&self) -> usize {
        if self.is_leaf() {
            1
        } else {
            self.children.iter().map(Shape::leaves).sum()
        }
    }

    pub fn internal_nodes(&self) -> usize {
        if self.is_leaf() {
            0
        } else {
            1 + self.children.iter().map(Shape::internal_nodes).sum::<usize>()
        }
    }

    pub fn height(&self) -> usize {
        self.children.iter().map(|c| c.height() + 1).max().unwrap_or(0)
    }

    /// Unlabeled canonical code, matching [`CodeMode::Unlabeled`].
    pub fn code(&self) -> String {
        if self.is_leaf() {
            return "x".into();
        }
        let mut kids: Vec<String> = self.children.iter().map(Shape::code).collect();
        kids.sort_unstable();
        format!("({})", kids.concat())
    }

    /// Nested tree with points `x1, x2, ...` in leaf order and each internal
    /// node labeled by its height.
    pub fn to_nested(&self) -> NestedTree {
        fn build(s: &Shape, next: &mut usize) -> NestedTree {
            if s.is_leaf() {
                *next += 1;
                return NestedTree::leaf(format!("x{next}"));
            }
            let children = s.children.iter().map(|c| build(c, next)).collect();
            NestedTree::internal(s.height() as i64, children)
        }
        build(self, &mut 0)
    }

    pub fn to_tree(&self) -> RootedTree {
        RootedTree::from_nested(&self.to_nested()).expect("heights decrease along every path")
    }
}

/// All shapes with `n_leaves` leaves, one per unlabeled isomorphism class.
pub fn enumerate_shapes(n_leaves: usize) -> Vec<Shape> {
    assert!(n_leaves >= 1, "a shape has at least one leaf");
    let mut memo: HashMap<usize, Vec<Shape>> = HashMap::new();
    let mut out = shapes_with(n_leaves, &mut memo);
    out.sort_by_key(Shape::code);
    out
}

fn shapes_with(n: usize, memo: &mut HashMap<usize, Vec<Shape>>) -> Vec<Shape> {
    if let Some(v) = memo.get(&n) {
        return v.clone();
    }
    let out = if n == 1 {
        vec![Shape::leaf()]
    } else {
        let mut found: Vec<Shape> = Vec::new();
        let mut seen = BTreeSet::new();
        for parts in partitions(n, n - 1) {
            // Multisets of shapes, one per part, non-decreasing within equal part sizes.
            let options: Vec<Vec<Shape>> = parts.iter().map(|&p| shapes_with(p, memo)).collect();
            let mut pick = Vec::with_capacity(parts.len());
            combine(&parts, &options, 0, 0, &mut pick, &mut |kids| {
                let s = Shape {
                    children: kids.to_vec(),
                };
                if seen.insert(s.code()) {
                    found.push(s);
                }
            });
        }
        found
    };
    memo.insert(n, out.clone());
    out
}

/// Partitions of `n` into at least two non-increasing parts, each at most `max`.
fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            if cur.len() >= 2 {
                out.push(cur.clone());
            }
            return;
        }
        for p in (1..=max.min(n)).rev() {
            cur.push(p);
            rec(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, max, &mut Vec::new(), &mut out);
    out
}

fn combine(
    parts: &[usize],
    options: &[Vec<Shape>],
    k: usize,
    min_idx: usize,
    pick: &mut Vec<Shape>,
    emit: &mut dyn FnMut(&[Shape]),
) {
    if k == parts.len() {
        emit(pick);
        return;
    }
    let start = if k > 0 && parts[k] == parts[k - 1] { min_idx } else { 0 };
    for i in start..options[k].len() {
        pick.push(options[k][i].clone());
        combine(parts, options, k + 1, i, pick, emit);
        pick.pop();
    }
}

/// Every space on `n_leaves` points up to weak similarity, realized with
/// integer labels equal to their ranks.
pub fn enumerate_spaces(n_leaves: usize) -> Vec<Space> {
    let mut out = Vec::new();
    for shape in enumerate_shapes(n_leaves) {
        out.extend(spaces_of_shape(&shape));
    }
    out
}

/// All rank labelings of `shape`, one space per weak-similarity class, with
/// points listed as `x1..xn`.
pub fn spaces_of_shape(shape: &Shape) -> Vec<Space> {
    let tree = shape.to_tree();
    let order: Vec<String> = (1..=shape.leaves()).map(|i| format!("x{i}")).collect();
    let space_of = |t: &RootedTree| tree_to_space(t).reorder(&order).expect("points are x1..xn");
    let k = shape.internal_nodes();
    if k == 0 {
        return vec![space_of(&tree)];
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for m in 1..=k as u32 {
        let values: Vec<Rational> = (1..=m).map(Rational::from).collect();
        for_each_labeling(&tree, m, true, |labels| {
            let labeled = relabel(&tree, labels, &values);
            if seen.insert(canonical_code(&labeled, CodeMode::RankLabeled)) {
                out.push(space_of(&labeled));
            }
            true
        });
    }
    out
}

fn random_shape(n: usize, rng: &mut ChaCha8Rng) -> Shape {
    if n == 1 {
        return Shape::leaf();
    }
    let k = if n == 2 { 2 } else { rng.gen_range(2..=n.min(4)) };
    // Random composition of n into k positive parts.
    let mut cuts: Vec<usize> = (1..n).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<usize> = cuts.into_iter().take(k - 1).collect();
    cuts.sort_unstable();
    let mut sizes = Vec::with_capacity(k);
    let mut prev = 0;
    for c in cuts.into_iter().chain(std::iter::once(n)) {
        sizes.push(c - prev);
        prev = c;
    }
    Shape {
        children: sizes.into_iter().map(|s| random_shape(s, rng)).collect(),
    }
}

fn random_positive(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(1..10i64), rng.gen_range(1..8i64))
}

/// A random space on `n` points; the same `(n, seed)` gives the same space.
///
/// Draws a shape, gives every internal node a rank at least one above its
/// children's, and maps ranks to a random increasing sequence of rationals.
pub fn random_space(n: usize, seed: u64) -> Space {
    assert!(n >= 1, "a space has at least one point");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shape = random_shape(n, &mut rng);

    fn rank(s: &Shape, rng: &mut ChaCha8Rng) -> (usize, NestedTree) {
        if s.is_leaf() {
            return (0, NestedTree::leaf(""));
        }
        let mut top = 0;
        let mut kids = Vec::with_capacity(s.children.len());
        for c in &s.children {
            let (r, t) = rank(c, rng);
            top = top.max(r);
            kids.push(t);
        }
        let r = top + rng.gen_range(1..=2);
        (r, NestedTree::internal(r as i64, kids))
    }
    let (top, mut nested) = rank(&shape, &mut rng);

    let mut values = vec![Rational::zero()];
    for i in 1..=top {
        let next = &values[i - 1] + &random_positive(&mut rng);
        values.push(next);
    }
    let mut next_point = 0;
    let mut stack = vec![&mut nested];
    while let Some(node) = stack.pop() {
        if node.children.is_empty() {
            next_point += 1;
            node.point = Some(format!("x{next_point}"));
        } else {
            let idx: usize = node.label.to_string().parse().expect("integer rank");
            node.label = values[idx].clone();
            stack.extend(node.children.iter_mut());
        }
    }
    let space = tree_to_space(&RootedTree::from_nested(&nested).expect("ranks increase upward"));
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    space.permute(&perm)
}

/// A random labeled free tree on `v1..vn` whose labels never vanish on both
/// ends of an edge.
pub fn random_unrooted(n: usize, seed: u64) -> UnrootedTree {
    assert!(n >= 1, "a tree has at least one vertex");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges = if n >= 2 {
        let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
        decode_pruefer(&seq, n)
    } else {
        Vec::new()
    };
    let pool: Vec<Rational> = (0..rng.gen_range(1..=4)).map(|_| random_positive(&mut rng)).collect();
    let mut labels: Vec<Rational> = (0..n)
        .map(|_| {
            if rng.gen_bool(0.25) {
                Rational::zero()
            } else {
                pool.choose(&mut rng).expect("nonempty pool").clone()
            }
        })
        .collect();
    for &(a, b) in &edges {
        if labels[a].is_zero() && labels[b].is_zero() {
            labels[b] = pool[0].clone();
        }
    }
    let name = |i: usize| format!("v{}", i + 1);
    UnrootedTree::new(
        labels.into_iter().enumerate().map(|(i, l)| (name(i), l)).collect(),
        edges.into_iter().map(|(a, b)| (name(a), name(b))).collect(),
    )
    .expect("Prüfer decoding yields a tree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::unrooted::generates_ultrametric;

    #[test]
    fn shape_counts() {
        let counts: Vec<usize> = (1..=7).map(|n| enumerate_shapes(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 12, 33, 90]);
    }

    #[test]
    fn shapes_are_distinct_and_sized() {
        let shapes = enumerate_shapes(6);
        let codes: BTreeSet<String> = shapes.iter().map(Shape::code).collect();
        assert_eq!(codes.len(), shapes.len());
        assert!(shapes.iter().all(|s| s.leaves() == 6));
        let tree = shapes[0].to_tree();
        assert_eq!(canonical_code(&tree, CodeMode::Unlabeled).0, shapes[0].code());
    }

    #[test]
    fn space_counts() {
        let counts: Vec<usize> = (1..=7).map(|n| enumerate_spaces(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 20, 90, 468]);
    }

    #[test]
    fn three_point_spaces() {
        let spaces = enumerate_spaces(3);
        let sizes: Vec<usize> = spaces.iter().map(|s| s.spectrum().len()).collect();
        assert_eq!(sizes, vec![3, 2]);
    }

    #[test]
    fn random_space_is_reproducible() {
        assert_eq!(random_space(1, 9).len(), 1);
        for seed in 0..20 {
            let a = random_space(12, seed);
            let b = random_space(12, seed);
            assert_eq!(a.matrix(), b.matrix());
            assert_eq!(a.points(), b.points());
            assert_eq!(a.len(), 12);
        }
        assert_ne!(random_space(30, 1).matrix(), random_space(30, 2).matrix());
    }

    #[test]
    fn random_unrooted_always_generates() {
        for seed in 0..200 {
            let t = random_unrooted(1 + (seed as usize % 15), seed);
            assert!(generates_ultrametric(&t).holds);
        }
        assert_eq!(random_unrooted(8, 3), random_unrooted(8, 3));
    }
}
