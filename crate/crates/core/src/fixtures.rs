//! Small named spaces and trees used in tests, docs and the CLI.

use crate::rational::Rational;
use crate::space::Space;
use crate::tree::{tree_to_space, NestedTree, RootedTree};
use crate::unrooted::UnrootedTree;

fn leaves(names: &[&str]) -> Vec<NestedTree> {
    names.iter().map(|n| NestedTree::leaf(*n)).collect()
}

fn space_of(nested: &NestedTree) -> Space {
    tree_to_space(&RootedTree::from_nested(nested).expect("fixture tree is valid"))
}

/// `{a, b, c}` with `d(a,b) = 1` and `d(a,c) = d(b,c) = 2`.
pub fn isosceles() -> Space {
    Space::from_integer_matrix(&["a", "b", "c"], &[&[0, 1, 2], &[1, 0, 2], &[2, 2, 0]]).expect("valid")
}

/// Three points at mutual distance `side`.
pub fn equilateral(side: i64) -> Space {
    Space::from_integer_matrix(
        &["a", "b", "c"],
        &[&[0, side, side], &[side, 0, side], &[side, side, 0]],
    )
    .expect("valid")
}

pub fn two_point(d: i64) -> Space {
    Space::from_integer_matrix(&["a", "b"], &[&[0, d], &[d, 0]]).expect("valid")
}

/// Two cherries joined at the root: labels `(2; 1, 1)`.
pub fn perfect_binary_four() -> Space {
    space_of(&NestedTree::internal(
        2,
        vec![
            NestedTree::internal(1, leaves(&["a", "b"])),
            NestedTree::internal(1, leaves(&["c", "d"])),
        ],
    ))
}

/// Perfect strictly binary tree of height three, labels `3, 2, 1` by level.
pub fn perfect_binary_eight() -> Space {
    space_of(&perfect_nary_tree(2, 3))
}

/// Perfect strictly `n`-ary tree of the given height; level `k` is labeled `height - k`.
pub fn perfect_nary_tree(n: usize, height: usize) -> NestedTree {
    fn build(n: usize, depth: usize, height: usize, next: &mut usize) -> NestedTree {
        if depth == height {
            *next += 1;
            return NestedTree::leaf(format!("x{next}"));
        }
        let children = (0..n).map(|_| build(n, depth + 1, height, next)).collect();
        NestedTree::internal(Rational::from((height - depth) as i64), children)
    }
    build(n, 0, height, &mut 0)
}

/// Homogeneous tree: root with 4 children, each with 2 children, each with 3 leaves.
pub fn homogeneous_tree(l0: i64, l1: i64, l2: i64) -> NestedTree {
    let mut next = 0;
    let mut leaf = || {
        next += 1;
        NestedTree::leaf(format!("x{next}"))
    };
    let level1 = (0..4)
        .map(|_| {
            let level2 = (0..2)
                .map(|_| NestedTree::internal(l2, (0..3).map(|_| leaf()).collect()))
                .collect();
            NestedTree::internal(l1, level2)
        })
        .collect();
    NestedTree::internal(l0, level1)
}

/// Root labeled `root` with two inner children holding `left` and `right` leaves.
pub fn two_inner_children(root: i64, left: (i64, usize), right: (i64, usize)) -> Space {
    let mut next = 0;
    let mut block = |label: i64, size: usize| {
        let kids = (0..size)
            .map(|_| {
                next += 1;
                NestedTree::leaf(format!("x{next}"))
            })
            .collect();
        NestedTree::internal(label, kids)
    };
    let l = block(left.0, left.1);
    let r = block(right.0, right.1);
    space_of(&NestedTree::internal(root, vec![l, r]))
}

/// Root with one leaf and two cherries: `root(2) -> [x, u(1) -> [a, b], w(1) -> [c, d]]`.
pub fn leaf_and_two_cherries() -> Space {
    space_of(&NestedTree::internal(
        2,
        vec![
            NestedTree::leaf("x"),
            NestedTree::internal(1, leaves(&["a", "b"])),
            NestedTree::internal(1, leaves(&["c", "d"])),
        ],
    ))
}

/// Sixteen-point tree with every inner node owning at least one leaf child.
///
/// `r(4) -> [s1(3), x1, x2, s2(2)]`, `s1 -> [t11, x3, t12, x4, t13]`,
/// `s2 -> [x5, t21, x6, x7]`, and the `t` nodes (label 1) hold the remaining points.
pub fn sixteen_point_tree() -> NestedTree {
    let t = |names: &[&str]| NestedTree::internal(1, leaves(names));
    let s1 = NestedTree::internal(
        3,
        vec![
            t(&["x8", "x9"]),
            NestedTree::leaf("x3"),
            t(&["x10", "x11"]),
            NestedTree::leaf("x4"),
            t(&["x12", "x13"]),
        ],
    );
    let s2 = NestedTree::internal(
        2,
        vec![
            NestedTree::leaf("x5"),
            t(&["x14", "x15", "x16"]),
            NestedTree::leaf("x6"),
            NestedTree::leaf("x7"),
        ],
    );
    NestedTree::internal(4, vec![s1, NestedTree::leaf("x1"), NestedTree::leaf("x2"), s2])
}

/// [`sixteen_point_tree`] as a space with points ordered `x1..x16`.
pub fn sixteen_point_space() -> Space {
    let s = space_of(&sixteen_point_tree());
    let perm: Vec<usize> = (1..=16)
        .map(|i| s.index_of(&format!("x{i}")).expect("all points present"))
        .collect();
    s.permute(&perm)
}

/// The labeled free tree that generates [`sixteen_point_space`] by path maxima.
pub fn sixteen_point_unrooted() -> UnrootedTree {
    let label = |i: usize| -> i64 {
        match i {
            1 | 2 => 4,
            3 | 4 => 3,
            5..=7 => 2,
            _ => 1,
        }
    };
    let vertices = (1..=16).map(|i| (format!("x{i}"), Rational::from(label(i)))).collect();
    let edges = [
        (1, 2),
        (2, 3),
        (3, 4),
        (4, 8),
        (8, 9),
        (4, 10),
        (10, 11),
        (4, 12),
        (12, 13),
        (2, 5),
        (5, 6),
        (6, 7),
        (7, 14),
        (14, 15),
        (15, 16),
    ]
    .iter()
    .map(|&(a, b)| (format!("x{a}"), format!("x{b}")))
    .collect();
    UnrootedTree::new(vertices, edges).expect("valid free tree")
}
