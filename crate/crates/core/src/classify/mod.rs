//! Class membership for finite ultrametric spaces.
//!
//! [`structural`] reads each class off the representing tree, [`oracle`]
//! decides the same questions from the distance matrix, and [`audit`]
//! compares the two.

pub mod audit;
pub mod oracle;
pub mod structural;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::rational::Rational;
use crate::space::Space;
use crate::tree::{build_representing_tree, NestedTree, RootedTree};

pub use audit::{audit_equivalences, AuditReport, Discrepancy};
pub use structural::*;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("the space has a single point")]
    SingletonSpace,
    #[error("{what} is limited to {limit}, got {size}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("internal labels are not pairwise distinct")]
    NotInjective,
    #[error("a ball with one point has no partition")]
    SingularBall,
    #[error("not a ball of the space")]
    NotABall,
    #[error("unknown class `{0}`")]
    UnknownClass(String),
}

/// Evidence attached to a verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    SpectrumSize {
        points: usize,
        distances: usize,
    },
    Labels {
        labels: Vec<Rational>,
    },
    RepeatedLabel {
        label: Rational,
        first: String,
        second: String,
    },
    Arity {
        n: usize,
    },
    OutDegree {
        node: String,
        degree: usize,
        expected: usize,
    },
    DegreeMismatch {
        first: String,
        second: String,
        degrees: (usize, usize),
    },
    InnerNodeCount {
        level: usize,
        nodes: Vec<String>,
    },
    LevelMismatch {
        level: usize,
        first: String,
        second: String,
        property: String,
    },
    LeafLevels {
        first: String,
        first_level: usize,
        second: String,
        second_level: usize,
    },
    MissingLeafChild {
        node: String,
    },
    Height {
        height: usize,
    },
    Relabeling {
        tree: NestedTree,
    },
    Undecided {
        reason: String,
    },
    Note {
        detail: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub certificate: Certificate,
}

impl Verdict {
    pub fn new(holds: bool, certificate: Certificate) -> Self {
        Verdict { holds, certificate }
    }

    pub fn yes(certificate: Certificate) -> Self {
        Verdict::new(true, certificate)
    }

    pub fn no(certificate: Certificate) -> Self {
        Verdict::new(false, certificate)
    }
}

/// The closed catalog of classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassId {
    /// `|Sp(X)| = |X|`.
    U,
    /// Distinct internal labels.
    D,
    StrictlyBinary,
    StrictlyNary(usize),
    PerfectStrictlyNary,
    /// Strictly binary, one internal node per level.
    R,
    /// One internal node per level.
    RTilde,
    T,
    Tsi,
    Homogeneous,
    LeavesSameLevel,
    LabelsSameLevel,
    BallPreserving,
    UnrootedGenerated,
}

impl ClassId {
    pub const CATALOG: [ClassId; 14] = [
        ClassId::U,
        ClassId::D,
        ClassId::StrictlyBinary,
        ClassId::R,
        ClassId::RTilde,
        ClassId::BallPreserving,
        ClassId::LabelsSameLevel,
        ClassId::StrictlyNary(3),
        ClassId::T,
        ClassId::Tsi,
        ClassId::Homogeneous,
        ClassId::LeavesSameLevel,
        ClassId::PerfectStrictlyNary,
        ClassId::UnrootedGenerated,
    ];

    /// Whether the class is published as closed under subspaces.
    pub fn claimed_hereditary(self) -> bool {
        matches!(
            self,
            ClassId::U
                | ClassId::D
                | ClassId::StrictlyBinary
                | ClassId::R
                | ClassId::RTilde
                | ClassId::BallPreserving
                | ClassId::LabelsSameLevel
        )
    }

    /// Membership of a space with at least two points.
    pub fn contains(self, space: &Space) -> Result<bool, ClassifyError> {
        if space.len() < 2 {
            return Err(ClassifyError::SingletonSpace);
        }
        let tree = build_representing_tree(space);
        self.contains_with_tree(space, &tree)
    }

    pub(crate) fn contains_with_tree(self, space: &Space, tree: &RootedTree) -> Result<bool, ClassifyError> {
        Ok(match self {
            ClassId::U => is_class_u(space)?,
            ClassId::D => has_injective_internal_labels(tree),
            ClassId::StrictlyBinary => is_strictly_binary(tree),
            ClassId::StrictlyNary(n) => is_strictly_nary(tree, n),
            ClassId::PerfectStrictlyNary => perfect_arity(tree).is_some(),
            ClassId::R => is_class_r(tree),
            ClassId::RTilde => is_class_r_tilde(tree),
            ClassId::T => is_class_t(tree),
            ClassId::Tsi => return tsi_membership(space, tree).map(|v| v.holds),
            ClassId::Homogeneous => is_homogeneous(tree),
            ClassId::LeavesSameLevel => leaves_same_level(tree),
            ClassId::LabelsSameLevel => labels_same_level(tree),
            ClassId::BallPreserving => is_ball_preserving_class(tree),
            ClassId::UnrootedGenerated => check_unrooted_generated(tree).holds,
        })
    }

    fn check(self, space: &Space, tree: &RootedTree) -> Result<Verdict, ClassifyError> {
        Ok(match self {
            ClassId::U => check_class_u(space)?,
            ClassId::D => check_injective_labels(tree),
            ClassId::StrictlyBinary => check_strictly_binary(tree),
            ClassId::StrictlyNary(n) => check_strictly_nary(tree, n),
            ClassId::PerfectStrictlyNary => check_perfect(tree),
            ClassId::R => check_r(tree),
            ClassId::RTilde => check_r_tilde(tree),
            ClassId::T => check_class_t(tree),
            ClassId::Tsi => tsi_membership(space, tree)?,
            ClassId::Homogeneous => check_homogeneous(tree),
            ClassId::LeavesSameLevel => check_leaves_same_level(tree),
            ClassId::LabelsSameLevel => check_labels_same_level(tree),
            ClassId::BallPreserving => check_ball_preserving(tree),
            ClassId::UnrootedGenerated => check_unrooted_generated(tree),
        })
    }
}

/// TSI membership: the injective-label criterion when it applies, then the
/// shape guarantee, then the relabeling oracle.
fn tsi_membership(space: &Space, tree: &RootedTree) -> Result<Verdict, ClassifyError> {
    if let Ok(v) = check_tsi_injective(tree) {
        return Ok(v);
    }
    if tsi_shape_guarantee(tree) {
        return Ok(Verdict::yes(Certificate::Note {
            detail: "shape forces isometry".into(),
        }));
    }
    match oracle::tsi_counterexample(space)? {
        Some(other) => Ok(Verdict::no(Certificate::Relabeling {
            tree: build_representing_tree(&other).to_nested(),
        })),
        None => Ok(Verdict::yes(Certificate::Note {
            detail: "every relabeling with this spectrum is isometric".into(),
        })),
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassId::U => f.write_str("U"),
            ClassId::D => f.write_str("D"),
            ClassId::StrictlyBinary => f.write_str("strictly-binary"),
            ClassId::StrictlyNary(n) => write!(f, "strictly-{n}-ary"),
            ClassId::PerfectStrictlyNary => f.write_str("perfect-strictly-n-ary"),
            ClassId::R => f.write_str("R"),
            ClassId::RTilde => f.write_str("R-tilde"),
            ClassId::T => f.write_str("T"),
            ClassId::Tsi => f.write_str("TSI"),
            ClassId::Homogeneous => f.write_str("homogeneous"),
            ClassId::LeavesSameLevel => f.write_str("leaves-same-level"),
            ClassId::LabelsSameLevel => f.write_str("labels-same-level"),
            ClassId::BallPreserving => f.write_str("ball-preserving"),
            ClassId::UnrootedGenerated => f.write_str("unrooted-generated"),
        }
    }
}

impl FromStr for ClassId {
    type Err = ClassifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        let id = match key.as_str() {
            "u" => ClassId::U,
            "d" | "injective-labels" => ClassId::D,
            "strictly-binary" | "binary" => ClassId::StrictlyBinary,
            "strictly-n-ary" => ClassId::StrictlyNary(3),
            "perfect-strictly-n-ary" | "perfect" => ClassId::PerfectStrictlyNary,
            "r" | "rigid" => ClassId::R,
            "r-tilde" | "rtilde" => ClassId::RTilde,
            "t" => ClassId::T,
            "tsi" => ClassId::Tsi,
            "homogeneous" => ClassId::Homogeneous,
            "leaves-same-level" => ClassId::LeavesSameLevel,
            "labels-same-level" => ClassId::LabelsSameLevel,
            "ball-preserving" => ClassId::BallPreserving,
            "unrooted-generated" | "unrooted" => ClassId::UnrootedGenerated,
            other => {
                let n = other
                    .strip_prefix("strictly-")
                    .and_then(|r| r.strip_suffix("-ary"))
                    .and_then(|n| n.parse::<usize>().ok())
                    .filter(|&n| n >= 2)
                    .ok_or_else(|| ClassifyError::UnknownClass(s.to_string()))?;
                if n == 2 {
                    ClassId::StrictlyBinary
                } else {
                    ClassId::StrictlyNary(n)
                }
            }
        };
        Ok(id)
    }
}

/// One line of a [`ClassReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassEntry {
    pub class: String,
    /// `None` when the question is too large to settle.
    pub verdict: Option<bool>,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub points: usize,
    pub entries: Vec<ClassEntry>,
}

impl ClassReport {
    pub fn get(&self, class: &str) -> Option<&ClassEntry> {
        self.entries.iter().find(|e| e.class == class)
    }
}

/// Runs every predicate of the catalog; `strictly-n-ary` reports the common
/// out-degree when there is one, and a full-vertex level-graph line is added.
pub fn classify(space: &Space) -> Result<ClassReport, ClassifyError> {
    if space.len() < 2 {
        return Err(ClassifyError::SingletonSpace);
    }
    let tree = build_representing_tree(space);
    let mut entries = Vec::with_capacity(ClassId::CATALOG.len() + 1);
    for class in ClassId::CATALOG {
        let (class_name, result) = match class {
            ClassId::StrictlyNary(_) => {
                let verdict = match strictly_nary_degree(&tree) {
                    Some(n) => Verdict::yes(Certificate::Arity { n }),
                    None => check_perfect(&tree),
                };
                ("strictly-n-ary".to_string(), Ok(verdict))
            }
            _ => (class.to_string(), class.check(space, &tree)),
        };
        let entry = match result {
            Ok(v) => ClassEntry {
                class: class_name,
                verdict: Some(v.holds),
                certificate: v.certificate,
            },
            Err(e @ ClassifyError::TooLarge { .. }) => ClassEntry {
                class: class_name,
                verdict: None,
                certificate: Certificate::Undecided { reason: e.to_string() },
            },
            Err(e) => return Err(e),
        };
        entries.push(entry);
    }
    let full = oracle::full_vertex_level_graphs(space);
    entries.push(ClassEntry {
        class: "full-vertex-level-graphs".into(),
        verdict: Some(full),
        certificate: Certificate::Note {
            detail: if full {
                "every nonzero level graph covers X".into()
            } else {
                "some nonzero level graph misses a point".into()
            },
        },
    });
    Ok(ClassReport {
        points: space.len(),
        entries,
    })
}

/// Children balls of `ball`, checked to be pairwise equidistant at a common
/// positive distance and to cover it; `None` only if that check fails.
pub fn equidistant_partition(
    space: &Space,
    ball: &BTreeSet<String>,
) -> Result<Option<Vec<BTreeSet<String>>>, ClassifyError> {
    if ball.len() < 2 {
        return Err(ClassifyError::SingularBall);
    }
    let tree = build_representing_tree(space);
    let node = tree
        .internal_nodes()
        .find(|&v| tree.leaf_set(v) == *ball)
        .ok_or(ClassifyError::NotABall)?;
    let parts: Vec<BTreeSet<String>> = tree.children(node).iter().map(|&c| tree.leaf_set(c)).collect();
    let idx: Vec<Vec<usize>> = parts
        .iter()
        .map(|p| {
            p.iter()
                .map(|id| space.index_of(id).expect("point of the space"))
                .collect()
        })
        .collect();
    let covered: usize = parts.iter().map(BTreeSet::len).sum();
    Ok((covered == ball.len() && oracle::equidistant(space, &idx).is_some()).then_some(parts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn set(v: &[&str]) -> BTreeSet<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn class_ids_round_trip() {
        for c in ClassId::CATALOG {
            assert_eq!(c.to_string().parse::<ClassId>().unwrap(), c);
        }
        assert_eq!("STRICTLY-5-ARY".parse::<ClassId>().unwrap(), ClassId::StrictlyNary(5));
        assert_eq!("strictly-2-ary".parse::<ClassId>().unwrap(), ClassId::StrictlyBinary);
        assert!("strictly-1-ary".parse::<ClassId>().is_err());
        assert!("nope".parse::<ClassId>().is_err());
        assert_eq!(ClassId::CATALOG.iter().filter(|c| c.claimed_hereditary()).count(), 7);
    }

    #[test]
    fn equidistant_partition_examples() {
        let iso = fixtures::isosceles();
        assert_eq!(
            equidistant_partition(&iso, &set(&["a", "b", "c"])).unwrap().unwrap(),
            vec![set(&["a", "b"]), set(&["c"])]
        );
        assert_eq!(
            equidistant_partition(&iso, &set(&["a", "b"])).unwrap().unwrap(),
            vec![set(&["a"]), set(&["b"])]
        );
        assert_eq!(
            equidistant_partition(&iso, &set(&["a"])).unwrap_err(),
            ClassifyError::SingularBall
        );
        assert_eq!(
            equidistant_partition(&iso, &set(&["a", "c"])).unwrap_err(),
            ClassifyError::NotABall
        );
    }

    #[test]
    fn report_for_isosceles() {
        let r = classify(&fixtures::isosceles()).unwrap();
        let v = |c: &str| r.get(c).unwrap().verdict;
        assert_eq!(v("U"), Some(true));
        assert_eq!(v("R"), Some(true));
        assert_eq!(v("homogeneous"), Some(false));
        assert_eq!(v("TSI"), Some(true));
        assert_eq!(v("unrooted-generated"), Some(true));
        assert_eq!(v("full-vertex-level-graphs"), Some(false));
        assert_eq!(r.entries.len(), 15);
    }

    #[test]
    fn tsi_membership_uses_relabeling_for_repeated_labels() {
        // Two inner children sharing a label; the shape alone settles it.
        let s = fixtures::two_inner_children(3, (1, 2), (1, 2));
        assert!(ClassId::Tsi.contains(&s).unwrap());
        // Seven inner nodes with repeated labels: too many to relabel.
        let r = classify(&fixtures::perfect_binary_eight()).unwrap();
        assert_eq!(r.get("TSI").unwrap().verdict, None);
    }

    #[test]
    fn singleton_is_rejected() {
        let s = Space::from_integer_matrix(&["p"], &[&[0]]).unwrap();
        assert_eq!(classify(&s).unwrap_err(), ClassifyError::SingletonSpace);
        assert_eq!(ClassId::D.contains(&s).unwrap_err(), ClassifyError::SingletonSpace);
    }
}
