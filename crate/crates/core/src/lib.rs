//! Finite ultrametric spaces and their representing trees.

pub mod canonical;
pub mod classify;
pub mod dot;
pub mod fixtures;
pub mod gen;
pub mod graphs;
pub mod hereditary;
pub mod io;
pub mod rational;
pub mod space;
pub mod tree;
pub mod unrooted;

pub use canonical::{
    are_isometric, are_weakly_similar, canonical_code, count_self_isometries, CanonCode, CodeMode, ScalingMap,
};
pub use classify::{
    audit_equivalences, classify, AuditReport, Certificate, ClassId, ClassReport, ClassifyError, Verdict,
};
pub use gen::{enumerate_shapes, enumerate_spaces, random_space, random_unrooted, Shape};
pub use graphs::{
    complete_multipartite_parts, decompose_level_graph, level_graph, strip_isolated, GraphError, SimpleGraph,
};
pub use hereditary::{
    hereditary_counterexample_search, hereditary_verify, is_hereditary_instance, one_point_deletions, Counterexample,
    HereditaryError,
};
pub use rational::Rational;
pub use space::{validate_space, Space, SpaceError, Spectrum};
pub use tree::{build_representing_tree, tree_to_space, NestedTree, NodeId, RootedTree, TreeError};
pub use unrooted::{
    dl_distance, generates_ultrametric, has_leaf_child_everywhere, space_from_unrooted, unrooted_from_representing,
    UnrootedError, UnrootedTree, Witnessed,
};
