//! Self-injectivity of monomial bound quiver algebras.
//!
//! A presentation `KQ/<rho>` is parsed from a small text format, its
//! projectives are built as tree modules, and four equivalent conditions
//! for self-injectivity are checked, with an exact linear-algebra oracle
//! for cross-checking.

pub mod classify;
#[cfg(feature = "cli")]
pub mod cli;
pub mod dsl;
pub mod error;
pub mod fixtures;
pub mod graph_hom;
pub mod harness;
pub mod oracle;
pub mod quiver;
pub mod tree;

pub use classify::{
    decide_self_injective, evaluate, is_nakayama_algebra, nakayama_permutation, structural_classification,
    ClassificationResult, ConditionSet, NakayamaFailure, NakayamaReport, ShapeWitness, Verdict,
};
pub use dsl::{export_dot, parse, render, Dot};
pub use error::{Error, Result};
pub use graph_hom::{
    enumerate_graph_maps, graph_map_as_matrices, hom_dim, is_socle_injective, restriction_matrix, socle_hom_basis,
    GraphMap, HomBasis, LeafPair, RegularModule, RestrictionMatrix,
};
pub use harness::{enumerate_presentations, verify_equivalences, CorpusBounds, VerificationReport};
pub use quiver::{
    path_basis, validate_presentation, AlgebraBasis, Arrow, ArrowId, MonomialPresentation, Path, Quiver,
    ValidationReport, VertexId, Violation,
};
pub use tree::{
    build_projective_tree, build_simple_tree, leaf_socle, push_down, socle_of_projective, RootedTree, SocleSummary,
    TreeArrow, TreeModule, Winding,
};
