use thiserror::Error;

use crate::classify::Verdict;
use crate::quiver::{ValidationReport, VertexId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("chain mismatch: arrow `{arrow}` starts at vertex {found}, expected vertex {expected}")]
    ChainMismatch {
        arrow: String,
        expected: VertexId,
        found: VertexId,
    },

    #[error("a factor candidate must have positive length")]
    ZeroLengthCandidate,

    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),

    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),

    #[error("infinite-dimensional: relation-free paths through `{witness}` can be extended forever")]
    InfiniteDimensional { witness: String },

    #[error("invalid presentation: {0}")]
    Invalid(ValidationReport),

    #[error("disconnected quiver: the algebra is not connected")]
    Disconnected,

    #[error("{line}:{column}: syntax error: expected {}, found {found}", expected.join(" or "))]
    Syntax {
        line: usize,
        column: usize,
        expected: Vec<String>,
        found: String,
    },

    #[error("{line}:{column}: {message}")]
    Semantic {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("source tree is not rooted: some vertex is unreachable from the root")]
    NotRooted,

    #[error("not a tree: {0}")]
    NotATree(String),

    #[error("representation is not bound: relation `{0}` acts nonzero")]
    NotBound(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("linear system has no solution: {0}")]
    Inconsistent(String),

    #[error("invalid corpus bounds: {0}")]
    Bounds(String),

    #[error("condition checkers disagree: {}", .0.summary())]
    Disagreement(Box<Verdict>),
}
