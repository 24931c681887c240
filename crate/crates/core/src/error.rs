use alloc::string::String;

use thiserror::Error;

use crate::quiver::VertexId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate arrow `{0}`")]
    DuplicateArrow(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("arrow `{0}` references a vertex outside the quiver")]
    DanglingArrow(String),
    #[error("arrow precedence must list every arrow exactly once")]
    IncompletePrecedence,
    #[error("arrow {0} appears twice in the precedence list")]
    DuplicatePrecedence(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("tip of the zero element is undefined")]
    ZeroElement,
    #[error("relation has a term of length {0}; the ideal must lie in the square of the arrow ideal")]
    ShortTerm(usize),
    #[error("completion needs overlaps of length {needed} beyond the cap {cap} while the normal basis is still infinite")]
    CapExceeded { cap: usize, needed: usize },
    #[error("normal paths still exist at length {0}; the normal basis did not terminate within the cap")]
    NormalBasisUnbounded(usize),
    #[error("the normal basis is infinite, so the ideal is not admissible")]
    InfiniteNormalBasis,
    #[error("the arrow ideal is not nilpotent modulo the relations, so the ideal is not admissible")]
    NotNilpotent,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeredityError {
    #[error("vertex {0:?} is properly internal to a tip; the quotient presentation is not available by restriction")]
    PreconditionFailed(VertexId),
    #[error("factorial search is limited to {limit} vertices, quiver has {actual}")]
    TooLarge { limit: usize, actual: usize },
    #[error("ordering is not a permutation of the vertices")]
    InvalidOrdering,
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}
