//! Quasi-heredity of finite-dimensional quotients of path algebras.
//!
//! Ideals are described by relations in a path algebra with exact
//! coefficients. [`groebner::complete`] computes the reduced Gröbner basis,
//! whose tips present the associated monomial algebra. Quasi-heredity of a
//! monomial algebra is decided by eliminating vertices that are not properly
//! internal to the remaining tips ([`heredity::greedy_ordering`]); a successful
//! elimination for the associated monomial algebra lifts to a heredity chain of
//! the original algebra, which [`heredity::verify_chain`] certifies by exact
//! linear algebra on the structure constants.

#![no_std]

extern crate alloc;

pub mod algebra;
pub mod element;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod groebner;
pub mod heredity;
pub mod linalg;
pub mod order;
pub mod quiver;

pub use algebra::{build_fd_algebra, ideal_subspace, quotient_algebra, verify_heredity_ideal, FdAlgebra, HeredityCheck, Projectivity};
pub use element::{restrict_set, split_e, uniformize, Element, UniformElement, VertexSet};
pub use error::{GroebnerError, HeredityError, QuiverError};
pub use field::{Field, Fp, PrimeModulus, Rational};
pub use groebner::{complete, minimal_tipset, normal_basis, reduce, tip, GroebnerData, TipSet};
pub use heredity::{
    brute_force_qh, decide_monomial_qh, decide_qh, greedy_ordering, verify_chain, EliminationOrdering, HeredityChainReport, StepRecord,
    Verdict,
};
pub use order::{AdmissibleOrder, OrderKind};
pub use quiver::{Arrow, ArrowId, Path, Quiver, VertexId};
