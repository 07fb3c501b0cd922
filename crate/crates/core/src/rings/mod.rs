//! Finite-dimensional commutative local algebras, ring maps between them and
//! freeness certificates.

mod algebra;
mod constructors;
mod local;
mod map;

use thiserror::Error;

pub use algebra::AlgebraPresentation;
pub use constructors::{extend_by_field, make_monomial_quotient, make_univariate_quotient};
pub use local::{
    nilradical, radical_and_residue, validate_algebra, AlgebraRef, LocalAlgebra, LocalCertificate,
    ResidueData,
};
pub use map::{flat_certificate, validate_ring_map, FlatCertificate, RingMap};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("malformed presentation: {0}")]
    BadShape(String),
    #[error("not commutative: e_{i}·e_{j} ≠ e_{j}·e_{i}")]
    NotCommutative { i: usize, j: usize },
    #[error("not associative at basis triple ({i}, {j}, {l})")]
    NotAssociative { i: usize, j: usize, l: usize },
    #[error("unit does not act as identity on e_{i}")]
    BadUnit { i: usize },
    #[error("not local: {0}")]
    NotLocal(String),
    #[error("localness could not be decided")]
    LocalnessUndecided,
    #[error("subspace is not an ideal")]
    NotAnIdeal,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial is reducible")]
    ReducibleFactor,
    #[error("monomial ideal has infinite colength")]
    InfiniteColength,
    #[error("residue field of the base is larger than the ground field")]
    ResidueNotBase,
    #[error("algebras are over different ground fields")]
    FieldMismatch,
    #[error("ring map does not send 1 to 1")]
    NotUnital,
    #[error("ring map is not multiplicative on (e_{i}, e_{j})")]
    NotMultiplicative { i: usize, j: usize },
    #[error("ring map does not send the maximal ideal into the maximal ideal")]
    NotLocalMap,
    #[error("target is not free over the source: {0}")]
    NotFree(String),
}
