//! Finite-dimensional modules over local algebras and the standard functors
//! on them.

mod ops;
mod presentation;
mod resolution;
mod tensor;

use thiserror::Error;

pub use ops::{
    annihilator, attached_primes, colon_submodule, composition_series_length, double_dual_map,
    length, matlis_dual, melkersson_criterion, random_module, restrict_scalars, torsion_index,
};
pub use presentation::{validate_module, validate_module_map, ModuleMap, ModulePresentation};
pub use resolution::{coboundary, ext_dim, minimal_free_resolution, Resolution, DEFAULT_DEPTH};
pub use tensor::{
    hom_module, hom_rs, simple_tensor, tensor_relation_generators, tensor_up, HomFromAlgebra,
    TensorProduct,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("malformed module data: {0}")]
    BadShape(String),
    #[error("the unit does not act as the identity")]
    UnitNotIdentity,
    #[error("action violates ρ(e_{i})ρ(e_{j}) = ρ(e_{i}e_{j})")]
    NotAModule { i: usize, j: usize },
    #[error("modules are over different algebras")]
    AlgebraMismatch,
    #[error("map does not commute with the action of e_{i}")]
    NotEquivariant { i: usize },
    #[error("subspace is not an ideal")]
    NotAnIdeal,
    #[error("subspace is not a submodule")]
    NotASubmodule,
    #[error("module is not torsion for the ideal")]
    NotTorsion,
    #[error("Ext^{requested} requested but resolutions stop at depth {depth}")]
    DepthExceeded { requested: usize, depth: usize },
}
