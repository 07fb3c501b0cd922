//! Transport of module structures along a free local map `φ: R → S` of
//! rank `m`: coordinates against the free basis `ε`, the truncations `φ_t`,
//! the isomorphisms `h: A ⊗_R S ⇄ A^m :g`, and the S-structure they induce.

mod compare;
mod transport;
mod verify;

use thiserror::Error;

use crate::modules::ModuleError;
use crate::rings::RingError;

pub use compare::{compare_power_structures, ComparisonReport, StructureDims, Witness};
pub use transport::{
    ascend_m1, coordinates, h_tilde, induced_power_structure, map_g, map_h, phi_t_map, reassemble,
    PowerStructure, StructureKind, TruncationMap,
};
pub use verify::{standard_modules, verify_instance, CheckRecord, NamedModule, VerificationReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BaseChangeError {
    #[error("φ_{t} is not bijective")]
    NotIso { t: usize },
    #[error("a tensor relation survives h̃")]
    RelationNotKilled,
    #[error("the certificate has rank {0}, not 1")]
    RankNotOne(usize),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Ring(#[from] RingError),
}
