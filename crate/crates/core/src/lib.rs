//! Exact computations with finite-length modules over finite-dimensional
//! commutative local algebras, and the transport of module structures along
//! flat local maps `φ: R → S`.
//!
//! Everything is generic over the ground field through [`exactla::Field`];
//! the aliases below fix it to ℚ or 𝔽_p.

pub mod basechange;
pub mod exactla;
pub mod modules;
pub mod rings;

pub use exactla::{Field, FieldDescriptor, Matrix, PrimeField, Rationals, Subspace};

pub type QMatrix = exactla::Matrix<Rationals>;
pub type FpMatrix = exactla::Matrix<PrimeField>;
pub type QAlgebra = rings::AlgebraRef<Rationals>;
pub type FpAlgebra = rings::AlgebraRef<PrimeField>;
pub type QRingMap = rings::RingMap<Rationals>;
pub type FpRingMap = rings::RingMap<PrimeField>;
pub type QModule = modules::ModulePresentation<Rationals>;
pub type FpModule = modules::ModulePresentation<PrimeField>;
