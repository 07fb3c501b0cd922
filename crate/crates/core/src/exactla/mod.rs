//! Exact dense linear algebra over ℚ and 𝔽_p.

pub mod field;
pub mod matrix;
pub mod poly;
pub mod subspace;

pub use field::{
    is_prime, Field, FieldDescriptor, FieldError, Irreducibility, PrimeField, Rationals,
};
pub use matrix::{kernel_basis, rref, solve, LinAlgError, Matrix};
pub use subspace::{quotient_space, QuotientSpace, Subspace};
