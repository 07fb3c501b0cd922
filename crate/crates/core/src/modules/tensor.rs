use crate::exactla::{kernel_basis, quotient_space, Field, Matrix, QuotientSpace, Subspace};
use crate::rings::RingMap;

use super::ops::restrict_scalars;
use super::presentation::{
    same_algebra, validate_module, validate_module_map, ModuleMap, ModulePresentation,
};
use super::ModuleError;

/// `A ⊗_R S` as a quotient of `A ⊗_K S`; the `K`-tensor index of `a_j ⊗ s_l`
/// is `j·dim S + l`.
#[derive(Debug, Clone)]
pub struct TensorProduct<F: Field> {
    relations: Subspace<F>,
    quotient: QuotientSpace<F>,
    module: ModulePresentation<F>,
    unit_map: ModuleMap<F>,
}

impl<F: Field> TensorProduct<F> {
    /// Span of `(ρ(e_i)a_j)⊗s_l − a_j⊗(φ(e_i)s_l)` inside `A ⊗_K S`.
    pub fn relations(&self) -> &Subspace<F> {
        &self.relations
    }
    pub fn quotient(&self) -> &QuotientSpace<F> {
        &self.quotient
    }
    /// The S-module `A ⊗_R S`.
    pub fn module(&self) -> &ModulePresentation<F> {
        &self.module
    }
    /// `a ↦ a ⊗ 1` as an R-linear map into the restriction of [`Self::module`].
    pub fn unit_map(&self) -> &ModuleMap<F> {
        &self.unit_map
    }
    /// Class of `a ⊗ s` in quotient coordinates.
    pub fn class_of(&self, a: &[F::Elem], s: &[F::Elem]) -> Vec<F::Elem> {
        self.quotient
            .project(&simple_tensor(self.module.field(), a, s))
    }
}

/// Coordinates of `a ⊗ s` in `A ⊗_K S`.
pub fn simple_tensor<F: Field>(f: &F, a: &[F::Elem], s: &[F::Elem]) -> Vec<F::Elem> {
    a.iter()
        .flat_map(|x| s.iter().map(move |y| f.mul(x, y)))
        .collect()
}

/// The relation generators of `A ⊗_R S`, one per basis triple `(i, j, l)`,
/// ordered with `l` fastest: `(ρ(e_i) ⊗ I − I ⊗ L_{φ(e_i)})` applied to `a_j ⊗ s_l`.
pub fn tensor_relation_generators<F: Field>(
    a: &ModulePresentation<F>,
    phi: &RingMap<F>,
) -> Vec<Vec<F::Elem>> {
    let s = phi.target();
    let f = a.field().clone();
    let id_a = Matrix::identity(f.clone(), a.dim());
    let id_s = Matrix::identity(f, s.dim());
    let mut gens = Vec::new();
    for (rho, img) in a.actions().iter().zip(phi.matrix().columns()) {
        let op = rho.kronecker(&id_s).sub(&id_a.kronecker(&s.left_mul(&img)));
        gens.extend(op.columns());
    }
    gens
}

pub fn tensor_up<F: Field>(
    a: &ModulePresentation<F>,
    phi: &RingMap<F>,
) -> Result<TensorProduct<F>, ModuleError> {
    if !same_algebra(a.algebra(), phi.source()) {
        return Err(ModuleError::AlgebraMismatch);
    }
    let s = phi.target();
    let f = a.field().clone();
    let ambient = a.dim() * s.dim();
    let relations = Subspace::from_spanning(f.clone(), ambient, tensor_relation_generators(a, phi));
    let quotient = quotient_space(ambient, relations.clone());
    let id_a = Matrix::identity(f.clone(), a.dim());
    let mut actions = Vec::with_capacity(s.dim());
    for l in 0..s.dim() {
        let op = id_a.kronecker(&s.left_mul(&s.basis_element(l)));
        if !quotient.preserves_kernel(&op) {
            return Err(ModuleError::NotASubmodule);
        }
        actions.push(quotient.induced(&op));
    }
    let module = validate_module(s.clone(), quotient.dim(), actions)?;
    let unit_col = Matrix::from_columns(f.clone(), s.dim(), vec![s.unit().to_vec()]);
    let unit_matrix = quotient.projection().mul(&id_a.kronecker(&unit_col));
    let unit_map = validate_module_map(a.clone(), restrict_scalars(&module, phi)?, unit_matrix)?;
    Ok(TensorProduct {
        relations,
        quotient,
        module,
        unit_map,
    })
}

/// `Hom_R(S, A)` inside `Hom_K(S, A)`; `T` is `dim A × dim S`, vectorised
/// row-major.
#[derive(Debug, Clone)]
pub struct HomFromAlgebra<F: Field> {
    carrier: Subspace<F>,
    module: ModulePresentation<F>,
    evaluation: ModuleMap<F>,
}

impl<F: Field> HomFromAlgebra<F> {
    pub fn carrier(&self) -> &Subspace<F> {
        &self.carrier
    }
    /// The S-module with `(s·T)(x) = T(sx)`.
    pub fn module(&self) -> &ModulePresentation<F> {
        &self.module
    }
    /// `T ↦ T(1)`, R-linear onto `A`.
    pub fn evaluation(&self) -> &ModuleMap<F> {
        &self.evaluation
    }
}

pub fn hom_rs<F: Field>(
    phi: &RingMap<F>,
    a: &ModulePresentation<F>,
) -> Result<HomFromAlgebra<F>, ModuleError> {
    if !same_algebra(a.algebra(), phi.source()) {
        return Err(ModuleError::AlgebraMismatch);
    }
    let s = phi.target();
    let f = a.field().clone();
    let id_a = Matrix::identity(f.clone(), a.dim());
    let id_s = Matrix::identity(f.clone(), s.dim());
    // vec(T·X) = (I ⊗ Xᵀ) vec T and vec(ρ·T) = (ρ ⊗ I) vec T
    let constraints: Vec<Matrix<F>> = a
        .actions()
        .iter()
        .zip(phi.matrix().columns())
        .map(|(rho, img)| {
            id_a.kronecker(&s.left_mul(&img).transpose())
                .sub(&rho.kronecker(&id_s))
        })
        .collect();
    let carrier = kernel_basis(&Matrix::vstack(f.clone(), a.dim() * s.dim(), &constraints));
    let actions = (0..s.dim())
        .map(|l| {
            let op = id_a.kronecker(&s.left_mul(&s.basis_element(l)).transpose());
            carrier
                .restrict_operator(&op)
                .ok_or(ModuleError::NotASubmodule)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let module = validate_module(s.clone(), carrier.dim(), actions)?;
    let unit_row = Matrix::from_rows(f, s.dim(), vec![s.unit().to_vec()]);
    let eval = id_a.kronecker(&unit_row).mul(&carrier.inclusion());
    let evaluation = validate_module_map(restrict_scalars(&module, phi)?, a.clone(), eval)?;
    Ok(HomFromAlgebra {
        carrier,
        module,
        evaluation,
    })
}

/// `Hom_R(M, N)` with `(r·T) = ρ_N(r)∘T`; `T` is `dim N × dim M`, vectorised
/// row-major, in the coordinates of the RREF basis of the equivariant maps.
pub fn hom_module<F: Field>(
    m: &ModulePresentation<F>,
    n: &ModulePresentation<F>,
) -> Result<(ModulePresentation<F>, Subspace<F>), ModuleError> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(ModuleError::AlgebraMismatch);
    }
    let f = m.field().clone();
    let id_m = Matrix::identity(f.clone(), m.dim());
    let id_n = Matrix::identity(f.clone(), n.dim());
    let constraints: Vec<Matrix<F>> = m
        .actions()
        .iter()
        .zip(n.actions())
        .map(|(rm, rn)| id_n.kronecker(&rm.transpose()).sub(&rn.kronecker(&id_m)))
        .collect();
    let carrier = kernel_basis(&Matrix::vstack(f, m.dim() * n.dim(), &constraints));
    let actions = n
        .actions()
        .iter()
        .map(|rn| {
            carrier
                .restrict_operator(&rn.kronecker(&id_m))
                .ok_or(ModuleError::NotASubmodule)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let module = validate_module(m.algebra().clone(), carrier.dim(), actions)?;
    Ok((module, carrier))
}
