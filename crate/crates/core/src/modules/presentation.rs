use std::sync::Arc;

use crate::exactla::{quotient_space, Field, Matrix, QuotientSpace, Subspace};
use crate::rings::AlgebraRef;

use super::ModuleError;

/// A finite-dimensional module over a local algebra, given by one action
/// matrix per algebra basis element.
///
/// Invariants: `act(unit) = I` and `ρ(e_i)ρ(e_j) = Σ_k c_ijk ρ(e_k)`.
#[derive(Debug, Clone)]
pub struct ModulePresentation<F: Field> {
    algebra: AlgebraRef<F>,
    dim: usize,
    actions: Vec<Matrix<F>>,
}

impl<F: Field> PartialEq for ModulePresentation<F> {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.algebra, &other.algebra) && self.actions == other.actions
    }
}

pub(crate) fn same_algebra<F: Field>(a: &AlgebraRef<F>, b: &AlgebraRef<F>) -> bool {
    Arc::ptr_eq(a, b) || a.same_algebra(b)
}

pub fn validate_module<F: Field>(
    algebra: AlgebraRef<F>,
    dim: usize,
    actions: Vec<Matrix<F>>,
) -> Result<ModulePresentation<F>, ModuleError> {
    if actions.len() != algebra.dim() {
        return Err(ModuleError::BadShape(format!(
            "expected {} action matrices, found {}",
            algebra.dim(),
            actions.len()
        )));
    }
    if let Some(k) = actions
        .iter()
        .position(|m| m.rows() != dim || m.cols() != dim)
    {
        return Err(ModuleError::BadShape(format!(
            "action {k} is not {dim}x{dim}"
        )));
    }
    let module = ModulePresentation {
        algebra,
        dim,
        actions,
    };
    if module.act(module.algebra.unit()) != Matrix::identity(module.field().clone(), dim) {
        return Err(ModuleError::UnitNotIdentity);
    }
    for i in 0..module.algebra.dim() {
        for j in 0..module.algebra.dim() {
            let lhs = module.actions[i].mul(&module.actions[j]);
            let rhs = module.act(module.algebra.presentation().product_of_basis(i, j));
            if lhs != rhs {
                return Err(ModuleError::NotAModule { i, j });
            }
        }
    }
    Ok(module)
}

impl<F: Field> ModulePresentation<F> {
    /// The algebra acting on itself by left multiplication.
    pub fn regular(algebra: &AlgebraRef<F>) -> Self {
        let actions = (0..algebra.dim())
            .map(|i| algebra.left_mul(&algebra.basis_element(i)))
            .collect();
        ModulePresentation {
            algebra: algebra.clone(),
            dim: algebra.dim(),
            actions,
        }
    }

    /// `R^rank`, blocks of `dim R` coordinates.
    pub fn free(algebra: &AlgebraRef<F>, rank: usize) -> Self {
        ModulePresentation::regular(algebra).power(rank)
    }

    pub fn zero(algebra: &AlgebraRef<F>) -> Self {
        let f = algebra.field().clone();
        let actions = (0..algebra.dim())
            .map(|_| Matrix::zeros(f.clone(), 0, 0))
            .collect();
        ModulePresentation {
            algebra: algebra.clone(),
            dim: 0,
            actions,
        }
    }

    /// `R/I` for an ideal `I`.
    pub fn cyclic(algebra: &AlgebraRef<F>, ideal: &Subspace<F>) -> Result<Self, ModuleError> {
        if !algebra.is_ideal(ideal) {
            return Err(ModuleError::NotAnIdeal);
        }
        Ok(ModulePresentation::regular(algebra).quotient(ideal)?.0)
    }

    /// The residue field `R/m`.
    pub fn residue_field(algebra: &AlgebraRef<F>) -> Self {
        ModulePresentation::cyclic(algebra, algebra.maximal_ideal())
            .expect("maximal ideal is an ideal")
    }

    pub fn algebra(&self) -> &AlgebraRef<F> {
        &self.algebra
    }
    pub fn field(&self) -> &F {
        self.algebra.field()
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }
    pub fn actions(&self) -> &[Matrix<F>] {
        &self.actions
    }

    /// `ρ(r)` for an algebra element in basis coordinates.
    pub fn act(&self, r: &[F::Elem]) -> Matrix<F> {
        let f = self.field();
        let mut out = Matrix::zeros(f.clone(), self.dim, self.dim);
        for (c, m) in r.iter().zip(&self.actions) {
            if !f.is_zero(c) {
                out.add_scaled(c, m);
            }
        }
        out
    }

    pub fn act_on(&self, r: &[F::Elem], v: &[F::Elem]) -> Vec<F::Elem> {
        self.act(r).apply(v)
    }

    pub fn direct_sum(&self, other: &ModulePresentation<F>) -> Result<Self, ModuleError> {
        if !same_algebra(&self.algebra, &other.algebra) {
            return Err(ModuleError::AlgebraMismatch);
        }
        let f = self.field().clone();
        let actions = self
            .actions
            .iter()
            .zip(&other.actions)
            .map(|(a, b)| Matrix::block_diagonal(f.clone(), &[a.clone(), b.clone()]))
            .collect();
        Ok(ModulePresentation {
            algebra: self.algebra.clone(),
            dim: self.dim + other.dim,
            actions,
        })
    }

    /// `M^n` with componentwise action.
    pub fn power(&self, n: usize) -> Self {
        let f = self.field().clone();
        let actions = self
            .actions
            .iter()
            .map(|a| Matrix::block_diagonal(f.clone(), &vec![a.clone(); n]))
            .collect();
        ModulePresentation {
            algebra: self.algebra.clone(),
            dim: self.dim * n,
            actions,
        }
    }

    /// The submodule `Σ R·g`, which is the K-span of all `e_i·g`.
    pub fn submodule_generated(&self, gens: &[Vec<F::Elem>]) -> Subspace<F> {
        let vs = gens
            .iter()
            .flat_map(|g| self.actions.iter().map(move |a| a.apply(g)));
        Subspace::from_spanning(self.field().clone(), self.dim, vs.collect::<Vec<_>>())
    }

    pub fn is_submodule(&self, u: &Subspace<F>) -> bool {
        u.ambient_dim() == self.dim
            && u.vectors()
                .iter()
                .all(|v| self.actions.iter().all(|a| u.contains(&a.apply(v))))
    }

    /// `m·M`
    pub fn maximal_ideal_times(&self) -> Subspace<F> {
        self.ideal_times(self.algebra.maximal_ideal())
    }

    /// `I·M` for a subspace `I` of the algebra.
    pub fn ideal_times(&self, ideal: &Subspace<F>) -> Subspace<F> {
        let mut vs = Vec::new();
        for r in ideal.vectors() {
            let a = self.act(&r);
            for j in 0..self.dim {
                vs.push(a.column(j));
            }
        }
        Subspace::from_spanning(self.field().clone(), self.dim, vs)
    }

    /// The submodule `U` as a module in the coordinates of its RREF basis.
    pub fn submodule(&self, u: &Subspace<F>) -> Result<Self, ModuleError> {
        if u.ambient_dim() != self.dim {
            return Err(ModuleError::BadShape(
                "subspace of the wrong ambient space".into(),
            ));
        }
        let actions = self
            .actions
            .iter()
            .map(|a| u.restrict_operator(a))
            .collect::<Option<Vec<_>>>()
            .ok_or(ModuleError::NotASubmodule)?;
        Ok(ModulePresentation {
            algebra: self.algebra.clone(),
            dim: u.dim(),
            actions,
        })
    }

    /// `M/U` and the projection data.
    pub fn quotient(&self, u: &Subspace<F>) -> Result<(Self, QuotientSpace<F>), ModuleError> {
        if !self.is_submodule(u) {
            return Err(ModuleError::NotASubmodule);
        }
        let q = quotient_space(self.dim, u.clone());
        let actions = self.actions.iter().map(|a| q.induced(a)).collect();
        let module = ModulePresentation {
            algebra: self.algebra.clone(),
            dim: q.dim(),
            actions,
        };
        Ok((module, q))
    }

    /// Conjugates every action by `change` (columns are the new basis).
    pub fn change_basis(&self, change: &Matrix<F>) -> Option<Self> {
        let inv = change.inverse()?;
        let actions = self
            .actions
            .iter()
            .map(|a| inv.mul(a).mul(change))
            .collect();
        Some(ModulePresentation {
            algebra: self.algebra.clone(),
            dim: self.dim,
            actions,
        })
    }

    /// Minimal generators of the submodule `U`: greedy over the RREF basis of
    /// `U`, keeping a vector when it leaves `m·U + Σ R·(kept)`.
    pub fn minimal_generators(&self, u: &Subspace<F>) -> Vec<Vec<F::Elem>> {
        let f = self.field().clone();
        let mut span = self.ideal_times_subspace(self.algebra.maximal_ideal(), u);
        let mut chosen = Vec::new();
        for v in u.vectors() {
            if span.dim() == u.dim() {
                break;
            }
            if span.contains(&v) {
                continue;
            }
            let orbit: Vec<_> = self.actions.iter().map(|a| a.apply(&v)).collect();
            span = span.sum(&Subspace::from_spanning(f.clone(), self.dim, orbit));
            chosen.push(v);
        }
        chosen
    }

    /// `I·U` for a subspace `I` of the algebra and a submodule `U`.
    pub fn ideal_times_subspace(&self, ideal: &Subspace<F>, u: &Subspace<F>) -> Subspace<F> {
        let mut vs = Vec::new();
        for r in ideal.vectors() {
            let a = self.act(&r);
            for v in u.vectors() {
                vs.push(a.apply(&v));
            }
        }
        Subspace::from_spanning(self.field().clone(), self.dim, vs)
    }
}

/// An R-linear map between modules over the same algebra; `matrix` is
/// `target.dim × source.dim`.
#[derive(Debug, Clone)]
pub struct ModuleMap<F: Field> {
    source: ModulePresentation<F>,
    target: ModulePresentation<F>,
    matrix: Matrix<F>,
}

pub fn validate_module_map<F: Field>(
    source: ModulePresentation<F>,
    target: ModulePresentation<F>,
    matrix: Matrix<F>,
) -> Result<ModuleMap<F>, ModuleError> {
    if !same_algebra(&source.algebra, &target.algebra) {
        return Err(ModuleError::AlgebraMismatch);
    }
    if matrix.rows() != target.dim || matrix.cols() != source.dim {
        return Err(ModuleError::BadShape(format!(
            "module map must be {}x{}, found {}x{}",
            target.dim,
            source.dim,
            matrix.rows(),
            matrix.cols()
        )));
    }
    for (i, (a, b)) in source.actions.iter().zip(&target.actions).enumerate() {
        if matrix.mul(a) != b.mul(&matrix) {
            return Err(ModuleError::NotEquivariant { i });
        }
    }
    Ok(ModuleMap {
        source,
        target,
        matrix,
    })
}

impl<F: Field> ModuleMap<F> {
    pub fn source(&self) -> &ModulePresentation<F> {
        &self.source
    }
    pub fn target(&self) -> &ModulePresentation<F> {
        &self.target
    }
    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }
    pub fn apply(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        self.matrix.apply(v)
    }
    pub fn is_injective(&self) -> bool {
        self.matrix.is_injective()
    }
    pub fn is_bijective(&self) -> bool {
        self.matrix.is_invertible()
    }

    /// `self ∘ first`
    pub fn compose(&self, first: &ModuleMap<F>) -> Result<ModuleMap<F>, ModuleError> {
        if first.target != self.source {
            return Err(ModuleError::BadShape("maps are not composable".into()));
        }
        Ok(ModuleMap {
            source: first.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&first.matrix),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Rationals;
    use crate::rings::make_univariate_quotient;
    use num_rational::BigRational;

    fn q(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| Rationals.from_i64(x)).collect()
    }

    #[test]
    fn validation_examples() {
        let r = make_univariate_quotient(Rationals, &q(&[0, 1]), 2, "x").unwrap();
        let reg = ModulePresentation::regular(&r);
        assert!(validate_module(r.clone(), 2, reg.actions().to_vec()).is_ok());
        assert!(validate_module(
            r.clone(),
            0,
            ModulePresentation::zero(&r).actions().to_vec()
        )
        .is_ok());

        let x = Matrix::from_rows(Rationals, 2, vec![q(&[0, 0]), q(&[1, 0])]);
        let m = validate_module(r.clone(), 2, vec![Matrix::identity(Rationals, 2), x]).unwrap();
        assert_eq!(m, reg);

        // ρ(x)^2 ≠ 0
        let bad = Matrix::from_rows(Rationals, 2, vec![q(&[1, 0]), q(&[0, 0])]);
        assert_eq!(
            validate_module(r.clone(), 2, vec![Matrix::identity(Rationals, 2), bad]).unwrap_err(),
            ModuleError::NotAModule { i: 1, j: 1 }
        );
        assert_eq!(
            validate_module(
                r,
                1,
                vec![
                    Matrix::zeros(Rationals, 1, 1),
                    Matrix::zeros(Rationals, 1, 1)
                ]
            )
            .unwrap_err(),
            ModuleError::UnitNotIdentity
        );
    }

    #[test]
    fn submodules_and_quotients() {
        let r = make_univariate_quotient(Rationals, &q(&[0, 1]), 3, "x").unwrap();
        let reg = ModulePresentation::regular(&r);
        let u = reg.submodule_generated(&[q(&[0, 1, 0])]);
        assert_eq!(u.dim(), 2);
        let (quot, _) = reg.quotient(&u).unwrap();
        assert_eq!(quot, ModulePresentation::residue_field(&r));
        assert_eq!(reg.submodule(&u).unwrap().dim(), 2);
        assert_eq!(reg.minimal_generators(&u), vec![q(&[0, 1, 0])]);
        let not_sub = Subspace::from_spanning(Rationals, 3, vec![q(&[1, 0, 0])]);
        assert!(!reg.is_submodule(&not_sub));
        assert_eq!(
            reg.quotient(&not_sub).unwrap_err(),
            ModuleError::NotASubmodule
        );
    }
}
