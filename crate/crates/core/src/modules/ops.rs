use rand::Rng;

use crate::exactla::{kernel_basis, Field, Matrix, Subspace};
use crate::rings::{AlgebraRef, RingMap};

use super::presentation::{same_algebra, validate_module_map, ModuleMap, ModulePresentation};
use super::ModuleError;

/// `dim_K M / dim_K k`
pub fn length<F: Field>(m: &ModulePresentation<F>) -> usize {
    let k = m.algebra().residue_dim();
    debug_assert_eq!(m.dim() % k, 0);
    m.dim() / k
}

/// Number of steps in the walk `M → M/R·v` with `v` the first socle basis
/// vector; every step removes a simple submodule.
pub fn composition_series_length<F: Field>(m: &ModulePresentation<F>) -> usize {
    let algebra = m.algebra().clone();
    let mut current = m.clone();
    let mut steps = 0;
    while !current.is_zero() {
        let socle =
            colon_submodule(&current, algebra.maximal_ideal()).expect("maximal ideal is an ideal");
        let v = socle
            .vectors()
            .into_iter()
            .next()
            .expect("nonzero module has a nonzero socle");
        let simple = current.submodule_generated(&[v]);
        assert_eq!(
            simple.dim(),
            algebra.residue_dim(),
            "R·v is simple for v in the socle"
        );
        current = current.quotient(&simple).expect("R·v is a submodule").0;
        steps += 1;
    }
    steps
}

/// `(0 :_M I)`
pub fn colon_submodule<F: Field>(
    m: &ModulePresentation<F>,
    ideal: &Subspace<F>,
) -> Result<Subspace<F>, ModuleError> {
    if !m.algebra().is_ideal(ideal) {
        return Err(ModuleError::NotAnIdeal);
    }
    let f = m.field().clone();
    let blocks: Vec<Matrix<F>> = ideal.vectors().iter().map(|r| m.act(r)).collect();
    Ok(kernel_basis(&Matrix::vstack(f, m.dim(), &blocks)))
}

/// `{r : ρ(r) = 0}`, the kernel of `R → End_K(M)`.
pub fn annihilator<F: Field>(m: &ModulePresentation<F>) -> Subspace<F> {
    let f = m.field().clone();
    let columns = m.actions().iter().map(|a| a.as_slice().to_vec()).collect();
    kernel_basis(&Matrix::from_columns(f, m.dim() * m.dim(), columns))
}

/// `B` viewed over the source of `φ`: `ρ_R(e_i) = ρ_S(φ(e_i))`.
pub fn restrict_scalars<F: Field>(
    b: &ModulePresentation<F>,
    phi: &RingMap<F>,
) -> Result<ModulePresentation<F>, ModuleError> {
    if !same_algebra(b.algebra(), phi.target()) {
        return Err(ModuleError::AlgebraMismatch);
    }
    let actions = phi
        .matrix()
        .columns()
        .iter()
        .map(|img| b.act(img))
        .collect();
    super::presentation::validate_module(phi.source().clone(), b.dim(), actions)
}

/// Least `t` with `I^t·M = 0`.
pub fn torsion_index<F: Field>(
    m: &ModulePresentation<F>,
    ideal: &Subspace<F>,
) -> Result<usize, ModuleError> {
    let algebra = m.algebra();
    if !algebra.is_ideal(ideal) {
        return Err(ModuleError::NotAnIdeal);
    }
    if m.is_zero() {
        return Ok(0);
    }
    let mut previous: Option<Subspace<F>> = None;
    for t in 1..=algebra.dim() + 1 {
        let power = algebra
            .ideal_power(ideal, t)
            .map_err(|_| ModuleError::NotAnIdeal)?;
        if m.ideal_times(&power).is_zero() {
            return Ok(t);
        }
        if previous.as_ref() == Some(&power) {
            break;
        }
        previous = Some(power);
    }
    Err(ModuleError::NotTorsion)
}

/// Both halves of the finiteness criterion for `I`-torsion modules:
/// `M` is `I`-torsion and `(0 :_M I)` has finite length.
pub fn melkersson_criterion<F: Field>(m: &ModulePresentation<F>, ideal: &Subspace<F>) -> bool {
    torsion_index(m, ideal).is_ok() && colon_submodule(m, ideal).is_ok()
}

/// Attached primes of a finite-length module: `{m}` unless `M = 0`.
pub fn attached_primes<F: Field>(m: &ModulePresentation<F>) -> Vec<Subspace<F>> {
    if m.is_zero() {
        Vec::new()
    } else {
        vec![m.algebra().maximal_ideal().clone()]
    }
}

/// `Hom_K(M, K)` with `(r·T)(x) = T(rx)`; in the dual basis the actions are transposes.
pub fn matlis_dual<F: Field>(m: &ModulePresentation<F>) -> ModulePresentation<F> {
    let actions = m.actions().iter().map(Matrix::transpose).collect();
    super::presentation::validate_module(m.algebra().clone(), m.dim(), actions)
        .expect("transposes of commuting actions form a module")
}

/// The evaluation map `M → M^∨∨`, `x ↦ (T ↦ T(x))`, in dual-of-dual coordinates.
pub fn double_dual_map<F: Field>(m: &ModulePresentation<F>) -> Result<ModuleMap<F>, ModuleError> {
    let dd = matlis_dual(&matlis_dual(m));
    validate_module_map(m.clone(), dd, Matrix::identity(m.field().clone(), m.dim()))
}

/// `R^b / Σ R·v_j` with `b ∈ {1, 2}` and one or two random `v_j ∈ m·R^b`
/// whose coordinates come from small integers.
pub fn random_module<F: Field, G: Rng>(
    algebra: &AlgebraRef<F>,
    rng: &mut G,
) -> ModulePresentation<F> {
    let f = algebra.field().clone();
    let b = rng.gen_range(1..=2);
    let free = ModulePresentation::free(algebra, b);
    let m_basis = algebra.maximal_ideal().vectors();
    let relations = rng.gen_range(1..=2);
    let mut gens = Vec::with_capacity(relations);
    for _ in 0..relations {
        let mut v = Vec::with_capacity(b * algebra.dim());
        for _ in 0..b {
            let mut block = f.zero_vec(algebra.dim());
            for basis in &m_basis {
                let c = f.from_i64(rng.gen_range(-2..=2));
                f.axpy(&mut block, &c, basis);
            }
            v.extend(block);
        }
        gens.push(v);
    }
    let sub = free.submodule_generated(&gens);
    free.quotient(&sub)
        .expect("generated span is a submodule")
        .0
}
