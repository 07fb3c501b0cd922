use crate::exactla::{quotient_space, Field, Matrix, QuotientSpace, Subspace};

use super::local::AlgebraRef;
use super::RingError;

/// A unital multiplicative K-linear map `φ: R → S` between local algebras;
/// `matrix` has shape `S.dim × R.dim` and column `i` is `φ(e_i)`.
#[derive(Debug, Clone)]
pub struct RingMap<F: Field> {
    source: AlgebraRef<F>,
    target: AlgebraRef<F>,
    matrix: Matrix<F>,
}

impl<F: Field> RingMap<F> {
    pub fn source(&self) -> &AlgebraRef<F> {
        &self.source
    }
    pub fn target(&self) -> &AlgebraRef<F> {
        &self.target
    }
    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }
    pub fn apply(&self, r: &[F::Elem]) -> Vec<F::Elem> {
        self.matrix.apply(r)
    }

    /// The extended ideal `I·S` generated by `φ(I)`.
    pub fn extend_ideal(&self, ideal: &Subspace<F>) -> Subspace<F> {
        let images: Vec<_> = ideal.vectors().iter().map(|v| self.apply(v)).collect();
        self.target.ideal_generated_by(&images)
    }

    /// `m_R S`
    pub fn extended_maximal_ideal(&self) -> Subspace<F> {
        self.extend_ideal(self.source.maximal_ideal())
    }

    /// `m_R^t S`
    pub fn extended_maximal_power(&self, t: usize) -> Subspace<F> {
        self.extend_ideal(&self.source.maximal_ideal_power(t))
    }
}

pub fn validate_ring_map<F: Field>(
    source: AlgebraRef<F>,
    target: AlgebraRef<F>,
    matrix: Matrix<F>,
) -> Result<RingMap<F>, RingError> {
    if source.field() != target.field() {
        return Err(RingError::FieldMismatch);
    }
    if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
        return Err(RingError::BadShape(format!(
            "ring map matrix must be {}x{}, found {}x{}",
            target.dim(),
            source.dim(),
            matrix.rows(),
            matrix.cols()
        )));
    }
    if matrix.apply(source.unit()) != target.unit() {
        return Err(RingError::NotUnital);
    }
    let images = matrix.columns();
    for i in 0..source.dim() {
        for j in 0..=i {
            let lhs = matrix.apply(source.presentation().product_of_basis(i, j));
            let rhs = target.multiply(&images[i], &images[j]);
            if lhs != rhs {
                return Err(RingError::NotMultiplicative { i, j });
            }
        }
    }
    for v in source.maximal_ideal().vectors() {
        if !target.maximal_ideal().contains(&matrix.apply(&v)) {
            return Err(RingError::NotLocalMap);
        }
    }
    Ok(RingMap {
        source,
        target,
        matrix,
    })
}

/// Certificate that `S` is free over `R` of rank `m = ℓ_R(S/m_R S)`, with
/// lifts `ε_1, …, ε_m` of a residue-field basis of the fiber.
#[derive(Debug, Clone)]
pub struct FlatCertificate<F: Field> {
    map: RingMap<F>,
    rank: usize,
    epsilons: Vec<Vec<F::Elem>>,
    assembled: Matrix<F>,
    assembled_inverse: Matrix<F>,
    fiber: QuotientSpace<F>,
}

impl<F: Field> FlatCertificate<F> {
    pub fn map(&self) -> &RingMap<F> {
        &self.map
    }
    pub fn rank(&self) -> usize {
        self.rank
    }
    pub fn epsilons(&self) -> &[Vec<F::Elem>] {
        &self.epsilons
    }
    /// `R^m → S`, `(r_i) ↦ Σ φ(r_i) ε_i`; column `j·dim R + i` is `φ(e_i) ε_j`.
    pub fn assembled_matrix(&self) -> &Matrix<F> {
        &self.assembled
    }
    pub fn assembled_inverse(&self) -> &Matrix<F> {
        &self.assembled_inverse
    }
    /// `S → S/m_R S`
    pub fn fiber(&self) -> &QuotientSpace<F> {
        &self.fiber
    }
}

/// Indices of candidates kept greedily: a candidate is kept when some vector
/// of its `orbit` leaves the span of the orbits kept so far.
fn greedy_residue_basis<F: Field>(
    field: &F,
    quotient_dim: usize,
    candidates: &[Vec<F::Elem>],
    orbit: impl Fn(&[F::Elem]) -> Vec<Vec<F::Elem>>,
) -> Vec<usize> {
    let mut chosen = Vec::new();
    let mut span = Subspace::zero(field.clone(), quotient_dim);
    for (idx, c) in candidates.iter().enumerate() {
        if span.is_full() {
            break;
        }
        let images = orbit(c);
        if images.iter().all(|v| span.contains(v)) {
            continue;
        }
        span = span.sum(&Subspace::from_spanning(
            field.clone(),
            quotient_dim,
            images,
        ));
        chosen.push(idx);
    }
    chosen
}

pub fn flat_certificate<F: Field>(map: &RingMap<F>) -> Result<FlatCertificate<F>, RingError> {
    let r = map.source();
    let s = map.target();
    let f = r.field().clone();
    let extended = map.extended_maximal_ideal();
    let fiber = quotient_space(s.dim(), extended);
    let residue = r.residue_dim();
    if !fiber.dim().is_multiple_of(residue) {
        return Err(RingError::NotFree(format!(
            "fiber dimension {} is not a multiple of the residue degree {residue}",
            fiber.dim()
        )));
    }
    let rank = fiber.dim() / residue;
    if s.dim() != rank * r.dim() {
        return Err(RingError::NotFree(format!(
            "dim S = {} but rank {rank} times dim R = {}",
            s.dim(),
            rank * r.dim()
        )));
    }
    let sections = fiber.section().columns();
    let r_images: Vec<Vec<F::Elem>> = map.matrix().columns();
    let chosen = greedy_residue_basis(&f, fiber.dim(), &sections, |v| {
        r_images
            .iter()
            .map(|phi_e| fiber.project(&s.multiply(phi_e, v)))
            .collect()
    });
    let epsilons: Vec<Vec<F::Elem>> = chosen.into_iter().map(|i| sections[i].clone()).collect();
    debug_assert_eq!(epsilons.len(), rank);
    let columns = epsilons
        .iter()
        .flat_map(|eps| r_images.iter().map(move |phi_e| (phi_e, eps)))
        .map(|(phi_e, eps)| s.multiply(phi_e, eps))
        .collect();
    let assembled = Matrix::from_columns(f, s.dim(), columns);
    let assembled_inverse = assembled
        .inverse()
        .ok_or_else(|| RingError::NotFree("assembled map R^m → S is singular".into()))?;
    Ok(FlatCertificate {
        map: map.clone(),
        rank,
        epsilons,
        assembled,
        assembled_inverse,
        fiber,
    })
}
