use super::field::Field;
use super::matrix::{rref, Matrix};

/// A subspace of `K^n` stored by its canonical RREF basis, so equality is
/// syntactic.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace<F: Field> {
    ambient_dim: usize,
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn from_spanning<I>(field: F, ambient_dim: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<F::Elem>>,
    {
        let rows: Vec<Vec<F::Elem>> = vectors.into_iter().collect();
        let m = Matrix::from_rows(field.clone(), ambient_dim, rows);
        let (red, pivots) = rref(&m);
        let basis = Matrix::from_rows(
            field,
            ambient_dim,
            (0..pivots.len()).map(|r| red.row(r).to_vec()).collect(),
        );
        Subspace {
            ambient_dim,
            basis,
            pivots,
        }
    }

    pub fn zero(field: F, ambient_dim: usize) -> Self {
        Self::from_spanning(field, ambient_dim, Vec::new())
    }

    pub fn full(field: F, ambient_dim: usize) -> Self {
        let vs = (0..ambient_dim)
            .map(|i| field.unit_vec(ambient_dim, i))
            .collect::<Vec<_>>();
        Self::from_spanning(field, ambient_dim, vs)
    }

    pub fn field(&self) -> &F {
        self.basis.field()
    }
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }
    pub fn dim(&self) -> usize {
        self.pivots.len()
    }
    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }
    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }
    /// Basis rows in RREF.
    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn vectors(&self) -> Vec<Vec<F::Elem>> {
        self.basis.row_vectors()
    }

    /// `v` minus its component along the pivot rows; zero exactly when `v` is in the subspace.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field();
        let mut out = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = out[p].clone();
            if !f.is_zero(&c) {
                let neg = f.neg(&c);
                f.axpy(&mut out, &neg, self.basis.row(i));
            }
        }
        out
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        assert_eq!(v.len(), self.ambient_dim, "vector length");
        self.field().is_zero_vec(&self.reduce(v))
    }

    /// Coordinates of `v` in the RREF basis, when `v` lies in the subspace.
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Inverse of [`Subspace::coordinates`].
    pub fn combine(&self, coords: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field();
        let mut out = f.zero_vec(self.ambient_dim);
        for (i, c) in coords.iter().enumerate() {
            f.axpy(&mut out, c, self.basis.row(i));
        }
        out
    }

    pub fn is_subspace_of(&self, other: &Subspace<F>) -> bool {
        self.vectors().iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace<F>) -> Subspace<F> {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let mut vs = self.vectors();
        vs.extend(other.vectors());
        Subspace::from_spanning(self.field().clone(), self.ambient_dim, vs)
    }

    /// Image under a linear map.
    pub fn image(&self, map: &Matrix<F>) -> Subspace<F> {
        let vs = self
            .vectors()
            .iter()
            .map(|v| map.apply(v))
            .collect::<Vec<_>>();
        Subspace::from_spanning(self.field().clone(), map.rows(), vs)
    }

    /// `ambient × dim` matrix whose columns are the basis vectors.
    pub fn inclusion(&self) -> Matrix<F> {
        self.basis.transpose()
    }

    /// The matrix of `op` on the subspace in basis coordinates, or `None`
    /// when `op` does not preserve it.
    pub fn restrict_operator(&self, op: &Matrix<F>) -> Option<Matrix<F>> {
        let cols = self
            .vectors()
            .iter()
            .map(|v| self.coordinates(&op.apply(v)))
            .collect::<Option<Vec<_>>>()?;
        Some(Matrix::from_columns(self.field().clone(), self.dim(), cols))
    }
}

/// `K^n / kernel` with a projection onto quotient coordinates and a section
/// back to canonical representatives.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientSpace<F: Field> {
    kernel: Subspace<F>,
    complement: Vec<usize>,
    projection: Matrix<F>,
    section: Matrix<F>,
}

impl<F: Field> QuotientSpace<F> {
    /// The complement is spanned by the non-pivot coordinates of the kernel.
    pub fn new(kernel: Subspace<F>) -> Self {
        let n = kernel.ambient_dim();
        let f = kernel.field().clone();
        let mut is_pivot = vec![false; n];
        for &p in kernel.pivots() {
            is_pivot[p] = true;
        }
        let complement: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let section = Matrix::from_columns(
            f.clone(),
            n,
            complement.iter().map(|&c| f.unit_vec(n, c)).collect(),
        );
        let columns = (0..n)
            .map(|j| {
                let r = kernel.reduce(&f.unit_vec(n, j));
                complement.iter().map(|&c| r[c].clone()).collect()
            })
            .collect();
        let projection = Matrix::from_columns(f, complement.len(), columns);
        QuotientSpace {
            kernel,
            complement,
            projection,
            section,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.kernel.ambient_dim()
    }
    pub fn dim(&self) -> usize {
        self.complement.len()
    }
    pub fn kernel(&self) -> &Subspace<F> {
        &self.kernel
    }
    /// `dim × ambient_dim`
    pub fn projection(&self) -> &Matrix<F> {
        &self.projection
    }
    /// `ambient_dim × dim`
    pub fn section(&self) -> &Matrix<F> {
        &self.section
    }
    /// Ambient coordinates used as the quotient basis.
    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    pub fn project(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let r = self.kernel.reduce(v);
        self.complement.iter().map(|&c| r[c].clone()).collect()
    }

    pub fn lift(&self, q: &[F::Elem]) -> Vec<F::Elem> {
        self.section.apply(q)
    }

    /// Induced endomorphism `P · op · S`. The caller is responsible for `op`
    /// preserving the kernel.
    pub fn induced(&self, op: &Matrix<F>) -> Matrix<F> {
        self.projection.mul(&op.mul(&self.section))
    }

    pub fn preserves_kernel(&self, op: &Matrix<F>) -> bool {
        self.kernel
            .vectors()
            .iter()
            .all(|v| self.kernel.contains(&op.apply(v)))
    }
}

pub fn quotient_space<F: Field>(ambient_dim: usize, kernel: Subspace<F>) -> QuotientSpace<F> {
    assert_eq!(
        kernel.ambient_dim(),
        ambient_dim,
        "kernel ambient dimension"
    );
    QuotientSpace::new(kernel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::field::Rationals;

    #[test]
    fn quotient_trivial_cases() {
        let q = quotient_space(3, Subspace::zero(Rationals, 3));
        assert_eq!(q.dim(), 3);
        assert_eq!(q.projection(), &Matrix::identity(Rationals, 3));
        let q = quotient_space(3, Subspace::full(Rationals, 3));
        assert_eq!(q.dim(), 0);
    }

    #[test]
    fn quotient_kills_first_axis() {
        let f = Rationals;
        let ker = Subspace::from_spanning(f, 3, vec![f.unit_vec(3, 0)]);
        let q = quotient_space(3, ker);
        // rank-nullity: 3 - 1
        assert_eq!(q.dim(), 2);
        assert!(f.is_zero_vec(&q.project(&f.unit_vec(3, 0))));
        assert_eq!(q.projection().mul(q.section()), Matrix::identity(f, 2));
    }

    #[test]
    fn subspace_coordinates_round_trip() {
        let f = Rationals;
        let v1 = vec![f.from_i64(1), f.from_i64(2), f.from_i64(3)];
        let v2 = vec![f.from_i64(0), f.from_i64(1), f.from_i64(1)];
        let s = Subspace::from_spanning(f, 3, vec![v1.clone(), v2.clone()]);
        let w = f.add_vec(&f.scale_vec(&f.from_i64(2), &v1), &v2);
        let c = s.coordinates(&w).unwrap();
        assert_eq!(s.combine(&c), w);
        assert!(s.coordinates(&f.unit_vec(3, 2)).is_none());
    }
}
