//! Dense matrices over an exact field.
//!
//! Linear maps act on column vectors: a map `K^n -> K^m` is an `m × n` matrix.

use std::fmt;

use thiserror::Error;

use super::field::Field;
use super::subspace::Subspace;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("linear system has no solution")]
    NoSolution,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

#[derive(Clone, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}x{}]", self.rows, self.cols)?;
        let mut list = f.debug_list();
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| self.field.format(x)).collect();
            list.entry(&row);
        }
        list.finish()
    }
}

impl<F: Field> Matrix<F> {
    pub fn new(field: F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let data = field.zero_vec(rows * cols);
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = m.field.one();
        }
        m
    }

    /// Builds a matrix from rows of length `cols` (needed when there are no rows).
    pub fn from_rows(field: F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length");
            data.extend(r);
        }
        Matrix::new(field, n, cols, data)
    }

    pub fn from_columns(field: F, rows: usize, columns: Vec<Vec<F::Elem>>) -> Self {
        let cols = columns.len();
        let mut m = Self::zeros(field, rows, cols);
        for (c, col) in columns.into_iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (r, x) in col.into_iter().enumerate() {
                m.data[r * cols + c] = x;
            }
        }
        m
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: F::Elem) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<F::Elem>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.field.is_zero_vec(&self.data)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field.clone(), self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.rows, "matrix product shapes");
        let f = &self.field;
        let mut out = Self::zeros(f.clone(), self.rows, other.cols);
        for r in 0..self.rows {
            let acc = &mut out.data[r * other.cols..(r + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.get(r, k);
                if f.is_zero(a) {
                    continue;
                }
                f.axpy(acc, a, other.row(k));
            }
        }
        out
    }

    pub fn apply(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|r| self.field.dot(self.row(r), v))
            .collect()
    }

    pub fn add(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::new(
            self.field.clone(),
            self.rows,
            self.cols,
            self.field.add_vec(&self.data, &other.data),
        )
    }

    pub fn sub(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::new(
            self.field.clone(),
            self.rows,
            self.cols,
            self.field.sub_vec(&self.data, &other.data),
        )
    }

    pub fn scale(&self, c: &F::Elem) -> Matrix<F> {
        Matrix::new(
            self.field.clone(),
            self.rows,
            self.cols,
            self.field.scale_vec(c, &self.data),
        )
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: &F::Elem, other: &Matrix<F>) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.field.axpy(&mut self.data, c, &other.data);
    }

    /// Row-major flattening.
    pub fn as_slice(&self) -> &[F::Elem] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<F::Elem> {
        self.data
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(field: F, cols: usize, blocks: &[Matrix<F>]) -> Matrix<F> {
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols);
            rows += b.rows;
            data.extend(b.data.iter().cloned());
        }
        Matrix::new(field, rows, cols, data)
    }

    /// Places matrices side by side.
    pub fn hstack(field: F, rows: usize, blocks: &[Matrix<F>]) -> Matrix<F> {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut offset = 0;
        for b in blocks {
            assert_eq!(b.rows, rows);
            for r in 0..rows {
                for c in 0..b.cols {
                    out.data[r * cols + offset + c] = b.get(r, c).clone();
                }
            }
            offset += b.cols;
        }
        out
    }

    pub fn block_diagonal(field: F, blocks: &[Matrix<F>]) -> Matrix<F> {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut ro, mut co) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    out.data[(ro + r) * cols + co + c] = b.get(r, c).clone();
                }
            }
            ro += b.rows;
            co += b.cols;
        }
        out
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kronecker(&self, other: &Matrix<F>) -> Matrix<F> {
        let f = &self.field;
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Matrix::zeros(f.clone(), rows, cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self.get(r1, c1);
                if f.is_zero(a) {
                    continue;
                }
                for r2 in 0..other.rows {
                    for c2 in 0..other.cols {
                        let b = other.get(r2, c2);
                        if !f.is_zero(b) {
                            out.data[(r1 * other.rows + r2) * cols + c1 * other.cols + c2] =
                                f.mul(a, b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.cols
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.rows
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Matrix<F>> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = Matrix::hstack(
            self.field.clone(),
            n,
            &[self.clone(), Matrix::identity(self.field.clone(), n)],
        );
        let (red, pivots) = rref(&aug);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = Matrix::zeros(self.field.clone(), n, n);
        for r in 0..n {
            for c in 0..n {
                inv.data[r * n + c] = red.get(r, n + c).clone();
            }
        }
        Some(inv)
    }

    /// Image of the map, as a subspace of the codomain.
    pub fn column_space(&self) -> Subspace<F> {
        Subspace::from_spanning(self.field.clone(), self.rows, self.columns())
    }
}

/// Reduced row echelon form and the strictly increasing pivot columns.
pub fn rref<F: Field>(m: &Matrix<F>) -> (Matrix<F>, Vec<usize>) {
    let f = m.field.clone();
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !f.is_zero(a.get(i, c))) else {
            continue;
        };
        if p != r {
            for k in 0..cols {
                a.data.swap(p * cols + k, r * cols + k);
            }
        }
        let inv = f.inv(a.get(r, c)).unwrap();
        for k in c..cols {
            let x = f.mul(&a.data[r * cols + k], &inv);
            a.data[r * cols + k] = x;
        }
        let pivot_row: Vec<F::Elem> = a.row(r).to_vec();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = a.get(i, c).clone();
            if f.is_zero(&factor) {
                continue;
            }
            let neg = f.neg(&factor);
            f.axpy(&mut a.data[i * cols..(i + 1) * cols], &neg, &pivot_row);
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Basis of `{x : m x = 0}`.
pub fn kernel_basis<F: Field>(m: &Matrix<F>) -> Subspace<F> {
    let f = m.field.clone();
    let (red, pivots) = rref(m);
    let cols = m.cols;
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut vectors = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = f.zero_vec(cols);
        v[free] = f.one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = f.neg(red.get(i, free));
        }
        vectors.push(v);
    }
    Subspace::from_spanning(f, cols, vectors)
}

/// A solution of `m x = b`, with free variables set to zero.
pub fn solve<F: Field>(m: &Matrix<F>, b: &[F::Elem]) -> Result<Vec<F::Elem>, LinAlgError> {
    if b.len() != m.rows {
        return Err(LinAlgError::DimensionMismatch {
            expected: m.rows,
            found: b.len(),
        });
    }
    let f = m.field.clone();
    let column = Matrix::from_columns(f.clone(), m.rows, vec![b.to_vec()]);
    let aug = Matrix::hstack(f.clone(), m.rows, &[m.clone(), column]);
    let (red, pivots) = rref(&aug);
    if pivots.last() == Some(&m.cols) {
        return Err(LinAlgError::NoSolution);
    }
    let mut x = f.zero_vec(m.cols);
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = red.get(i, m.cols).clone();
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::field::{PrimeField, Rationals};
    use num_rational::BigRational;

    fn qm(rows: &[&[i64]]) -> Matrix<Rationals> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            Rationals,
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| Rationals.from_i64(x)).collect())
                .collect(),
        )
    }

    fn qv(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| Rationals.from_i64(x)).collect()
    }

    #[test]
    fn rref_empty_and_identity() {
        let (r, p) = rref(&Matrix::zeros(Rationals, 0, 0));
        assert_eq!((r.rows(), r.cols()), (0, 0));
        assert!(p.is_empty());
        let id = Matrix::identity(Rationals, 3);
        assert_eq!(rref(&id), (id.clone(), vec![0, 1, 2]));
    }

    #[test]
    fn rref_hand_reduction() {
        // [[2,4],[1,2]] -> divide row 1 by 2, subtract from row 2
        let (r, p) = rref(&qm(&[&[2, 4], &[1, 2]]));
        assert_eq!(r, qm(&[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn kernel_cases() {
        assert_eq!(kernel_basis(&Matrix::identity(Rationals, 4)).dim(), 0);
        assert_eq!(kernel_basis(&Matrix::zeros(Rationals, 2, 3)).dim(), 3);
        // [[1,1]] over F_5: enumerate all 25 vectors
        let f5 = PrimeField::new(5).unwrap();
        let m = Matrix::from_rows(f5, 2, vec![vec![1, 1]]);
        let ker = kernel_basis(&m);
        let brute: Vec<[u64; 2]> = (0..5u64)
            .flat_map(|a| (0..5u64).map(move |b| [a, b]))
            .filter(|v| (v[0] + v[1]) % 5 == 0)
            .collect();
        assert_eq!(brute.len(), 5);
        assert_eq!(ker.dim(), 1);
        assert_eq!(ker.basis().row(0), &[1, 4]);
        for v in brute {
            assert!(ker.contains(&v));
        }
    }

    #[test]
    fn solve_cases() {
        let id = Matrix::identity(Rationals, 3);
        assert_eq!(solve(&id, &qv(&[4, -1, 7])).unwrap(), qv(&[4, -1, 7]));
        assert_eq!(
            solve(&qm(&[&[1], &[0]]), &qv(&[0, 1])),
            Err(LinAlgError::NoSolution)
        );
        // back-substitution: 2y = 4, x + y = 3
        assert_eq!(
            solve(&qm(&[&[1, 1], &[0, 2]]), &qv(&[3, 4])).unwrap(),
            qv(&[1, 2])
        );
        assert!(matches!(
            solve(&id, &qv(&[1])),
            Err(LinAlgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn inverse_and_kronecker() {
        let m = qm(&[&[1, 2], &[3, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(Rationals, 2));
        assert!(qm(&[&[1, 2], &[2, 4]]).inverse().is_none());
        let k = Matrix::identity(Rationals, 2).kronecker(&m);
        assert_eq!(k, Matrix::block_diagonal(Rationals, &[m.clone(), m]));
    }
}
