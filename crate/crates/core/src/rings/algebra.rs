use crate::exactla::{Field, Matrix};

use super::RingError;

/// A finite-dimensional commutative unital algebra given by structure
/// constants: `e_i · e_j = Σ_k mul[i][j][k] e_k`.
///
/// Construction only checks shapes; the ring axioms are checked by
/// [`validate_algebra`](super::validate_algebra).
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraPresentation<F: Field> {
    field: F,
    dim: usize,
    unit: Vec<F::Elem>,
    mul: Vec<Vec<Vec<F::Elem>>>,
    labels: Option<Vec<String>>,
    provenance: Option<String>,
}

impl<F: Field> AlgebraPresentation<F> {
    pub fn new(
        field: F,
        unit: Vec<F::Elem>,
        mul: Vec<Vec<Vec<F::Elem>>>,
    ) -> Result<Self, RingError> {
        let dim = unit.len();
        if mul.len() != dim {
            return Err(RingError::BadShape(format!(
                "multiplication table has {} rows, expected {dim}",
                mul.len()
            )));
        }
        for (i, row) in mul.iter().enumerate() {
            if row.len() != dim {
                return Err(RingError::BadShape(format!(
                    "mul[{i}] has {} entries",
                    row.len()
                )));
            }
            for (j, v) in row.iter().enumerate() {
                if v.len() != dim {
                    return Err(RingError::BadShape(format!(
                        "mul[{i}][{j}] has {} coefficients",
                        v.len()
                    )));
                }
            }
        }
        Ok(AlgebraPresentation {
            field,
            dim,
            unit,
            mul,
            labels: None,
            provenance: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim, "one label per basis element");
        self.labels = Some(labels);
        self
    }

    pub fn with_provenance(mut self, tag: impl Into<String>) -> Self {
        self.provenance = Some(tag.into());
        self
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn unit(&self) -> &[F::Elem] {
        &self.unit
    }
    pub fn structure_constants(&self) -> &[Vec<Vec<F::Elem>>] {
        &self.mul
    }
    pub fn product_of_basis(&self, i: usize, j: usize) -> &[F::Elem] {
        &self.mul[i][j]
    }
    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }
    pub fn provenance(&self) -> Option<&str> {
        self.provenance.as_deref()
    }

    pub fn basis_element(&self, i: usize) -> Vec<F::Elem> {
        self.field.unit_vec(self.dim, i)
    }

    pub fn multiply(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = f.zero_vec(self.dim);
        for (i, x) in a.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if f.is_zero(y) {
                    continue;
                }
                f.axpy(&mut out, &f.mul(x, y), &self.mul[i][j]);
            }
        }
        out
    }

    pub fn power(&self, a: &[F::Elem], e: u64) -> Vec<F::Elem> {
        let mut base = a.to_vec();
        let mut acc = self.unit.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.multiply(&acc, &base);
            }
            base = self.multiply(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Matrix of `x ↦ a·x`.
    pub fn left_mul(&self, a: &[F::Elem]) -> Matrix<F> {
        let f = &self.field;
        let mut m = Matrix::zeros(f.clone(), self.dim, self.dim);
        for (i, x) in a.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            m.add_scaled(x, &self.left_mul_basis(i));
        }
        m
    }

    pub fn left_mul_basis(&self, i: usize) -> Matrix<F> {
        Matrix::from_columns(self.field.clone(), self.dim, self.mul[i].clone())
    }

    pub(crate) fn check_axioms(&self) -> Result<(), RingError> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..i {
                if self.mul[i][j] != self.mul[j][i] {
                    return Err(RingError::NotCommutative { i, j });
                }
            }
        }
        for i in 0..n {
            if self.multiply(&self.unit, &self.basis_element(i)) != self.basis_element(i) {
                return Err(RingError::BadUnit { i });
            }
        }
        let lm: Vec<Matrix<F>> = (0..n).map(|i| self.left_mul_basis(i)).collect();
        for i in 0..n {
            for j in 0..n {
                // L_{e_i e_j} = L_{e_i} L_{e_j}, column l is associativity of (i, j, l)
                let lhs = self.left_mul(&self.mul[i][j]);
                let rhs = lm[i].mul(&lm[j]);
                if lhs != rhs {
                    let l = (0..n).find(|&l| lhs.column(l) != rhs.column(l)).unwrap();
                    return Err(RingError::NotAssociative { i, j, l });
                }
            }
        }
        Ok(())
    }

    /// Re-presents the algebra in the basis given by the columns of `change`
    /// (new basis vectors written in old coordinates).
    pub fn change_basis(&self, change: &Matrix<F>) -> Option<AlgebraPresentation<F>> {
        let inv = change.inverse()?;
        let n = self.dim;
        let cols = change.columns();
        let mul = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| inv.apply(&self.multiply(&cols[a], &cols[b])))
                    .collect()
            })
            .collect();
        Some(AlgebraPresentation {
            field: self.field.clone(),
            dim: n,
            unit: inv.apply(&self.unit),
            mul,
            labels: None,
            provenance: self.provenance.clone(),
        })
    }

    /// Renders an element as a linear combination of the basis labels
    /// (`e0, e1, …` when the presentation carries none).
    pub fn format_element(&self, v: &[F::Elem]) -> String {
        let f = &self.field;
        let default: Vec<String>;
        let labels: &[String] = match &self.labels {
            Some(l) => l,
            None => {
                default = (0..self.dim).map(|i| format!("e{i}")).collect();
                &default
            }
        };
        let mut out = String::new();
        for (c, label) in v.iter().zip(labels) {
            if f.is_zero(c) {
                continue;
            }
            let negative = f.is_negative(c);
            let magnitude = if negative { f.neg(c) } else { c.clone() };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push(if negative { '-' } else { '+' });
            }
            let coef = f.format(&magnitude);
            let coef = if f.is_integral(&magnitude) {
                coef
            } else {
                format!("({coef})")
            };
            if label == "1" {
                out.push_str(&coef);
            } else if f.is_one(&magnitude) {
                out.push_str(label);
            } else if f.is_integral(&magnitude) {
                out.push_str(&coef);
                out.push_str(label);
            } else {
                out.push_str(&coef);
                out.push('·');
                out.push_str(label);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}
