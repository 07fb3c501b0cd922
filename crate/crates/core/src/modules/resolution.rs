use crate::exactla::{kernel_basis, Field, Matrix, Subspace};

use super::presentation::{same_algebra, ModulePresentation};
use super::ModuleError;

pub const DEFAULT_DEPTH: usize = 3;

/// `… → R^{b_1} → R^{b_0} → M → 0` with differentials as K-matrices on the
/// free modules (block `p` of `R^b` holds coordinates `p·dim R ..`).
#[derive(Debug, Clone)]
pub struct Resolution<F: Field> {
    module: ModulePresentation<F>,
    ranks: Vec<usize>,
    augmentation: Matrix<F>,
    differentials: Vec<Matrix<F>>,
}

impl<F: Field> Resolution<F> {
    pub fn module(&self) -> &ModulePresentation<F> {
        &self.module
    }
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }
    /// `R^{b_0} → M`
    pub fn augmentation(&self) -> &Matrix<F> {
        &self.augmentation
    }
    /// `d_i : R^{b_i} → R^{b_{i−1}}` for `i ≥ 1`.
    pub fn differential(&self, i: usize) -> &Matrix<F> {
        &self.differentials[i - 1]
    }
    pub fn length(&self) -> usize {
        self.differentials.len()
    }

    /// The algebra entry `r_pq` of `d_i`: block `p` of `d_i` applied to the
    /// `q`-th free generator.
    pub fn entry(&self, i: usize, p: usize, q: usize) -> Vec<F::Elem> {
        let algebra = self.module.algebra();
        let n = algebra.dim();
        let f = algebra.field();
        let mut generator = f.zero_vec(self.ranks[i] * n);
        generator[q * n..(q + 1) * n].clone_from_slice(algebra.unit());
        self.differential(i).apply(&generator)[p * n..(p + 1) * n].to_vec()
    }
}

/// Minimal free resolution out to `R^{b_steps}`.
pub fn minimal_free_resolution<F: Field>(m: &ModulePresentation<F>, steps: usize) -> Resolution<F> {
    let algebra = m.algebra().clone();
    let f = algebra.field().clone();
    let n = algebra.dim();
    let cover = |target: &ModulePresentation<F>, sub: &Subspace<F>| -> (usize, Matrix<F>) {
        let gens = target.minimal_generators(sub);
        let columns = gens
            .iter()
            .flat_map(|g| target.actions().iter().map(move |a| a.apply(g)))
            .collect();
        (
            gens.len(),
            Matrix::from_columns(f.clone(), target.dim(), columns),
        )
    };

    let (b0, augmentation) = cover(m, &Subspace::full(f.clone(), m.dim()));
    let mut ranks = vec![b0];
    let mut differentials = Vec::with_capacity(steps);
    let mut previous = augmentation.clone();
    for _ in 0..steps {
        let rank = *ranks.last().expect("nonempty");
        let free = ModulePresentation::free(&algebra, rank);
        let syzygies = kernel_basis(&previous);
        let (b, d) = cover(&free, &syzygies);
        debug_assert_eq!(d.rows(), rank * n);
        ranks.push(b);
        differentials.push(d.clone());
        previous = d;
    }
    Resolution {
        module: m.clone(),
        ranks,
        augmentation,
        differentials,
    }
}

/// `dim_K Ext^i_R(M, N)` from the complex `Hom_R(F_•, N) ≅ N^{b_•}`.
pub fn ext_dim<F: Field>(
    m: &ModulePresentation<F>,
    n: &ModulePresentation<F>,
    i: usize,
    depth: usize,
) -> Result<usize, ModuleError> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(ModuleError::AlgebraMismatch);
    }
    if i > depth {
        return Err(ModuleError::DepthExceeded {
            requested: i,
            depth,
        });
    }
    let res = minimal_free_resolution(m, i + 1);
    let outgoing = coboundary(&res, n, i + 1).rank();
    let incoming = if i == 0 {
        0
    } else {
        coboundary(&res, n, i).rank()
    };
    Ok(res.ranks()[i] * n.dim() - outgoing - incoming)
}

/// `δ_i : N^{b_{i−1}} → N^{b_i}`, block `(q, p)` equal to `ρ_N(r_pq)`.
pub fn coboundary<F: Field>(res: &Resolution<F>, n: &ModulePresentation<F>, i: usize) -> Matrix<F> {
    let f = n.field().clone();
    let (src, dst) = (res.ranks()[i - 1], res.ranks()[i]);
    let d = n.dim();
    let mut out = Matrix::zeros(f, dst * d, src * d);
    for q in 0..dst {
        for p in 0..src {
            let block = n.act(&res.entry(i, p, q));
            for r in 0..d {
                for c in 0..d {
                    out.set(q * d + r, p * d + c, block.get(r, c).clone());
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Rationals;
    use crate::modules::hom_module;
    use crate::rings::{make_monomial_quotient, make_univariate_quotient};
    use num_rational::BigRational;

    fn q(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| Rationals.from_i64(x)).collect()
    }

    #[test]
    fn resolution_examples() {
        let r = make_univariate_quotient(Rationals, &q(&[0, 1]), 2, "x").unwrap();
        let free = minimal_free_resolution(&ModulePresentation::regular(&r), 3);
        assert_eq!(free.ranks(), &[1, 0, 0, 0]);

        let k = ModulePresentation::residue_field(&r);
        let res = minimal_free_resolution(&k, 3);
        assert_eq!(res.ranks(), &[1, 1, 1, 1]);
        for i in 1..=3 {
            assert_eq!(res.entry(i, 0, 0), q(&[0, 1]));
        }

        let s = make_monomial_quotient(Rationals, 2, &[vec![2, 0], vec![0, 2]]).unwrap();
        let res = minimal_free_resolution(&ModulePresentation::residue_field(&s), 2);
        assert_eq!(&res.ranks()[..2], &[1, 2]);
    }

    #[test]
    fn complexes_and_minimality() {
        let s = make_monomial_quotient(Rationals, 2, &[vec![2, 0], vec![0, 2]]).unwrap();
        let k = ModulePresentation::residue_field(&s);
        let res = minimal_free_resolution(&k, 3);
        assert!(res.augmentation().mul(res.differential(1)).is_zero());
        for i in 1..3 {
            assert!(res.differential(i).mul(res.differential(i + 1)).is_zero());
        }
        for i in 1..=3 {
            for p in 0..res.ranks()[i - 1] {
                for qq in 0..res.ranks()[i] {
                    assert!(s.maximal_ideal().contains(&res.entry(i, p, qq)));
                }
            }
        }
    }

    #[test]
    fn ext_examples() {
        let r = make_univariate_quotient(Rationals, &q(&[0, 1]), 2, "x").unwrap();
        let k = ModulePresentation::residue_field(&r);
        let reg = ModulePresentation::regular(&r);
        for i in 1..=3 {
            assert_eq!(ext_dim(&reg, &k, i, 3), Ok(0));
            assert_eq!(ext_dim(&k, &k, i, 3), Ok(1));
        }
        assert_eq!(
            ext_dim(&k, &k, 0, 3),
            Ok(hom_module(&k, &k).unwrap().0.dim())
        );
        assert_eq!(ext_dim(&k, &reg, 0, 3), Ok(1));
        assert_eq!(
            ext_dim(&k, &k, 4, 3),
            Err(ModuleError::DepthExceeded {
                requested: 4,
                depth: 3
            })
        );
    }
}
