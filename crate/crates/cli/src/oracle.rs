//! Independent recomputation of the tensor relation rank.

use artinian::exactla::{Field, Matrix};
use artinian::modules::ModulePresentation;
use artinian::rings::RingMap;
use rand::seq::SliceRandom;
use rand::Rng;

/// Rank of the span of `r·a ⊗ s − a ⊗ φ(r)s` over basis triples, enumerated
/// in a shuffled order and written in shuffled ambient coordinates.
pub fn permuted_relation_rank<F: Field, G: Rng>(
    a: &ModulePresentation<F>,
    phi: &RingMap<F>,
    rng: &mut G,
) -> usize {
    let f = a.field();
    let s = phi.target();
    let (rd, ad, sd) = (phi.source().dim(), a.dim(), s.dim());
    let mut triples: Vec<(usize, usize, usize)> = (0..rd)
        .flat_map(|i| (0..ad).flat_map(move |j| (0..sd).map(move |l| (i, j, l))))
        .collect();
    triples.shuffle(rng);
    let mut coords: Vec<usize> = (0..ad * sd).collect();
    coords.shuffle(rng);

    let rows = triples
        .into_iter()
        .map(|(i, j, l)| {
            let r_i = phi.source().basis_element(i);
            let a_j = f.unit_vec(ad, j);
            let ra = a.act_on(&r_i, &a_j);
            let shifted = s.multiply(&phi.apply(&r_i), &s.basis_element(l));
            let mut row = vec![f.zero(); ad * sd];
            for p in 0..ad {
                for q in 0..sd {
                    let lhs = if q == l { ra[p].clone() } else { f.zero() };
                    let rhs = if p == j { shifted[q].clone() } else { f.zero() };
                    row[coords[p * sd + q]] = f.sub(&lhs, &rhs);
                }
            }
            row
        })
        .collect();
    Matrix::from_rows(f.clone(), ad * sd, rows).rank()
}
