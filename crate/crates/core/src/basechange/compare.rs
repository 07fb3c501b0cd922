use crate::exactla::Field;
use crate::modules::{length, restrict_scalars, ModulePresentation};
use crate::rings::FlatCertificate;

use super::transport::{induced_power_structure, PowerStructure};
use super::BaseChangeError;

/// A pair `(s, b)` on which the two structures on `B^m` disagree.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness<F: Field> {
    pub s: Vec<F::Elem>,
    pub b: Vec<F::Elem>,
    pub usual: Vec<F::Elem>,
    pub induced: Vec<F::Elem>,
}

/// Dimension data of one S-structure on `B^m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StructureDims {
    pub dim: usize,
    pub length: usize,
    pub socle_dim: usize,
}

/// The usual and induced S-structures on `B^m`.
#[derive(Debug, Clone)]
pub struct ComparisonReport<F: Field> {
    usual: ModulePresentation<F>,
    induced: PowerStructure<F>,
    witness: Option<Witness<F>>,
}

impl<F: Field> ComparisonReport<F> {
    pub fn equal(&self) -> bool {
        self.witness.is_none()
    }
    pub fn witness(&self) -> Option<&Witness<F>> {
        self.witness.as_ref()
    }
    pub fn usual(&self) -> &ModulePresentation<F> {
        &self.usual
    }
    pub fn induced(&self) -> &PowerStructure<F> {
        &self.induced
    }

    /// `(s·b, s ∘ b)`
    pub fn products(&self, s: &[F::Elem], b: &[F::Elem]) -> (Vec<F::Elem>, Vec<F::Elem>) {
        (self.usual.act_on(s, b), self.induced.act(s, b))
    }

    pub fn usual_dims(&self) -> StructureDims {
        dims(&self.usual)
    }
    pub fn induced_dims(&self) -> StructureDims {
        dims(self.induced.carrier())
    }
}

fn dims<F: Field>(m: &ModulePresentation<F>) -> StructureDims {
    let socle = crate::modules::colon_submodule(m, m.algebra().maximal_ideal())
        .expect("maximal ideal is an ideal");
    StructureDims {
        dim: m.dim(),
        length: length(m),
        socle_dim: socle.dim(),
    }
}

/// Builds both structures on `B^m` and sweeps `(e_l, basis vector)` pairs
/// in order for the first disagreement.
pub fn compare_power_structures<F: Field>(
    b: &ModulePresentation<F>,
    cert: &FlatCertificate<F>,
) -> Result<ComparisonReport<F>, BaseChangeError> {
    let over_r = restrict_scalars(b, cert.map())?;
    let induced = induced_power_structure(&over_r, cert)?;
    let usual = b.power(cert.rank());
    let f = b.field().clone();
    let s = cert.map().target();
    let mut witness = None;
    'sweep: for (l, (u, i)) in usual
        .actions()
        .iter()
        .zip(induced.carrier().actions())
        .enumerate()
    {
        if u == i {
            continue;
        }
        for k in 0..usual.dim() {
            let (cu, ci) = (u.column(k), i.column(k));
            if cu != ci {
                witness = Some(Witness {
                    s: s.basis_element(l),
                    b: f.unit_vec(usual.dim(), k),
                    usual: cu,
                    induced: ci,
                });
                break 'sweep;
            }
        }
    }
    Ok(ComparisonReport {
        usual,
        induced,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{Matrix, PrimeField, Rationals};
    use crate::rings::{
        extend_by_field, flat_certificate, make_univariate_quotient, validate_ring_map,
    };
    use num_rational::BigRational;

    fn q(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| Rationals.from_i64(x)).collect()
    }

    #[test]
    fn sqrt2_structures_differ() {
        let qq = make_univariate_quotient(Rationals, &q(&[0, 1]), 1, "t").unwrap();
        let (s, phi) = extend_by_field(&qq, &q(&[-2, 0, 1]), "√2").unwrap();
        let cert = flat_certificate(&phi).unwrap();
        let report = compare_power_structures(&ModulePresentation::regular(&s), &cert).unwrap();
        assert!(!report.equal());
        let w = report.witness().unwrap();
        assert_ne!(w.usual, w.induced);
        assert_eq!(
            report.products(&w.s, &w.b),
            (w.usual.clone(), w.induced.clone())
        );
        let (usual, induced) = report.products(&q(&[1, 3]), &q(&[1, 0, 0, 1]));
        assert_eq!(usual, q(&[1, 3, 6, 1]));
        assert_eq!(induced, q(&[1, 6, 3, 1]));
        assert_eq!(report.usual_dims(), report.induced_dims());
    }

    #[test]
    fn rank_one_structures_agree() {
        let r = make_univariate_quotient(Rationals, &q(&[0, 1]), 2, "x").unwrap();
        let z = make_univariate_quotient(Rationals, &q(&[0, 1]), 2, "z").unwrap();
        let phi = validate_ring_map(r, z.clone(), Matrix::identity(Rationals, 2)).unwrap();
        let cert = flat_certificate(&phi).unwrap();
        for b in [
            ModulePresentation::regular(&z),
            ModulePresentation::residue_field(&z),
        ] {
            assert!(compare_power_structures(&b, &cert).unwrap().equal());
        }
    }

    #[test]
    fn f25_witness_matches_exhaustive_search() {
        let f5 = PrimeField::new(5).unwrap();
        let base = make_univariate_quotient(f5, &[0, 1], 1, "t").unwrap();
        let (s, phi) = extend_by_field(&base, &[3, 0, 1], "i").unwrap();
        let cert = flat_certificate(&phi).unwrap();
        let report = compare_power_structures(&ModulePresentation::regular(&s), &cert).unwrap();
        assert!(!report.equal());

        // exhaustive over 𝔽_25 × 𝔽_25² against the closed forms with i² = 2:
        // usual s·b componentwise, induced (s0·b1 + 2s1·b2, s1·b1 + s0·b2)
        let mul = |x: &[u64], y: &[u64]| {
            vec![
                (x[0] * y[0] + 2 * x[1] * y[1]) % 5,
                (x[0] * y[1] + x[1] * y[0]) % 5,
            ]
        };
        let scale = |c: u64, y: &[u64]| vec![c * y[0] % 5, c * y[1] % 5];
        let add = |x: Vec<u64>, y: Vec<u64>| vec![(x[0] + y[0]) % 5, (x[1] + y[1]) % 5];
        let mut disagreements = 0usize;
        for s0 in 0..5u64 {
            for s1 in 0..5u64 {
                for code in 0..625u64 {
                    let b = vec![code % 5, (code / 5) % 5, (code / 25) % 5, code / 125];
                    let (b1, b2) = (&b[..2], &b[2..]);
                    let usual = [mul(&[s0, s1], b1), mul(&[s0, s1], b2)].concat();
                    let induced = [
                        add(scale(s0, b1), scale(2 * s1, b2)),
                        add(scale(s1, b1), scale(s0, b2)),
                    ]
                    .concat();
                    assert_eq!(
                        report.products(&[s0, s1], &b),
                        (usual.clone(), induced.clone())
                    );
                    if usual != induced {
                        disagreements += 1;
                    }
                }
            }
        }
        assert!(disagreements > 0);
        let w = report.witness().unwrap();
        assert_eq!(w.s, vec![0, 1]);
        assert_ne!(w.usual, w.induced);
    }
}
