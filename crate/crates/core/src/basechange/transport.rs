use crate::exactla::{Field, Matrix};
use crate::modules::{
    restrict_scalars, tensor_up, validate_module, validate_module_map, ModuleMap,
    ModulePresentation, TensorProduct,
};
use crate::rings::FlatCertificate;

use super::BaseChangeError;

/// `(r_1, …, r_m)` with `s = Σ φ(r_i) ε_i`, each `r_i` in source-basis coordinates.
pub fn coordinates<F: Field>(cert: &FlatCertificate<F>, s: &[F::Elem]) -> Vec<Vec<F::Elem>> {
    let n = cert.map().source().dim();
    let flat = cert.assembled_inverse().apply(s);
    flat.chunks(n).map(<[F::Elem]>::to_vec).collect()
}

/// `Σ φ(r_i) ε_i`
pub fn reassemble<F: Field>(cert: &FlatCertificate<F>, rs: &[Vec<F::Elem>]) -> Vec<F::Elem> {
    cert.assembled_matrix().apply(&rs.concat())
}

/// `(R/m^t)^m → S/m^t S`, `(r_i) ↦ Σ r_i ε_i`, with both sides as R-modules.
#[derive(Debug, Clone)]
pub struct TruncationMap<F: Field> {
    t: usize,
    map: ModuleMap<F>,
}

impl<F: Field> TruncationMap<F> {
    pub fn t(&self) -> usize {
        self.t
    }
    pub fn map(&self) -> &ModuleMap<F> {
        &self.map
    }
}

pub fn phi_t_map<F: Field>(
    cert: &FlatCertificate<F>,
    t: usize,
) -> Result<TruncationMap<F>, BaseChangeError> {
    let phi = cert.map();
    let (r, s) = (phi.source(), phi.target());
    let f = r.field().clone();
    let r_ideal = r.maximal_ideal_power(t);
    let (r_trunc, r_quot) = ModulePresentation::regular(r).quotient(&r_ideal)?;
    let (s_trunc, s_quot) =
        ModulePresentation::regular(s).quotient(&phi.extended_maximal_power(t))?;
    let mut columns = Vec::with_capacity(cert.rank() * r_quot.dim());
    for eps in cert.epsilons() {
        for c in 0..r_quot.dim() {
            let lift = r_quot.lift(&f.unit_vec(r_quot.dim(), c));
            columns.push(s_quot.project(&s.multiply(&phi.apply(&lift), eps)));
        }
    }
    let matrix = Matrix::from_columns(f, s_quot.dim(), columns);
    let map = validate_module_map(
        r_trunc.power(cert.rank()),
        restrict_scalars(&s_trunc, phi)?,
        matrix,
    )?;
    if !map.is_bijective() {
        return Err(BaseChangeError::NotIso { t });
    }
    Ok(TruncationMap { t, map })
}

/// `h̃ : A ⊗_K S → A^m`, `a ⊗ s ↦ (r_1(s)·a, …, r_m(s)·a)`.
pub fn h_tilde<F: Field>(a: &ModulePresentation<F>, cert: &FlatCertificate<F>) -> Matrix<F> {
    let s = cert.map().target();
    let f = a.field().clone();
    let coords: Vec<Vec<Vec<F::Elem>>> = (0..s.dim())
        .map(|l| coordinates(cert, &s.basis_element(l)))
        .collect();
    let mut columns = Vec::with_capacity(a.dim() * s.dim());
    for j in 0..a.dim() {
        let aj = f.unit_vec(a.dim(), j);
        for rs in &coords {
            columns.push(rs.iter().flat_map(|r| a.act_on(r, &aj)).collect());
        }
    }
    Matrix::from_columns(f, a.dim() * cert.rank(), columns)
}

/// `h : A ⊗_R S → A^m` as an R-linear map, after checking that `h̃` kills
/// every tensor relation.
pub fn map_h<F: Field>(
    tensor: &TensorProduct<F>,
    a: &ModulePresentation<F>,
    cert: &FlatCertificate<F>,
) -> Result<ModuleMap<F>, BaseChangeError> {
    let tilde = h_tilde(a, cert);
    if tensor
        .relations()
        .vectors()
        .iter()
        .any(|v| !a.field().is_zero_vec(&tilde.apply(v)))
    {
        return Err(BaseChangeError::RelationNotKilled);
    }
    let matrix = tilde.mul(tensor.quotient().section());
    let source = restrict_scalars(tensor.module(), cert.map())?;
    Ok(validate_module_map(source, a.power(cert.rank()), matrix)?)
}

/// `g : A^m → A ⊗_R S`, `(a_i) ↦ Σ a_i ⊗ ε_i`.
pub fn map_g<F: Field>(
    tensor: &TensorProduct<F>,
    a: &ModulePresentation<F>,
    cert: &FlatCertificate<F>,
) -> Result<ModuleMap<F>, BaseChangeError> {
    let f = a.field().clone();
    let mut columns = Vec::with_capacity(a.dim() * cert.rank());
    for eps in cert.epsilons() {
        for j in 0..a.dim() {
            columns.push(tensor.class_of(&f.unit_vec(a.dim(), j), eps));
        }
    }
    let matrix = Matrix::from_columns(f, tensor.module().dim(), columns);
    let target = restrict_scalars(tensor.module(), cert.map())?;
    Ok(validate_module_map(a.power(cert.rank()), target, matrix)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructureKind {
    /// `s ∘ a = h(s·g(a))`
    Induced,
    /// `s·(b_i) = (s·b_i)`
    Usual,
}

impl StructureKind {
    pub fn as_str(self) -> &'static str {
        match self {
            StructureKind::Induced => "induced",
            StructureKind::Usual => "usual",
        }
    }
}

/// `A^m` as an S-module through `s ∘ a = h(s·g(a))`.
#[derive(Debug, Clone)]
pub struct PowerStructure<F: Field> {
    base: ModulePresentation<F>,
    cert: FlatCertificate<F>,
    tensor: TensorProduct<F>,
    carrier: ModulePresentation<F>,
    g: ModuleMap<F>,
    h: ModuleMap<F>,
    kind: StructureKind,
}

impl<F: Field> PowerStructure<F> {
    pub fn base(&self) -> &ModulePresentation<F> {
        &self.base
    }
    pub fn certificate(&self) -> &FlatCertificate<F> {
        &self.cert
    }
    pub fn tensor(&self) -> &TensorProduct<F> {
        &self.tensor
    }
    /// The S-module on `A^m`.
    pub fn carrier(&self) -> &ModulePresentation<F> {
        &self.carrier
    }
    pub fn g(&self) -> &ModuleMap<F> {
        &self.g
    }
    pub fn h(&self) -> &ModuleMap<F> {
        &self.h
    }
    pub fn kind(&self) -> StructureKind {
        self.kind
    }

    /// `s ∘ a`
    pub fn act(&self, s: &[F::Elem], a: &[F::Elem]) -> Vec<F::Elem> {
        self.carrier.act_on(s, a)
    }

    /// `h∘g` on `A^m`.
    pub fn hg(&self) -> Matrix<F> {
        self.h.matrix().mul(self.g.matrix())
    }

    /// `g∘h` on `A ⊗_R S`.
    pub fn gh(&self) -> Matrix<F> {
        self.g.matrix().mul(self.h.matrix())
    }

    /// Whether `h : A ⊗_R S → (A^m, ∘)` commutes with every S-basis element.
    pub fn h_is_s_linear(&self) -> bool {
        validate_module_map(
            self.tensor.module().clone(),
            self.carrier.clone(),
            self.h.matrix().clone(),
        )
        .is_ok()
    }

    /// Whether restricting `∘` along `φ` gives exactly the componentwise R-action.
    pub fn recovers_base_structure(&self) -> bool {
        restrict_scalars(&self.carrier, self.cert.map())
            .map(|m| m == self.base.power(self.cert.rank()))
            .unwrap_or(false)
    }
}

pub fn induced_power_structure<F: Field>(
    a: &ModulePresentation<F>,
    cert: &FlatCertificate<F>,
) -> Result<PowerStructure<F>, BaseChangeError> {
    let tensor = tensor_up(a, cert.map())?;
    let h = map_h(&tensor, a, cert)?;
    let g = map_g(&tensor, a, cert)?;
    let actions = tensor
        .module()
        .actions()
        .iter()
        .map(|act| h.matrix().mul(act).mul(g.matrix()))
        .collect();
    let carrier = validate_module(cert.map().target().clone(), a.dim() * cert.rank(), actions)?;
    Ok(PowerStructure {
        base: a.clone(),
        cert: cert.clone(),
        tensor,
        carrier,
        g,
        h,
        kind: StructureKind::Induced,
    })
}

/// For rank 1, `s ∘ a = r·a` with `φ(r) = s`, on the carrier of `A`.
pub fn ascend_m1<F: Field>(
    a: &ModulePresentation<F>,
    cert: &FlatCertificate<F>,
) -> Result<ModulePresentation<F>, BaseChangeError> {
    if cert.rank() != 1 {
        return Err(BaseChangeError::RankNotOne(cert.rank()));
    }
    let phi = cert.map();
    let inverse = phi
        .matrix()
        .inverse()
        .ok_or(BaseChangeError::NotIso { t: 0 })?;
    let s = phi.target();
    let actions = (0..s.dim())
        .map(|l| a.act(&inverse.apply(&s.basis_element(l))))
        .collect();
    Ok(validate_module(s.clone(), a.dim(), actions)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Rationals;
    use crate::rings::{
        extend_by_field, flat_certificate, make_monomial_quotient, make_univariate_quotient,
        validate_ring_map,
    };
    use num_rational::BigRational;

    fn q(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| Rationals.from_i64(x)).collect()
    }

    fn sqrt2() -> FlatCertificate<Rationals> {
        let qq = make_univariate_quotient(Rationals, &q(&[0, 1]), 1, "t").unwrap();
        let (_, phi) = extend_by_field(&qq, &q(&[-2, 0, 1]), "√2").unwrap();
        flat_certificate(&phi).unwrap()
    }

    fn i2() -> FlatCertificate<Rationals> {
        let r = make_univariate_quotient(Rationals, &q(&[0, 1]), 3, "x").unwrap();
        let (_, phi) = extend_by_field(&r, &q(&[-2, 0, 1]), "√2").unwrap();
        flat_certificate(&phi).unwrap()
    }

    fn i4() -> FlatCertificate<Rationals> {
        let r = make_monomial_quotient(Rationals, 1, &[vec![2]]).unwrap();
        let s = make_monomial_quotient(Rationals, 2, &[vec![2, 0], vec![0, 2]]).unwrap();
        let m = Matrix::from_columns(Rationals, 4, vec![q(&[1, 0, 0, 0]), q(&[0, 1, 0, 0])]);
        flat_certificate(&validate_ring_map(r, s, m).unwrap()).unwrap()
    }

    #[test]
    fn coordinate_examples() {
        let cert = sqrt2();
        assert_eq!(coordinates(&cert, &q(&[1, 0])), vec![q(&[1]), q(&[0])]);
        assert_eq!(coordinates(&cert, &q(&[1, 3])), vec![q(&[1]), q(&[3])]);
        assert_eq!(coordinates(&cert, &q(&[6, 1])), vec![q(&[6]), q(&[1])]);
        let cert = i2();
        let s = q(&[1, 2, 3, 4, 5, 6]);
        assert_eq!(reassemble(&cert, &coordinates(&cert, &s)), s);
    }

    #[test]
    fn truncation_maps() {
        let cert = i2();
        let t2 = phi_t_map(&cert, 2).unwrap();
        assert_eq!(t2.map().matrix().rows(), 4);
        assert!(t2.map().is_bijective());
        let t3 = phi_t_map(&cert, 3).unwrap();
        assert_eq!(t3.map().matrix(), cert.assembled_matrix());
        let t1 = phi_t_map(&sqrt2(), 1).unwrap();
        assert_eq!(t1.map().matrix().rows(), 2);
    }

    #[test]
    fn h_and_g() {
        let cert = sqrt2();
        let b = restrict_scalars(
            &ModulePresentation::regular(cert.map().target()),
            cert.map(),
        )
        .unwrap();
        let tensor = tensor_up(&b, cert.map()).unwrap();
        let h = map_h(&tensor, &b, &cert).unwrap();
        let z = tensor.class_of(&q(&[1, 0]), &q(&[1, 3]));
        assert_eq!(h.apply(&z), q(&[1, 0, 3, 0]));
        let g = map_g(&tensor, &b, &cert).unwrap();
        let expected = Rationals.add_vec(
            &tensor.class_of(&q(&[1, 0]), &q(&[1, 0])),
            &tensor.class_of(&q(&[0, 1]), &q(&[0, 1])),
        );
        assert_eq!(g.apply(&q(&[1, 0, 0, 1])), expected);
        assert_eq!(
            g.apply(&q(&[1, 0, 0, 0])),
            tensor.class_of(&q(&[1, 0]), &cert.epsilons()[0])
        );

        let cert = i2();
        let r = cert.map().source().clone();
        let k = ModulePresentation::residue_field(&r);
        let tensor = tensor_up(&k, cert.map()).unwrap();
        let h = map_h(&tensor, &k, &cert).unwrap();
        assert_eq!(h.matrix().rows(), 2);
        assert!(h.is_bijective());
    }

    #[test]
    fn remark_values() {
        let cert = sqrt2();
        let b = restrict_scalars(
            &ModulePresentation::regular(cert.map().target()),
            cert.map(),
        )
        .unwrap();
        let ps = induced_power_structure(&b, &cert).unwrap();
        // b = (1, √2) in B^2 = (1, 0, 0, 1)
        assert_eq!(ps.act(&q(&[1, 3]), &q(&[1, 0, 0, 1])), q(&[1, 6, 3, 1]));
        assert_eq!(ps.act(&q(&[1, 0]), &q(&[2, 5, 7, 1])), q(&[2, 5, 7, 1]));
        assert!(ps.recovers_base_structure());
        assert!(ps.h_is_s_linear());
        assert_eq!(ps.hg(), Matrix::identity(Rationals, 4));
    }

    #[test]
    fn induced_structure_on_monomial_instance() {
        let cert = i4();
        assert_eq!(cert.epsilons(), &[q(&[1, 0, 0, 0]), q(&[0, 0, 1, 0])]);
        let r = ModulePresentation::regular(cert.map().source());
        let ps = induced_power_structure(&r, &cert).unwrap();
        // y ∘ (1, 0) = (0, 1)
        assert_eq!(
            ps.act(&q(&[0, 0, 1, 0]), &q(&[1, 0, 0, 0])),
            q(&[0, 0, 1, 0])
        );
        assert!(ascend_m1(&r, &cert).is_err());
    }

    #[test]
    fn rank_one_ascent() {
        let r = make_univariate_quotient(Rationals, &q(&[0, 1]), 2, "x").unwrap();
        let id = validate_ring_map(r.clone(), r.clone(), Matrix::identity(Rationals, 2)).unwrap();
        let cert = flat_certificate(&id).unwrap();
        let reg = ModulePresentation::regular(&r);
        assert_eq!(ascend_m1(&reg, &cert).unwrap(), reg);

        let z = make_univariate_quotient(Rationals, &q(&[0, 1]), 2, "z").unwrap();
        let phi = validate_ring_map(r.clone(), z.clone(), Matrix::identity(Rationals, 2)).unwrap();
        let cert = flat_certificate(&phi).unwrap();
        let up = ascend_m1(&reg, &cert).unwrap();
        assert_eq!(up.actions()[1], reg.actions()[1]);
        assert_eq!(
            up,
            induced_power_structure(&reg, &cert)
                .unwrap()
                .carrier()
                .clone()
        );
        let k = ModulePresentation::residue_field(&r);
        assert_eq!(
            ascend_m1(&k, &cert).unwrap(),
            ModulePresentation::residue_field(&z)
        );
    }
}
