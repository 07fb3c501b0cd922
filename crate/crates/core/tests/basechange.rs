use artinian::basechange::{
    compare_power_structures, coordinates, induced_power_structure, phi_t_map, reassemble,
};
use artinian::exactla::{Field, Matrix, PrimeField, Rationals};
use artinian::modules::{
    ext_dim, length, random_module, restrict_scalars, tensor_up, ModulePresentation,
};
use artinian::rings::{
    extend_by_field, flat_certificate, make_monomial_quotient, make_univariate_quotient,
    validate_ring_map, FlatCertificate,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(v: &[i64]) -> Vec<num_rational::BigRational> {
    v.iter().map(|&x| Rationals.from_i64(x)).collect()
}

fn rational_maps() -> Vec<FlatCertificate<Rationals>> {
    let qq = make_univariate_quotient(Rationals, &q(&[0, 1]), 1, "t").unwrap();
    let x3 = make_univariate_quotient(Rationals, &q(&[0, 1]), 3, "x").unwrap();
    let x2 = make_univariate_quotient(Rationals, &q(&[0, 1]), 2, "x").unwrap();
    let xy = make_monomial_quotient(Rationals, 2, &[vec![2, 0], vec![0, 2]]).unwrap();
    let y3 = make_univariate_quotient(Rationals, &q(&[0, 1]), 3, "y").unwrap();
    let maps = [
        extend_by_field(&qq, &q(&[-2, 0, 1]), "√2").unwrap().1,
        extend_by_field(&x3, &q(&[-2, 0, 1]), "√2").unwrap().1,
        validate_ring_map(
            x2,
            xy,
            Matrix::from_columns(Rationals, 4, vec![q(&[1, 0, 0, 0]), q(&[0, 1, 0, 0])]),
        )
        .unwrap(),
        validate_ring_map(
            qq,
            y3,
            Matrix::from_columns(Rationals, 3, vec![q(&[1, 0, 0])]),
        )
        .unwrap(),
    ];
    maps.iter().map(|m| flat_certificate(m).unwrap()).collect()
}

fn f25() -> FlatCertificate<PrimeField> {
    let f5 = PrimeField::new(5).unwrap();
    let base = make_univariate_quotient(f5, &[0, 1], 2, "x").unwrap();
    let (_, phi) = extend_by_field(&base, &[3, 0, 1], "i").unwrap();
    flat_certificate(&phi).unwrap()
}

fn check_transport<F: Field>(
    cert: &FlatCertificate<F>,
    rng: &mut ChaCha8Rng,
) -> Result<(), TestCaseError> {
    let phi = cert.map();
    let (r, s) = (phi.source(), phi.target());
    let f = r.field().clone();

    // coordinates against ε invert reassembly
    let elt: Vec<F::Elem> = (0..s.dim())
        .map(|_| f.from_i64(rng.gen_range(-3..=3)))
        .collect();
    prop_assert_eq!(reassemble(cert, &coordinates(cert, &elt)), elt);
    for t in 1..=r.nilpotency_index() {
        prop_assert!(phi_t_map(cert, t).is_ok());
    }

    let a = random_module(r, rng);
    let ps = induced_power_structure(&a, cert).unwrap();
    prop_assert_eq!(ps.hg(), Matrix::identity(f.clone(), a.dim() * cert.rank()));
    prop_assert_eq!(
        ps.gh(),
        Matrix::identity(f.clone(), ps.tensor().module().dim())
    );
    prop_assert!(ps.h_is_s_linear());
    prop_assert!(ps.recovers_base_structure());

    let fiber = length(
        &ModulePresentation::regular(s)
            .quotient(&phi.extended_maximal_ideal())
            .unwrap()
            .0,
    );
    prop_assert_eq!(length(ps.tensor().module()), length(&a) * fiber);
    prop_assert_eq!(ps.tensor().module().dim(), cert.rank() * a.dim());

    let s_over_r = restrict_scalars(&ModulePresentation::regular(s), phi).unwrap();
    for i in 1..=2 {
        prop_assert_eq!(ext_dim(&s_over_r, &a, i, 2).unwrap(), 0);
    }

    let b = random_module(s, rng);
    let over_r = restrict_scalars(&b, phi).unwrap();
    prop_assert_eq!(
        length(&over_r),
        length(&b) * (s.residue_dim() / r.residue_dim())
    );
    let cmp = compare_power_structures(&b, cert).unwrap();
    if cert.rank() == 1 {
        prop_assert!(cmp.equal());
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn rational_transport(seed in any::<u64>(), which in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        check_transport(&rational_maps()[which], &mut rng)?;
    }

    #[test]
    fn prime_transport(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        check_transport(&f25(), &mut rng)?;
    }

    /// Tensor dimension depends only on the isomorphism class of A.
    #[test]
    fn tensor_dimension_is_basis_independent(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cert = &rational_maps()[1];
        let a = random_module(cert.map().source(), &mut rng);
        let p = loop {
            let e = (0..a.dim() * a.dim()).map(|_| Rationals.from_i64(rng.gen_range(-2..=2))).collect();
            let m = Matrix::new(Rationals, a.dim(), a.dim(), e);
            if m.is_invertible() { break m; }
        };
        let b = a.change_basis(&p).unwrap();
        let (ta, tb) = (tensor_up(&a, cert.map()).unwrap(), tensor_up(&b, cert.map()).unwrap());
        prop_assert_eq!(ta.module().dim(), tb.module().dim());
        prop_assert_eq!(length(ta.module()), length(tb.module()));
    }
}

#[test]
fn non_flat_map_has_nonvanishing_ext() {
    let x2 = make_univariate_quotient(Rationals, &q(&[0, 1]), 2, "x").unwrap();
    let k = make_univariate_quotient(Rationals, &q(&[0, 1]), 1, "t").unwrap();
    let phi = validate_ring_map(
        x2.clone(),
        k.clone(),
        Matrix::from_rows(Rationals, 2, vec![q(&[1, 0])]),
    )
    .unwrap();
    assert!(flat_certificate(&phi).is_err());
    let target = restrict_scalars(&ModulePresentation::regular(&k), &phi).unwrap();
    let residue = ModulePresentation::residue_field(&x2);
    assert_eq!(ext_dim(&target, &residue, 1, 3), Ok(1));
}
