use artinian::exactla::{Field, Matrix, PrimeField, Rationals};
use artinian::modules::{
    annihilator, attached_primes, colon_submodule, composition_series_length, double_dual_map,
    length, matlis_dual, melkersson_criterion, random_module, torsion_index, ModulePresentation,
};
use artinian::rings::{make_monomial_quotient, make_univariate_quotient, AlgebraRef};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(v: &[i64]) -> Vec<num_rational::BigRational> {
    v.iter().map(|&x| Rationals.from_i64(x)).collect()
}

fn rational_algebras() -> Vec<AlgebraRef<Rationals>> {
    vec![
        make_univariate_quotient(Rationals, &q(&[0, 1]), 3, "x").unwrap(),
        make_univariate_quotient(Rationals, &q(&[-2, 0, 1]), 2, "x").unwrap(),
        make_monomial_quotient(Rationals, 2, &[vec![2, 0], vec![0, 2]]).unwrap(),
        make_monomial_quotient(Rationals, 2, &[vec![3, 0], vec![1, 1], vec![0, 2]]).unwrap(),
    ]
}

fn f3_square() -> AlgebraRef<PrimeField> {
    // 𝔽_3[x]/((x² + 1)²), residue field 𝔽_9
    make_univariate_quotient(PrimeField::new(3).unwrap(), &[1, 0, 1], 2, "x").unwrap()
}

fn random_invertible<F: Field>(f: &F, n: usize, rng: &mut ChaCha8Rng) -> Matrix<F> {
    loop {
        let e = (0..n * n)
            .map(|_| f.from_i64(rng.gen_range(-2..=2)))
            .collect();
        let m = Matrix::new(f.clone(), n, n, e);
        if m.is_invertible() {
            return m;
        }
    }
}

fn check_module<F: Field>(
    m: &ModulePresentation<F>,
    rng: &mut ChaCha8Rng,
) -> Result<(), TestCaseError> {
    let a = m.algebra();
    prop_assert_eq!(composition_series_length(m), length(m));
    prop_assert_eq!(m.dim() % a.residue_dim(), 0);

    // ℓ(M) = ℓ(U) + ℓ(M/U) for a cyclic submodule U
    let gen: Vec<F::Elem> = (0..m.dim())
        .map(|_| m.field().from_i64(rng.gen_range(-2..=2)))
        .collect();
    let u = m.submodule_generated(&[gen]);
    let (quot, _) = m.quotient(&u).unwrap();
    prop_assert_eq!(length(m), length(&m.submodule(&u).unwrap()) + length(&quot));

    // the socle is nonzero exactly when M is
    let socle = colon_submodule(m, a.maximal_ideal()).unwrap();
    prop_assert_eq!(socle.is_zero(), m.is_zero());
    prop_assert_eq!(attached_primes(m).len(), usize::from(!m.is_zero()));
    prop_assert!(melkersson_criterion(m, a.maximal_ideal()));
    let t = torsion_index(m, a.maximal_ideal()).unwrap();
    prop_assert!(t <= a.nilpotency_index());

    // Matlis duality
    prop_assert!(double_dual_map(m).unwrap().is_bijective());
    prop_assert_eq!(length(&matlis_dual(m)), length(m));

    // invariants survive a change of basis
    let p = random_invertible(m.field(), m.dim(), rng);
    let c = m.change_basis(&p).unwrap();
    prop_assert_eq!(length(&c), length(m));
    prop_assert_eq!(composition_series_length(&c), composition_series_length(m));
    prop_assert_eq!(
        colon_submodule(&c, a.maximal_ideal()).unwrap().dim(),
        socle.dim()
    );
    prop_assert_eq!(annihilator(&c), annihilator(m));
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(25))]

    #[test]
    fn rational_module_invariants(seed in any::<u64>(), which in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = &rational_algebras()[which];
        let m = random_module(a, &mut rng);
        check_module(&m, &mut rng)?;
    }

    #[test]
    fn prime_module_invariants(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_module(&f3_square(), &mut rng);
        check_module(&m, &mut rng)?;
    }
}

#[test]
fn hundred_random_modules_have_matching_lengths() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let algebras = rational_algebras();
    for i in 0..100 {
        let m = random_module(&algebras[i % algebras.len()], &mut rng);
        assert_eq!(composition_series_length(&m), length(&m), "module {i}");
    }
}

#[test]
fn residue_field_of_extension_counts_once() {
    let a = f3_square();
    assert_eq!(a.residue_dim(), 2);
    assert_eq!(length(&ModulePresentation::regular(&a)), 2);
    assert_eq!(length(&ModulePresentation::residue_field(&a)), 1);
}
