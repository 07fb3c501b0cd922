//! Built-in instances, also shipped as JSON under `fixtures/`.

use artinian::exactla::{Field, Matrix, PrimeField, Rationals};
use artinian::modules::ModulePresentation;
use artinian::rings::{
    extend_by_field, make_monomial_quotient, make_univariate_quotient, validate_algebra,
    validate_ring_map, AlgebraRef, RingMap,
};
use num_rational::BigRational;

use crate::instance::{
    AlgebraEntry, AnyInstance, InstanceFile, MapEntry, ModuleEntry, RequestEntry,
};
use crate::scalar::JsonScalar;

fn q(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| Rationals.from_i64(x)).collect()
}

/// Asserts the maximal ideal in the file whenever the table alone does not
/// certify localness, so the emitted file re-validates.
fn entry<F: Field>(algebra: &AlgebraRef<F>) -> AlgebraEntry<F> {
    let decidable = validate_algebra(algebra.presentation().clone(), None).is_ok();
    AlgebraEntry {
        algebra: algebra.clone(),
        asserted_ideal: !decidable,
    }
}

fn with_map<F: JsonScalar>(
    field: F,
    phi: &RingMap<F>,
    modules: Vec<(&str, &str, ModulePresentation<F>)>,
) -> InstanceFile<F> {
    let mut file = InstanceFile::new(field);
    file.algebras.insert("R".into(), entry(phi.source()));
    file.algebras.insert("S".into(), entry(phi.target()));
    file.maps.insert(
        "phi".into(),
        MapEntry {
            from: "R".into(),
            to: "S".into(),
            map: phi.clone(),
        },
    );
    let mut names = Vec::new();
    for (name, algebra, module) in modules {
        names.push(name.to_string());
        file.modules.insert(
            name.into(),
            ModuleEntry {
                algebra: algebra.into(),
                module,
            },
        );
    }
    file.requests.insert(
        "main".into(),
        RequestEntry {
            map: "phi".into(),
            modules: names,
        },
    );
    file
}

fn rationals() -> AlgebraRef<Rationals> {
    make_univariate_quotient(Rationals, &q(&[0, 1]), 1, "t").expect("ℚ is a field")
}

/// ℚ → ℚ(√2).
pub fn remark38() -> InstanceFile<Rationals> {
    let (_, phi) =
        extend_by_field(&rationals(), &q(&[-2, 0, 1]), "√2").expect("y² − 2 is irreducible");
    with_map(Rationals, &phi, vec![])
}

/// ℚ[x]/(x³) → ℚ(√2)[x]/(x³).
pub fn i2() -> InstanceFile<Rationals> {
    let r = make_univariate_quotient(Rationals, &q(&[0, 1]), 3, "x").expect("x is monic");
    let (s, phi) = extend_by_field(&r, &q(&[-2, 0, 1]), "√2").expect("y² − 2 is irreducible");
    let xr = ModulePresentation::cyclic(&r, &r.maximal_ideal_power(2)).expect("ideal");
    let ks = ModulePresentation::residue_field(&s);
    with_map(Rationals, &phi, vec![("R/x2", "R", xr), ("S/n", "S", ks)])
}

/// 𝔽_5 → 𝔽_25 = 𝔽_5[i]/(i² − 2).
pub fn i3() -> InstanceFile<PrimeField> {
    let f5 = PrimeField::new(5).expect("5 is prime");
    let base = make_univariate_quotient(f5, &[0, 1], 1, "t").expect("𝔽_5 is a field");
    let (_, phi) = extend_by_field(&base, &[3, 0, 1], "i").expect("2 is not a square mod 5");
    with_map(f5, &phi, vec![])
}

/// ℚ[x]/(x²) → ℚ[x,y]/(x², y²), x ↦ x.
pub fn i4() -> InstanceFile<Rationals> {
    let r = make_univariate_quotient(Rationals, &q(&[0, 1]), 2, "x").expect("x is monic");
    let s =
        make_monomial_quotient(Rationals, 2, &[vec![2, 0], vec![0, 2]]).expect("finite colength");
    let matrix = Matrix::from_columns(Rationals, 4, vec![q(&[1, 0, 0, 0]), q(&[0, 1, 0, 0])]);
    let phi = validate_ring_map(r.clone(), s, matrix).expect("x ↦ x is a local map");
    let k = ModulePresentation::residue_field(&r);
    with_map(Rationals, &phi, vec![("k", "R", k)])
}

/// ℚ → ℚ[y]/(y³).
pub fn i5() -> InstanceFile<Rationals> {
    let s = make_univariate_quotient(Rationals, &q(&[0, 1]), 3, "y").expect("y is monic");
    let matrix = Matrix::from_columns(Rationals, 3, vec![q(&[1, 0, 0])]);
    let phi = validate_ring_map(rationals(), s, matrix).expect("unital");
    with_map(Rationals, &phi, vec![])
}

/// ℚ[x]/(x³) onto itself re-presented on the basis `x, 1 + x, x²`.
pub fn i6() -> InstanceFile<Rationals> {
    let r = make_univariate_quotient(Rationals, &q(&[0, 1]), 3, "x").expect("x is monic");
    let change = Matrix::from_columns(
        Rationals,
        3,
        vec![q(&[0, 1, 0]), q(&[1, 1, 0]), q(&[0, 0, 1])],
    );
    let renamed = r
        .presentation()
        .change_basis(&change)
        .expect("invertible change of basis")
        .with_labels(vec!["x".into(), "(1+x)".into(), "x^2".into()])
        .with_provenance("renamed");
    let s = validate_algebra(renamed, None).expect("renaming preserves localness");
    let inverse = change.inverse().expect("invertible");
    let phi =
        validate_ring_map(r.clone(), s.clone(), inverse).expect("renaming is a ring isomorphism");
    let m = ModulePresentation::cyclic(&s, &s.maximal_ideal_power(2)).expect("ideal");
    with_map(Rationals, &phi, vec![("S/n2", "S", m)])
}

/// ℚ[x]/(x²) → ℚ, x ↦ 0: local, not flat.
pub fn nonflat() -> InstanceFile<Rationals> {
    let r = make_univariate_quotient(Rationals, &q(&[0, 1]), 2, "x").expect("x is monic");
    let matrix = Matrix::from_rows(Rationals, 2, vec![q(&[1, 0])]);
    let phi = validate_ring_map(r, rationals(), matrix).expect("x ↦ 0 is a local map");
    with_map(Rationals, &phi, vec![])
}

/// Fixture file names and their instances, in emission order.
pub fn catalog() -> Vec<(&'static str, AnyInstance)> {
    vec![
        ("remark38.json", AnyInstance::Rational(remark38())),
        ("i2.json", AnyInstance::Rational(i2())),
        ("i3.json", AnyInstance::Prime(i3())),
        ("i4.json", AnyInstance::Rational(i4())),
        ("i5.json", AnyInstance::Rational(i5())),
        ("i6.json", AnyInstance::Rational(i6())),
        ("controls/nonflat.json", AnyInstance::Rational(nonflat())),
    ]
}

/// A two-dimensional table with `e0·e1 = e1` but `e1·e0 = 0`.
pub const NONCOMMUTATIVE: &str = r#"{
  "algebras": {
    "S": {
      "dim": 2,
      "mul": [
        [["1", "0"], ["0", "1"]],
        [["0", "0"], ["0", "0"]]
      ],
      "unit": ["1", "0"]
    }
  },
  "field": {
    "kind": "Q"
  }
}
"#;
