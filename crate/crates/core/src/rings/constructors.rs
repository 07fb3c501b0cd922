//! Algebras that are local by construction.

use crate::exactla::{poly, Field, Irreducibility, Matrix, Subspace};

use super::algebra::AlgebraPresentation;
use super::local::{validate_with_hint, AlgebraRef, LocalHint};
use super::map::{validate_ring_map, RingMap};
use super::RingError;

fn power_label(var: &str, e: usize) -> String {
    match e {
        0 => "1".to_string(),
        1 => var.to_string(),
        _ => format!("{var}^{e}"),
    }
}

fn check_irreducible<F: Field>(field: &F, f: &[F::Elem]) -> Result<LocalHint, RingError> {
    match field.irreducibility(f) {
        Irreducibility::Irreducible => Ok(LocalHint::ByConstruction),
        Irreducibility::Reducible => Err(RingError::ReducibleFactor),
        Irreducibility::Unknown => Ok(LocalHint::None),
    }
}

/// `K[x]/(f^e)` with monomial basis `1, x, …, x^{e·deg f − 1}` and maximal
/// ideal `(f(x))`. `f` is given by ascending coefficients and must be monic.
///
/// Over ℚ irreducibility is certified by the rational root test and
/// reductions modulo small primes; when neither settles it the algebra is
/// accepted with an `asserted` certificate.
pub fn make_univariate_quotient<F: Field>(
    field: F,
    f: &[F::Elem],
    e: usize,
    var: &str,
) -> Result<AlgebraRef<F>, RingError> {
    let f = poly::trimmed(&field, f);
    let deg = match f.len().checked_sub(1) {
        Some(d) if d >= 1 => d,
        _ => {
            return Err(RingError::BadShape(
                "polynomial of degree at least 1 required".into(),
            ))
        }
    };
    if !field.is_one(&f[deg]) {
        return Err(RingError::NotMonic);
    }
    if e == 0 {
        return Err(RingError::BadShape("exponent must be at least 1".into()));
    }
    let hint = check_irreducible(&field, &f)?;
    let modulus = poly::pow(&field, &f, e);
    let n = deg * e;
    let reduce = |mut v: Vec<F::Elem>| {
        v = poly::rem(&field, &v, &modulus);
        v.resize(n, field.zero());
        v
    };
    let monomial = |k: usize| {
        let mut v = field.zero_vec(k + 1);
        v[k] = field.one();
        v
    };
    let mul = (0..n)
        .map(|i| (0..n).map(|j| reduce(monomial(i + j))).collect())
        .collect();
    let maximal = (0..n - deg)
        .map(|k| reduce(poly::mul(&field, &f, &monomial(k))))
        .collect::<Vec<_>>();
    let maximal = Subspace::from_spanning(field.clone(), n, maximal);
    let mut tag = format!("univariate:e={e}");
    if hint == LocalHint::None {
        tag.push_str(":asserted-irreducible");
    }
    let p = AlgebraPresentation::new(field.clone(), reduce(monomial(0)), mul)?
        .with_labels((0..n).map(|k| power_label(var, k)).collect())
        .with_provenance(tag);
    validate_with_hint(p, Some(maximal), hint)
}

fn default_variable_names(d: usize) -> Vec<String> {
    const NAMES: [&str; 4] = ["x", "y", "z", "w"];
    if d <= NAMES.len() {
        NAMES[..d].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=d).map(|i| format!("x{i}")).collect()
    }
}

fn monomial_label(names: &[String], exps: &[u32]) -> String {
    let parts: Vec<String> = exps
        .iter()
        .zip(names)
        .filter(|(e, _)| **e > 0)
        .map(|(e, n)| power_label(n, *e as usize))
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.concat()
    }
}

/// `K[x_1, …, x_d]/I` for a monomial ideal `I` of finite colength, on the
/// basis of standard monomials ordered by degree, then with earlier variables
/// first.
pub fn make_monomial_quotient<F: Field>(
    field: F,
    d: usize,
    gens: &[Vec<u32>],
) -> Result<AlgebraRef<F>, RingError> {
    if gens.iter().any(|g| g.len() != d) {
        return Err(RingError::BadShape(format!(
            "generators must have {d} exponents"
        )));
    }
    let divides = |g: &[u32], m: &[u32]| g.iter().zip(m).all(|(a, b)| a <= b);
    let mut bounds = Vec::with_capacity(d);
    for v in 0..d {
        let pure = gens
            .iter()
            .filter(|g| g.iter().enumerate().all(|(i, &e)| i == v || e == 0) && g[v] > 0)
            .map(|g| g[v])
            .min();
        match pure {
            Some(b) => bounds.push(b),
            None => return Err(RingError::InfiniteColength),
        }
    }
    let mut standard: Vec<Vec<u32>> = vec![Vec::new()];
    for &b in &bounds {
        standard = standard
            .into_iter()
            .flat_map(|m| {
                (0..b).map(move |e| {
                    let mut m = m.clone();
                    m.push(e);
                    m
                })
            })
            .collect();
    }
    standard.retain(|m| !gens.iter().any(|g| divides(g, m)));
    standard.sort_by(|a, b| {
        let da: u32 = a.iter().sum();
        let db: u32 = b.iter().sum();
        da.cmp(&db).then_with(|| b.cmp(a))
    });
    let n = standard.len();
    let index_of = |m: &[u32]| standard.iter().position(|s| s.as_slice() == m);
    let mul = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let prod: Vec<u32> = standard[i]
                        .iter()
                        .zip(&standard[j])
                        .map(|(a, b)| a + b)
                        .collect();
                    match index_of(&prod) {
                        Some(k) if !gens.iter().any(|g| divides(g, &prod)) => field.unit_vec(n, k),
                        _ => field.zero_vec(n),
                    }
                })
                .collect()
        })
        .collect();
    let names = default_variable_names(d);
    let maximal = Subspace::from_spanning(
        field.clone(),
        n,
        (1..n).map(|k| field.unit_vec(n, k)).collect::<Vec<_>>(),
    );
    let p = AlgebraPresentation::new(field.clone(), field.unit_vec(n, 0), mul)?
        .with_labels(standard.iter().map(|m| monomial_label(&names, m)).collect())
        .with_provenance("monomial-quotient");
    validate_with_hint(p, Some(maximal), LocalHint::ByConstruction)
}

fn combine_labels(r: &str, y: &str) -> String {
    match (r, y) {
        ("1", _) => y.to_string(),
        (_, "1") => r.to_string(),
        _ => format!("{r}·{y}"),
    }
}

/// `S = (K[y]/(g)) ⊗_K R` together with the inclusion `r ↦ r ⊗ 1`.
///
/// The basis of `S` is `e_i ⊗ y^a` at index `i·deg g + a`. Requires the residue
/// field of `R` to be `K` itself, so the fiber is the field `K[y]/(g)`.
pub fn extend_by_field<F: Field>(
    r: &AlgebraRef<F>,
    g: &[F::Elem],
    var: &str,
) -> Result<(AlgebraRef<F>, RingMap<F>), RingError> {
    let field = r.field().clone();
    if r.residue_dim() != 1 {
        return Err(RingError::ResidueNotBase);
    }
    let fiber = make_univariate_quotient(field.clone(), g, 1, var)?;
    let hint = match fiber.certificate() {
        super::LocalCertificate::Asserted => LocalHint::None,
        _ => LocalHint::ByConstruction,
    };
    let (n, d) = (r.dim(), fiber.dim());
    let dim = n * d;
    let idx = |i: usize, a: usize| i * d + a;
    let rp = r.presentation();
    let fp = fiber.presentation();
    let mut mul = vec![vec![field.zero_vec(dim); dim]; dim];
    for i in 0..n {
        for a in 0..d {
            for j in 0..n {
                for b in 0..d {
                    let rc = rp.product_of_basis(i, j);
                    let fc = fp.product_of_basis(a, b);
                    let out = &mut mul[idx(i, a)][idx(j, b)];
                    for (k, x) in rc.iter().enumerate() {
                        if field.is_zero(x) {
                            continue;
                        }
                        for (c, y) in fc.iter().enumerate() {
                            out[idx(k, c)] = field.add(&out[idx(k, c)], &field.mul(x, y));
                        }
                    }
                }
            }
        }
    }
    let mut unit = field.zero_vec(dim);
    for (i, x) in r.unit().iter().enumerate() {
        unit[idx(i, 0)] = x.clone();
    }
    let mut maximal_gens = Vec::new();
    for v in r.maximal_ideal().vectors() {
        for a in 0..d {
            let mut w = field.zero_vec(dim);
            for (i, x) in v.iter().enumerate() {
                w[idx(i, a)] = x.clone();
            }
            maximal_gens.push(w);
        }
    }
    let maximal = Subspace::from_spanning(field.clone(), dim, maximal_gens);
    let r_labels: Vec<String> = rp
        .labels()
        .map(|l| l.to_vec())
        .unwrap_or_else(|| (0..n).map(|i| format!("e{i}")).collect());
    let f_labels = fp.labels().unwrap().to_vec();
    let labels = (0..n)
        .flat_map(|i| {
            (0..d)
                .map(|a| combine_labels(&r_labels[i], &f_labels[a]))
                .collect::<Vec<_>>()
        })
        .collect();
    let p = AlgebraPresentation::new(field.clone(), unit, mul)?
        .with_labels(labels)
        .with_provenance(format!("field-extension:deg={d}"));
    let s = validate_with_hint(p, Some(maximal), hint)?;
    let inclusion = Matrix::from_columns(
        field.clone(),
        dim,
        (0..n).map(|i| field.unit_vec(dim, idx(i, 0))).collect(),
    );
    let phi = validate_ring_map(r.clone(), s.clone(), inclusion)?;
    Ok((s, phi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{PrimeField, Rationals};
    use crate::rings::LocalCertificate;
    use num_rational::BigRational;

    fn q(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| Rationals.from_i64(x)).collect()
    }

    #[test]
    fn univariate_examples() {
        let s = make_univariate_quotient(Rationals, &q(&[-2, 0, 1]), 1, "√2").unwrap();
        assert_eq!(s.dim(), 2);
        assert!(s.maximal_ideal().is_zero());
        assert_eq!(s.certificate(), LocalCertificate::ByConstruction);
        // √2 · √2 = 2
        assert_eq!(s.multiply(&q(&[0, 1]), &q(&[0, 1])), q(&[2, 0]));

        let x3 = make_univariate_quotient(Rationals, &q(&[0, 1]), 3, "x").unwrap();
        assert_eq!(x3.maximal_ideal().dim(), 2);
        assert_eq!(x3.nilpotency_index(), 3);

        let f5 = PrimeField::new(5).unwrap();
        let f25 = make_univariate_quotient(f5, &[3, 0, 1], 1, "y").unwrap();
        assert_eq!(f25.residue_dim(), 2);
    }

    #[test]
    fn univariate_errors() {
        assert_eq!(
            make_univariate_quotient(Rationals, &q(&[-2, 0, 2]), 1, "y").unwrap_err(),
            RingError::NotMonic
        );
        assert_eq!(
            make_univariate_quotient(Rationals, &q(&[-4, 0, 1]), 1, "y").unwrap_err(),
            RingError::ReducibleFactor
        );
    }

    #[test]
    fn powers_of_irreducible_quadratic() {
        // Q[y]/((y^2-2)^2): dim 4, m = (y^2 - 2), residue Q(√2)
        let a = make_univariate_quotient(Rationals, &q(&[-2, 0, 1]), 2, "y").unwrap();
        assert_eq!(a.dim(), 4);
        assert_eq!(a.maximal_ideal().dim(), 2);
        assert_eq!(a.residue_dim(), 2);
        assert_eq!(a.nilpotency_index(), 2);
    }

    #[test]
    fn monomial_quotients() {
        let a = make_monomial_quotient(Rationals, 1, &[vec![2]]).unwrap();
        assert_eq!(a.dim(), 2);
        let b = make_monomial_quotient(Rationals, 2, &[vec![2, 0], vec![0, 2]]).unwrap();
        assert_eq!(b.presentation().labels().unwrap(), &["1", "x", "y", "xy"]);
        assert_eq!(b.nilpotency_index(), 3);
        assert_eq!(
            make_monomial_quotient(Rationals, 2, &[vec![2, 0]]).unwrap_err(),
            RingError::InfiniteColength
        );
        // (x^2, xy, y^3): basis 1, x, y, y^2
        let c =
            make_monomial_quotient(Rationals, 2, &[vec![2, 0], vec![1, 1], vec![0, 3]]).unwrap();
        assert_eq!(c.presentation().labels().unwrap(), &["1", "x", "y", "y^2"]);
    }

    #[test]
    fn field_extensions() {
        let qq = make_univariate_quotient(Rationals, &q(&[0, 1]), 1, "x").unwrap();
        let (s, phi) = extend_by_field(&qq, &q(&[-2, 0, 1]), "√2").unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(phi.matrix().column(0), q(&[1, 0]));

        let x3 = make_univariate_quotient(Rationals, &q(&[0, 1]), 3, "x").unwrap();
        let (s, _) = extend_by_field(&x3, &q(&[-2, 0, 1]), "√2").unwrap();
        assert_eq!(s.dim(), 6);
        assert_eq!(s.residue_dim(), 2);
        assert_eq!(s.nilpotency_index(), 3);

        let sqrt2 = make_univariate_quotient(Rationals, &q(&[-2, 0, 1]), 1, "y").unwrap();
        assert_eq!(
            extend_by_field(&sqrt2, &q(&[-3, 0, 1]), "z").unwrap_err(),
            RingError::ResidueNotBase
        );
    }
}
