//! Dense univariate polynomials over a [`Field`], coefficients in ascending order.

use super::field::Field;

pub fn trimmed<F: Field>(field: &F, f: &[F::Elem]) -> Vec<F::Elem> {
    let mut v = f.to_vec();
    while v.last().is_some_and(|c| field.is_zero(c)) {
        v.pop();
    }
    v
}

/// Degree, with `None` for the zero polynomial.
pub fn degree<F: Field>(field: &F, f: &[F::Elem]) -> Option<usize> {
    f.iter().rposition(|c| !field.is_zero(c))
}

pub fn eval<F: Field>(field: &F, f: &[F::Elem], x: &F::Elem) -> F::Elem {
    let mut acc = field.zero();
    for c in f.iter().rev() {
        acc = field.add(&field.mul(&acc, x), c);
    }
    acc
}

pub fn add<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let n = a.len().max(b.len());
    let z = field.zero();
    let out: Vec<_> = (0..n)
        .map(|i| field.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trimmed(field, &out)
}

pub fn sub<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let n = a.len().max(b.len());
    let z = field.zero();
    let out: Vec<_> = (0..n)
        .map(|i| field.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trimmed(field, &out)
}

pub fn mul<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = field.zero_vec(a.len() + b.len() - 1);
    for (i, x) in a.iter().enumerate() {
        if field.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = field.add(&out[i + j], &field.mul(x, y));
        }
    }
    trimmed(field, &out)
}

pub fn pow<F: Field>(field: &F, f: &[F::Elem], e: usize) -> Vec<F::Elem> {
    let mut acc = vec![field.one()];
    for _ in 0..e {
        acc = mul(field, &acc, f);
    }
    acc
}

/// Quotient and remainder; panics on a zero divisor.
pub fn div_rem<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> (Vec<F::Elem>, Vec<F::Elem>) {
    let b = trimmed(field, b);
    let db = b
        .len()
        .checked_sub(1)
        .expect("division by the zero polynomial");
    let lead_inv = field.inv(&b[db]).expect("nonzero leading coefficient");
    let mut r = trimmed(field, a);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = field.zero_vec(r.len() - db);
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let c = field.mul(&r[r.len() - 1], &lead_inv);
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] = field.sub(&r[shift + i], &field.mul(&c, bc));
        }
        q[shift] = c;
        r.pop();
        r = trimmed(field, &r);
    }
    (trimmed(field, &q), r)
}

pub fn rem<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    div_rem(field, a, b).1
}

pub fn monic<F: Field>(field: &F, f: &[F::Elem]) -> Vec<F::Elem> {
    let f = trimmed(field, f);
    match f.last() {
        None => f,
        Some(lead) => {
            let inv = field.inv(lead).unwrap();
            field.scale_vec(&inv, &f)
        }
    }
}

/// Monic gcd.
pub fn gcd<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut a = trimmed(field, a);
    let mut b = trimmed(field, b);
    while !b.is_empty() {
        let r = rem(field, &a, &b);
        a = b;
        b = r;
    }
    monic(field, &a)
}

pub fn mul_mod<F: Field>(
    field: &F,
    a: &[F::Elem],
    b: &[F::Elem],
    modulus: &[F::Elem],
) -> Vec<F::Elem> {
    rem(field, &mul(field, a, b), modulus)
}

pub fn pow_mod<F: Field>(
    field: &F,
    base: &[F::Elem],
    mut e: u64,
    modulus: &[F::Elem],
) -> Vec<F::Elem> {
    let mut acc = rem(field, &[field.one()], modulus);
    let mut b = rem(field, base, modulus);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(field, &acc, &b, modulus);
        }
        b = mul_mod(field, &b, &b, modulus);
        e >>= 1;
    }
    acc
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's irreducibility test over a prime field: `f` of degree `n` is
/// irreducible iff `f | x^{p^n} - x` and `gcd(f, x^{p^{n/r}} - x) = 1` for every
/// prime `r | n`. `field` must have positive characteristic.
pub fn rabin_irreducible<F: Field>(field: &F, f: &[F::Elem]) -> bool {
    let p = field.characteristic();
    assert!(p > 0, "Rabin test needs a finite prime field");
    let f = monic(field, f);
    let n = match f.len().checked_sub(1) {
        None | Some(0) => return false,
        Some(n) => n,
    };
    if n == 1 {
        return true;
    }
    let x = vec![field.zero(), field.one()];
    // frob[k] = x^{p^k} mod f
    let mut frob = vec![rem(field, &x, &f)];
    for k in 1..=n {
        let next = pow_mod(field, &frob[k - 1], p, &f);
        frob.push(next);
    }
    if !sub(field, &frob[n], &rem(field, &x, &f)).is_empty() {
        return false;
    }
    for r in prime_divisors(n) {
        let h = sub(field, &frob[n / r], &x);
        if gcd(field, &f, &h).len() != 1 {
            return false;
        }
    }
    true
}
