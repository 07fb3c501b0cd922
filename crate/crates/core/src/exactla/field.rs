//! Ground fields: the rationals and prime fields.
//!
//! A [`Field`] value is a context object. Elements are plain data (`BigRational`
//! for ℚ, a reduced residue `u64` for 𝔽_p) and every operation goes through the
//! context, so a runtime modulus never has to live inside each element.

use std::fmt::{self, Debug, Display};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use super::poly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("cannot parse scalar {0:?}")]
    BadScalar(String),
}

/// Runtime description of a ground field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldDescriptor {
    Q,
    Fp(u64),
}

impl FieldDescriptor {
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if is_prime(p) {
            Ok(FieldDescriptor::Fp(p))
        } else {
            Err(FieldError::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldDescriptor::Q => 0,
            FieldDescriptor::Fp(p) => *p,
        }
    }
}

impl Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Q => write!(f, "Q"),
            FieldDescriptor::Fp(p) => write!(f, "F_{p}"),
        }
    }
}

/// Outcome of an irreducibility test on a monic polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    Reducible,
    Unknown,
}

/// An exact field, used as an arithmetic context for its elements.
pub trait Field: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Debug + Send + Sync;

    fn descriptor(&self) -> FieldDescriptor;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// Canonical text form: `a/b` or `a` for ℚ, the residue in `[0, p)` for 𝔽_p.
    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem, FieldError>;
    /// Whether `a` prints as a plain integer (used when rendering linear combinations).
    fn is_integral(&self, a: &Self::Elem) -> bool;

    /// Decide irreducibility of a monic polynomial (ascending coefficients).
    fn irreducibility(&self, f: &[Self::Elem]) -> Irreducibility;
    /// Some root of `f` in the field, when one can be found.
    fn find_root(&self, f: &[Self::Elem]) -> Option<Self::Elem>;

    fn characteristic(&self) -> u64 {
        self.descriptor().characteristic()
    }

    /// Sign used when rendering; only ℚ has one.
    fn is_negative(&self, _a: &Self::Elem) -> bool {
        false
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn zero_vec(&self, n: usize) -> Vec<Self::Elem> {
        vec![self.zero(); n]
    }

    fn unit_vec(&self, n: usize, i: usize) -> Vec<Self::Elem> {
        let mut v = self.zero_vec(n);
        v[i] = self.one();
        v
    }

    fn is_zero_vec(&self, v: &[Self::Elem]) -> bool {
        v.iter().all(|x| self.is_zero(x))
    }

    fn add_vec(&self, a: &[Self::Elem], b: &[Self::Elem]) -> Vec<Self::Elem> {
        debug_assert_eq!(a.len(), b.len());
        a.iter().zip(b).map(|(x, y)| self.add(x, y)).collect()
    }

    fn sub_vec(&self, a: &[Self::Elem], b: &[Self::Elem]) -> Vec<Self::Elem> {
        debug_assert_eq!(a.len(), b.len());
        a.iter().zip(b).map(|(x, y)| self.sub(x, y)).collect()
    }

    fn scale_vec(&self, c: &Self::Elem, v: &[Self::Elem]) -> Vec<Self::Elem> {
        v.iter().map(|x| self.mul(c, x)).collect()
    }

    /// `acc += c * v`
    fn axpy(&self, acc: &mut [Self::Elem], c: &Self::Elem, v: &[Self::Elem]) {
        if self.is_zero(c) {
            return;
        }
        for (a, x) in acc.iter_mut().zip(v) {
            if !self.is_zero(x) {
                *a = self.add(a, &self.mul(c, x));
            }
        }
    }

    fn dot(&self, a: &[Self::Elem], b: &[Self::Elem]) -> Self::Elem {
        let mut acc = self.zero();
        for (x, y) in a.iter().zip(b) {
            if !self.is_zero(x) && !self.is_zero(y) {
                acc = self.add(&acc, &self.mul(x, y));
            }
        }
        acc
    }
}

/// The field ℚ of rational numbers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Q
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn parse(&self, s: &str) -> Result<BigRational, FieldError> {
        let bad = || FieldError::BadScalar(s.to_string());
        let t = s.trim();
        match t.split_once('/') {
            None => t
                .parse::<BigInt>()
                .map(BigRational::from_integer)
                .map_err(|_| bad()),
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(BigRational::new(n, d))
            }
        }
    }
    fn is_integral(&self, a: &BigRational) -> bool {
        a.is_integer()
    }
    fn is_negative(&self, a: &BigRational) -> bool {
        a.numer().sign() == Sign::Minus
    }

    fn irreducibility(&self, f: &[BigRational]) -> Irreducibility {
        rational_irreducibility(f)
    }

    fn find_root(&self, f: &[BigRational]) -> Option<BigRational> {
        rational_root(f)
    }
}

/// The prime field 𝔽_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        FieldDescriptor::prime(p).map(|_| PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce_bigint(&self, n: &BigInt) -> u64 {
        let r = n.mod_floor(&BigInt::from(self.p));
        r.to_u64().expect("residue fits in u64")
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Fp(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.p as u128 - *b as u128) % self.p as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // Fermat
        Some(self.pow(a, self.p - 2))
    }
    fn from_i64(&self, n: i64) -> u64 {
        (n as i128).rem_euclid(self.p as i128) as u64
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<u64, FieldError> {
        let v: u64 = s
            .trim()
            .parse()
            .map_err(|_| FieldError::BadScalar(s.to_string()))?;
        if v >= self.p {
            return Err(FieldError::BadScalar(s.to_string()));
        }
        Ok(v)
    }
    fn is_integral(&self, _a: &u64) -> bool {
        true
    }

    fn irreducibility(&self, f: &[u64]) -> Irreducibility {
        if poly::rabin_irreducible(self, f) {
            Irreducibility::Irreducible
        } else {
            Irreducibility::Reducible
        }
    }

    fn find_root(&self, f: &[u64]) -> Option<u64> {
        // Roots are the linear factors of gcd(f, x^p - x); only scanned for small p.
        if self.p > 1 << 16 {
            return None;
        }
        (0..self.p).find(|x| self.is_zero(&poly::eval(self, f, x)))
    }
}

/// Deterministic Miller–Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        acc
    };
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Clears denominators of a rational polynomial and removes the content.
fn primitive_integer_poly(f: &[BigRational]) -> Vec<BigInt> {
    let lcm = f.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = f.iter().map(|c| (c * &lcm).to_integer()).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if content.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| c / &content).collect()
}

const DIVISOR_LIMIT: u64 = 1_000_000_000_000;

fn positive_divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > DIVISOR_LIMIT {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

/// Rational root search by the rational root theorem. Gives up (returns
/// `None`) when the constant or leading coefficient is too large to factor.
pub(crate) fn rational_root(f: &[BigRational]) -> Option<BigRational> {
    let q = Rationals;
    let f = poly::trimmed(&q, f);
    if f.len() <= 1 {
        return None;
    }
    if f[0].is_zero() {
        return Some(BigRational::zero());
    }
    let ints = primitive_integer_poly(&f);
    let lead = ints.last().unwrap();
    let constant = &ints[0];
    let num_divs = positive_divisors(constant)?;
    let den_divs = positive_divisors(lead)?;
    for a in &num_divs {
        for b in &den_divs {
            if BigInt::from(*a).gcd(&BigInt::from(*b)) != BigInt::one() {
                continue;
            }
            for sign in [1i64, -1] {
                let cand = BigRational::new(BigInt::from(*a) * sign, BigInt::from(*b));
                if poly::eval(&q, &f, &cand).is_zero() {
                    return Some(cand);
                }
            }
        }
    }
    None
}

/// Primes tried for reduction-mod-q irreducibility certificates.
const CERTIFICATE_PRIMES: usize = 40;

fn rational_irreducibility(f: &[BigRational]) -> Irreducibility {
    let q = Rationals;
    let f = poly::trimmed(&q, f);
    let deg = f.len().saturating_sub(1);
    if deg == 0 {
        return Irreducibility::Reducible;
    }
    if deg == 1 {
        return Irreducibility::Irreducible;
    }
    let root_search = rational_root(&f);
    if root_search.is_some() {
        return Irreducibility::Reducible;
    }
    let ints = primitive_integer_poly(&f);
    let root_test_complete =
        positive_divisors(&ints[0]).is_some() && positive_divisors(ints.last().unwrap()).is_some();
    if deg <= 3 && root_test_complete {
        return Irreducibility::Irreducible;
    }
    let lead = ints.last().unwrap().clone();
    let mut tried = 0;
    let mut p = 2u64;
    while tried < CERTIFICATE_PRIMES {
        p += 1;
        if !is_prime(p) {
            continue;
        }
        if (&lead % BigInt::from(p)).is_zero() {
            continue;
        }
        tried += 1;
        let fp = PrimeField { p };
        let lead_inv = fp.inv(&fp.reduce_bigint(&lead)).unwrap();
        let reduced: Vec<u64> = ints
            .iter()
            .map(|c| fp.mul(&fp.reduce_bigint(c), &lead_inv))
            .collect();
        if poly::rabin_irreducible(&fp, &reduced) {
            return Irreducibility::Irreducible;
        }
    }
    Irreducibility::Unknown
}
