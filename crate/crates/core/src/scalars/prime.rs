use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use super::traits::{Field, Ring};
use crate::error::{Error, Result};

/// The prime field F_p. Construction checks primality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(PrimeField { p })
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn element(&self, value: u64) -> Fp {
        Fp {
            value: value % self.p,
            field: *self,
        }
    }

    pub fn from_i64(&self, m: i64) -> Fp {
        self.element((m as i128).rem_euclid(self.p as i128) as u64)
    }

    /// Elements `0, 1, ..., p-1` in order.
    pub fn elements(&self) -> impl Iterator<Item = Fp> + '_ {
        (0..self.p).map(move |v| self.element(v))
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fp:{}", self.p)
    }
}

/// Deterministic Miller-Rabin, exact for every 64-bit input.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    acc
}

/// An element of F_p, stored as its canonical residue in `[0, p)`.
///
/// Arithmetic between elements of different prime fields panics; use the
/// `checked_*` methods where mixed inputs are possible.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Fp {
    value: u64,
    field: PrimeField,
}

impl Fp {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    fn check(&self, other: &Fp) -> Result<u64> {
        if self.field != other.field {
            Err(Error::DomainMismatch(
                self.field.to_string(),
                other.field.to_string(),
            ))
        } else {
            Ok(self.field.p)
        }
    }

    fn expect_same(&self, other: &Fp) -> u64 {
        match self.check(other) {
            Ok(p) => p,
            Err(e) => panic!("{e}"),
        }
    }

    pub fn checked_add(&self, other: &Fp) -> Result<Fp> {
        let p = self.check(other)?;
        Ok(self
            .field
            .element(((self.value as u128 + other.value as u128) % p as u128) as u64))
    }

    pub fn checked_mul(&self, other: &Fp) -> Result<Fp> {
        let p = self.check(other)?;
        Ok(self.field.element(mul_mod(self.value, other.value, p)))
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.field.p)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Hash for Fp {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.value.hash(state);
        self.field.p.hash(state);
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        let p = self.expect_same(&rhs);
        let s = self.value as u128 + rhs.value as u128;
        self.field.element((s % p as u128) as u64)
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self + (-rhs)
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        if self.value == 0 {
            self
        } else {
            self.field.element(self.field.p - self.value)
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        let p = self.expect_same(&rhs);
        self.field.element(mul_mod(self.value, rhs.value, p))
    }
}

impl AddAssign<&Fp> for Fp {
    fn add_assign(&mut self, rhs: &Fp) {
        *self = *self + *rhs;
    }
}

impl SubAssign<&Fp> for Fp {
    fn sub_assign(&mut self, rhs: &Fp) {
        *self = *self - *rhs;
    }
}

impl Ring for Fp {
    type Domain = PrimeField;

    fn domain(&self) -> PrimeField {
        self.field
    }

    fn zero(d: &PrimeField) -> Self {
        d.element(0)
    }

    fn one(d: &PrimeField) -> Self {
        d.element(1)
    }

    fn from_integer(d: &PrimeField, m: &BigInt) -> Self {
        let r = m.mod_floor(&BigInt::from(d.p));
        debug_assert!(!r.is_negative());
        d.element(r.to_u64().expect("residue fits in u64"))
    }

    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        *self * *rhs
    }

    fn pow(&self, e: u64) -> Self {
        self.field.element(pow_mod(self.value, e, self.field.p))
    }
}

impl Field for Fp {
    fn inv(&self) -> Result<Self> {
        if self.value == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Ring::pow(self, self.field.p - 2))
    }

    fn cardinality(d: &PrimeField) -> Option<u64> {
        Some(d.p)
    }

    fn describe(d: &PrimeField) -> String {
        d.to_string()
    }

    fn parse_literal(d: &PrimeField, s: &str) -> Result<Self> {
        let q = super::rational::parse_rational(s)?;
        let num = Fp::from_integer(d, q.numer());
        let den = Fp::from_integer(d, q.denom());
        num.div_ref(&den)
    }
}
