use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;

use crate::error::Result;

/// A commutative ring whose elements know which concrete ring they belong to.
///
/// `Domain` is the runtime description of the ring (a prime modulus, say).
/// It lets a zero or a one be produced without an exemplar element, which
/// `num_traits::Zero` cannot express for runtime moduli.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
{
    type Domain: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn domain(&self) -> Self::Domain;
    fn zero(domain: &Self::Domain) -> Self;
    fn one(domain: &Self::Domain) -> Self;
    /// Canonical image of an integer.
    fn from_integer(domain: &Self::Domain, m: &BigInt) -> Self;
    fn is_zero(&self) -> bool;

    fn mul_ref(&self, rhs: &Self) -> Self {
        self.clone() * rhs.clone()
    }

    /// `self += a * b`
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        *self += &a.mul_ref(b);
    }

    /// `Σ a_i b_i`. Rings whose values normalize on every operation can
    /// override this to normalize once.
    fn sum_products<'a>(
        domain: &Self::Domain,
        pairs: impl Iterator<Item = (&'a Self, &'a Self)>,
    ) -> Self
    where
        Self: 'a,
    {
        let mut acc = Self::zero(domain);
        for (a, b) in pairs {
            acc.add_mul_assign(a, b);
        }
        acc
    }

    fn is_one(&self) -> bool {
        *self == Self::one(&self.domain())
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.domain());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }
}

/// A commutative field.
pub trait Field: Ring {
    fn inv(&self) -> Result<Self>;

    fn div_ref(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul_ref(&rhs.inv()?))
    }

    /// Number of elements, `None` for infinite fields.
    fn cardinality(domain: &Self::Domain) -> Option<u64>;

    /// Human-readable field descriptor, e.g. `Q` or `Fp:7`.
    fn describe(domain: &Self::Domain) -> String;

    /// Parses a scalar literal such as `-3/4` or `5`.
    fn parse_literal(domain: &Self::Domain, s: &str) -> Result<Self>;
}
