use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::scalars::{Field, Ring};

/// Order at ε = 0. The zero element has order `Infinite`, which compares
/// above every finite exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(e) => Some(e),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(e) => write!(f, "{e}"),
            Valuation::Infinite => write!(f, "+inf"),
        }
    }
}

/// A Laurent polynomial `Σ c_e ε^e` with finitely many terms.
///
/// Stored densely from the lowest to the highest nonzero exponent; the zero
/// element is the empty vector.
#[derive(Clone, PartialEq)]
pub struct Laurent<F: Ring> {
    domain: F::Domain,
    low: i64,
    coeffs: Vec<F>,
}

impl<F: Ring> Laurent<F> {
    pub fn zero(domain: &F::Domain) -> Self {
        Laurent {
            domain: domain.clone(),
            low: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: F) -> Self {
        Self::monomial(c, 0)
    }

    /// `c·ε^e`
    pub fn monomial(c: F, e: i64) -> Self {
        let domain = c.domain();
        Self::from_dense(domain, e, vec![c])
    }

    /// `ε^e`
    pub fn epsilon_pow(domain: &F::Domain, e: i64) -> Self {
        Self::monomial(F::one(domain), e)
    }

    /// Builds from a dense run of coefficients starting at exponent `low`.
    pub fn from_dense(domain: F::Domain, low: i64, coeffs: Vec<F>) -> Self {
        let mut l = Laurent {
            domain,
            low,
            coeffs,
        };
        l.normalize();
        l
    }

    pub fn from_terms(domain: &F::Domain, terms: impl IntoIterator<Item = (i64, F)>) -> Self {
        let mut acc = Self::zero(domain);
        for (e, c) in terms {
            acc += &Self::monomial(c, e);
        }
        acc
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn domain_ref(&self) -> &F::Domain {
        &self.domain
    }

    /// Least exponent with a nonzero coefficient.
    pub fn min_exponent(&self) -> Valuation {
        if self.coeffs.is_empty() {
            Valuation::Infinite
        } else {
            Valuation::Finite(self.low)
        }
    }

    pub fn max_exponent(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.low + self.coeffs.len() as i64 - 1)
        }
    }

    /// Nonzero terms `(exponent, coefficient)` in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &F)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms().count()
    }

    pub fn coeff(&self, e: i64) -> F {
        let i = e - self.low;
        if i < 0 || i >= self.coeffs.len() as i64 {
            F::zero(&self.domain)
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    /// Multiplies by `ε^k`.
    pub fn shift(&self, k: i64) -> Self {
        let mut out = self.clone();
        if !out.coeffs.is_empty() {
            out.low = out.low.checked_add(k).expect("epsilon exponent overflow");
        }
        out
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::from_dense(
            self.domain.clone(),
            self.low,
            self.coeffs.iter().map(|a| a.mul_ref(c)).collect(),
        )
    }

    /// Drops every term with exponent `>= cap`.
    pub fn truncate(&self, cap: i64) -> Self {
        if self.coeffs.is_empty() || cap <= self.low {
            return Self::zero(&self.domain);
        }
        let room = cap.saturating_sub(self.low);
        let keep = usize::try_from(room)
            .unwrap_or(usize::MAX)
            .min(self.coeffs.len());
        Self::from_dense(self.domain.clone(), self.low, self.coeffs[..keep].to_vec())
    }

    /// The product restricted to exponents `< cap`.
    pub fn mul_truncated(&self, rhs: &Self, cap: i64) -> Self {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Self::zero(&self.domain);
        }
        let low = self
            .low
            .checked_add(rhs.low)
            .expect("epsilon exponent overflow");
        if low >= cap {
            return Self::zero(&self.domain);
        }
        let full = self.coeffs.len() + rhs.coeffs.len() - 1;
        let room = cap.saturating_sub(low);
        let len = full.min(usize::try_from(room).unwrap_or(usize::MAX));
        let (a, b) = (&self.coeffs, &rhs.coeffs);
        let out = (0..len)
            .map(|k| {
                let lo = k.saturating_sub(b.len() - 1);
                let hi = k.min(a.len() - 1);
                F::sum_products(&self.domain, (lo..=hi).map(|i| (&a[i], &b[k - i])))
            })
            .collect();
        Self::from_dense(self.domain.clone(), low, out)
    }

    fn full_mul(&self, rhs: &Self) -> Self {
        self.mul_truncated(rhs, i64::MAX)
    }
}

impl<F: Field> Laurent<F> {
    /// Substitutes ε = e.
    pub fn specialize(&self, e: &F) -> Result<F> {
        if self.coeffs.is_empty() {
            return Ok(F::zero(&self.domain));
        }
        if e.is_zero() {
            if self.low < 0 {
                return Err(Error::ZeroSpecialization);
            }
            return Ok(self.coeff(0));
        }
        let mut acc = F::zero(&self.domain);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_ref(e);
            acc += c;
        }
        let shift = if self.low >= 0 {
            e.pow(self.low as u64)
        } else {
            e.inv()?.pow(self.low.unsigned_abs())
        };
        Ok(acc.mul_ref(&shift))
    }
}

impl<F: Ring + fmt::Display> fmt::Display for Laurent<F> {
    /// Terms as `c*e^k`, ascending in k.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}*e^{e}")?;
        }
        Ok(())
    }
}

impl<F: Ring> fmt::Debug for Laurent<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms()).finish()
    }
}

impl<F: Ring> AddAssign<&Laurent<F>> for Laurent<F> {
    fn add_assign(&mut self, rhs: &Laurent<F>) {
        if rhs.coeffs.is_empty() {
            return;
        }
        if self.coeffs.is_empty() {
            *self = rhs.clone();
            return;
        }
        if rhs.low < self.low {
            let pad = (self.low - rhs.low) as usize;
            let mut v = vec![F::zero(&self.domain); pad];
            v.append(&mut self.coeffs);
            self.coeffs = v;
            self.low = rhs.low;
        }
        let off = (rhs.low - self.low) as usize;
        let need = off + rhs.coeffs.len();
        if self.coeffs.len() < need {
            self.coeffs.resize(need, F::zero(&self.domain));
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            self.coeffs[off + i] += c;
        }
        self.normalize();
    }
}

impl<F: Ring> SubAssign<&Laurent<F>> for Laurent<F> {
    fn sub_assign(&mut self, rhs: &Laurent<F>) {
        *self += &(-rhs.clone());
    }
}

impl<F: Ring> Add for Laurent<F> {
    type Output = Laurent<F>;
    fn add(mut self, rhs: Laurent<F>) -> Laurent<F> {
        self += &rhs;
        self
    }
}

impl<F: Ring> Sub for Laurent<F> {
    type Output = Laurent<F>;
    fn sub(mut self, rhs: Laurent<F>) -> Laurent<F> {
        self -= &rhs;
        self
    }
}

impl<F: Ring> Mul for Laurent<F> {
    type Output = Laurent<F>;
    fn mul(self, rhs: Laurent<F>) -> Laurent<F> {
        self.full_mul(&rhs)
    }
}

impl<F: Ring> Neg for Laurent<F> {
    type Output = Laurent<F>;
    fn neg(self) -> Laurent<F> {
        Laurent {
            domain: self.domain,
            low: self.low,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<F: Ring> Ring for Laurent<F> {
    type Domain = F::Domain;

    fn domain(&self) -> F::Domain {
        self.domain.clone()
    }

    fn zero(domain: &F::Domain) -> Self {
        Laurent::zero(domain)
    }

    fn one(domain: &F::Domain) -> Self {
        Laurent::constant(F::one(domain))
    }

    fn from_integer(domain: &F::Domain, m: &BigInt) -> Self {
        Laurent::constant(F::from_integer(domain, m))
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self.full_mul(rhs)
    }

    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        *self += &a.full_mul(b);
    }
}
