use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::traits::{Field, Ring};
use crate::error::{Error, Result};

/// Arbitrary-precision rationals, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Domain marker for the field of rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Rationals;

impl Ring for BigRational {
    type Domain = Rationals;

    fn domain(&self) -> Rationals {
        Rationals
    }

    fn zero(_: &Rationals) -> Self {
        <BigRational as Zero>::zero()
    }

    fn one(_: &Rationals) -> Self {
        <BigRational as One>::one()
    }

    fn from_integer(_: &Rationals, m: &BigInt) -> Self {
        BigRational::from_integer(m.clone())
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }

    /// Accumulates over a running common denominator and reduces once.
    fn sum_products<'a>(_: &Rationals, pairs: impl Iterator<Item = (&'a Self, &'a Self)>) -> Self {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for (a, b) in pairs {
            if Zero::is_zero(a) || Zero::is_zero(b) {
                continue;
            }
            let n = a.numer() * b.numer();
            let d = a.denom() * b.denom();
            if d == den {
                num += n;
            } else if (&den % &d).is_zero() {
                num += n * (&den / &d);
            } else if (&d % &den).is_zero() {
                num = num * (&d / &den) + n;
                den = d;
            } else {
                num = num * &d + n * &den;
                den *= d;
            }
        }
        BigRational::new(num, den)
    }
}

impl Field for BigRational {
    fn inv(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }

    fn cardinality(_: &Rationals) -> Option<u64> {
        None
    }

    fn describe(_: &Rationals) -> String {
        "Q".to_string()
    }

    fn parse_literal(_: &Rationals, s: &str) -> Result<Self> {
        parse_rational(s)
    }
}

/// Parses `a/b` or `a`, with optional sign, into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational literal {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(num, den))
}

/// Shorthand for `num/den` as a rational.
pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(num.into(), den.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn sum_products_matches_naive(
            pairs in prop::collection::vec(((-50i64..50, 1i64..12), (-50i64..50, 1i64..12)), 0..12)
        ) {
            let pairs: Vec<(Rational, Rational)> = pairs
                .into_iter()
                .map(|((a, b), (c, d))| (rat(a, b), rat(c, d)))
                .collect();
            let mut naive = rat(0, 1);
            for (a, b) in &pairs {
                naive += a * b;
            }
            let fast = <Rational as Ring>::sum_products(&Rationals, pairs.iter().map(|(a, b)| (a, b)));
            prop_assert_eq!(fast, naive);
        }
    }

    #[test]
    fn literals_reduce() {
        assert_eq!(parse_rational("6/-4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational(" +7 ").unwrap(), rat(7, 1));
        assert_eq!(parse_rational("0/5").unwrap().denom(), &BigInt::from(1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn from_integer_is_reduced() {
        let three = <BigRational as Ring>::from_integer(&Rationals, &BigInt::from(3));
        assert_eq!(three, rat(3, 1));
        assert_eq!(three.to_string(), "3");
    }

    #[test]
    fn invert() {
        assert_eq!(rat(2, 3).inv().unwrap(), rat(3, 2));
        assert_eq!(rat(0, 1).inv(), Err(Error::DivisionByZero));
    }
}
