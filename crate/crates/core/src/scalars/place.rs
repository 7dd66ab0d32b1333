use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::prime::is_prime;
use super::rational::Rational;
use crate::error::{Error, Result};

/// An absolute value on the rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Archimedean,
    PAdic(u64),
}

impl Place {
    pub fn padic(p: u64) -> Result<Place> {
        if is_prime(p) {
            Ok(Place::PAdic(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Archimedean => write!(f, "inf"),
            Place::PAdic(p) => write!(f, "p:{p}"),
        }
    }
}

impl FromStr for Place {
    type Err = Error;

    /// `inf` or `p:<prime>`.
    fn from_str(s: &str) -> Result<Place> {
        let s = s.trim();
        if s == "inf" {
            return Ok(Place::Archimedean);
        }
        match s.strip_prefix("p:") {
            Some(p) => {
                let p: u64 = p
                    .parse()
                    .map_err(|_| Error::Parse(format!("invalid place {s:?}")))?;
                Place::padic(p)
            }
            None => Err(Error::Parse(format!("invalid place {s:?}"))),
        }
    }
}

/// The exponent of `p` in a nonzero integer.
pub fn valuation_int(n: &BigInt, p: u64) -> u64 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// The p-adic valuation of a rational; `None` for zero.
pub fn valuation(a: &Rational, p: u64) -> Option<i64> {
    if a.is_zero() {
        return None;
    }
    Some(valuation_int(a.numer(), p) as i64 - valuation_int(a.denom(), p) as i64)
}

/// `|a|_v`, computed exactly. The archimedean value is `|num|/den`; the
/// p-adic value is the exact power `p^(-v_p(a))`, with `|0| = 0`.
pub fn absolute_value(a: &Rational, v: &Place) -> Rational {
    match v {
        Place::Archimedean => a.abs(),
        Place::PAdic(p) => match valuation(a, *p) {
            None => Rational::zero(),
            Some(k) => {
                let pk = num_traits::pow(BigInt::from(*p), k.unsigned_abs() as usize);
                if k >= 0 {
                    BigRational::new(BigInt::one(), pk)
                } else {
                    BigRational::from_integer(pk)
                }
            }
        },
    }
}

/// Floating-point rendering for reports.
pub fn to_f64(a: &Rational) -> f64 {
    a.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    #[test]
    fn absolute_values() {
        assert_eq!(absolute_value(&rat(-3, 4), &Place::Archimedean), rat(3, 4));
        assert_eq!(
            to_f64(&absolute_value(&rat(-3, 4), &Place::Archimedean)),
            0.75
        );
        assert_eq!(absolute_value(&rat(12, 1), &Place::PAdic(2)), rat(1, 4));
        assert_eq!(absolute_value(&rat(1, 9), &Place::PAdic(3)), rat(9, 1));
        assert_eq!(absolute_value(&rat(0, 1), &Place::PAdic(5)), rat(0, 1));
    }

    #[test]
    fn parse_places() {
        assert_eq!("inf".parse::<Place>().unwrap(), Place::Archimedean);
        assert_eq!("p:3".parse::<Place>().unwrap(), Place::PAdic(3));
        assert!("p:4".parse::<Place>().is_err());
        assert!("q:3".parse::<Place>().is_err());
    }

    #[test]
    fn product_formula() {
        for i in -3i32..=3 {
            for j in -3i32..=3 {
                for k in -2i32..=2 {
                    for sign in [1i64, -1] {
                        let two = BigRational::from_integer(2.into());
                        let three = BigRational::from_integer(3.into());
                        let five = BigRational::from_integer(5.into());
                        let a = num_traits::pow::Pow::pow(&two, i)
                            * num_traits::pow::Pow::pow(&three, j)
                            * num_traits::pow::Pow::pow(&five, k)
                            * rat(sign, 1);
                        let prod = [
                            Place::Archimedean,
                            Place::PAdic(2),
                            Place::PAdic(3),
                            Place::PAdic(5),
                        ]
                        .iter()
                        .map(|v| absolute_value(&a, v))
                        .fold(rat(1, 1), |acc, x| acc * x);
                        assert_eq!(prod, rat(1, 1));
                    }
                }
            }
        }
    }
}
