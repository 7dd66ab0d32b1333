//! Exhaustive census of r-th iterates over a prime field.
//!
//! `Iterates(d, r)` is the set of polynomials of degree at most `d` over
//! F_q of the form `Q^{∘r}`. Since `deg Q^{∘r} = (deg Q)^r` for
//! `deg Q ≥ 2`, it suffices to enumerate `Q` with
//! `deg Q ≤ D = ⌊d^{1/r}⌋`, which also gives `|Iterates(d, r)| ≤ q^{D+1}`.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{Degree, Poly};
use crate::scalars::{Fp, PrimeField, Rational};
use crate::serial::{display_string, rational_string};

/// Enumeration size used when no cap is configured.
pub const DEFAULT_ENUMERATION_CAP: u128 = 1 << 22;

/// `⌊d^{1/r}⌋`, exactly.
pub fn integer_root(d: u64, r: u32) -> u64 {
    assert!(r >= 1, "root order must be positive");
    let fits = |x: u64| x.checked_pow(r).is_some_and(|p| p <= d);
    // Start from the float estimate and correct in both directions.
    let mut x = (d as f64).powf(1.0 / f64::from(r)) as u64;
    while x > 0 && !fits(x) {
        x -= 1;
    }
    while fits(x + 1) {
        x += 1;
    }
    x
}

/// Coefficient vector with trailing zeros removed.
pub type Canonical = Vec<u64>;

fn canonical(p: &Poly<Fp>) -> Canonical {
    p.coeffs().iter().map(Fp::value).collect()
}

fn from_digits(field: PrimeField, leading: u64, degree: usize, mut index: u64) -> Poly<Fp> {
    let q = field.modulus();
    let mut coeffs = Vec::with_capacity(degree + 1);
    for _ in 0..degree {
        coeffs.push(field.element(index % q));
        index /= q;
    }
    coeffs.push(field.element(leading));
    Poly::new(field, coeffs)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CensusRow {
    pub q: u64,
    pub r: u32,
    pub d: u64,
    pub count: u64,
    /// `q^{d+1}`, the number of polynomials of degree at most `d`.
    #[serde(serialize_with = "display_string")]
    pub total: BigInt,
    /// `count / total`.
    #[serde(serialize_with = "rational_string")]
    pub ratio: Rational,
    /// `q^{⌊d^{1/r}⌋+1}`.
    #[serde(serialize_with = "display_string")]
    pub bound: BigInt,
}

impl CensusRow {
    pub fn root_degree(&self) -> u64 {
        integer_root(self.d, self.r)
    }

    /// `count ≤ q^{D+1}`, equivalently `ratio ≤ q^{D−d}`.
    pub fn within_bound(&self) -> bool {
        BigInt::from(self.count) <= self.bound
    }

    pub fn envelope(&self) -> Rational {
        Rational::new(self.bound.clone(), self.total.clone())
    }

    /// The CSV record `q, r, d, count, total, ratio_num, ratio_den, bound`.
    pub fn record(&self) -> [String; 8] {
        [
            self.q.to_string(),
            self.r.to_string(),
            self.d.to_string(),
            self.count.to_string(),
            self.total.to_string(),
            self.ratio.numer().to_string(),
            self.ratio.denom().to_string(),
            self.bound.to_string(),
        ]
    }
}

pub const CSV_HEADER: [&str; 8] = [
    "q",
    "r",
    "d",
    "count",
    "total",
    "ratio_num",
    "ratio_den",
    "bound",
];

#[derive(Debug, Clone, PartialEq)]
pub struct Census {
    pub row: CensusRow,
    /// The iterates in canonical order.
    pub iterates: BTreeSet<Canonical>,
}

/// Number of maps enumerated for `(q, d, r)`, or `None` on overflow.
pub fn enumeration_size(q: u64, d: u64, r: u32) -> Option<u128> {
    let exp = u32::try_from(integer_root(d, r) + 1).ok()?;
    u128::from(q).checked_pow(exp)
}

/// Computes `Iterates(d, r)` over `field` by enumerating every `Q` of
/// degree at most `⌊d^{1/r}⌋`.
pub fn enumerate_iterates(field: PrimeField, d: u64, r: u32, cap: u128) -> Result<Census> {
    if d == 0 {
        return Err(Error::InvalidArgument("d must be at least 1".into()));
    }
    if r < 2 {
        return Err(Error::InvalidArgument("r must be at least 2".into()));
    }
    let q = field.modulus();
    let needed = enumeration_size(q, d, r).unwrap_or(u128::MAX);
    if needed > cap {
        return Err(Error::EnumerationCap { needed, cap });
    }
    let root = integer_root(d, r) as usize;
    let iterations = r as usize;

    // Partitions: the zero polynomial, then one per (degree, leading coeff).
    let mut parts = vec![None];
    for degree in 0..=root {
        for leading in 1..q {
            parts.push(Some((degree, leading)));
        }
    }
    let iterates = parts
        .into_par_iter()
        .map(|part| {
            let mut local = HashSet::new();
            match part {
                None => {
                    local.insert(canonical(&Poly::zero(&field).iterate(iterations)));
                }
                Some((degree, leading)) => {
                    let count = q.pow(degree as u32);
                    for index in 0..count {
                        let qpoly = from_digits(field, leading, degree, index);
                        local.insert(canonical(&qpoly.iterate(iterations)));
                    }
                }
            }
            local
        })
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    let iterates: BTreeSet<Canonical> = iterates.into_iter().collect();
    debug_assert!(iterates.iter().all(|c| c.len() <= d as usize + 1));

    let count = iterates.len() as u64;
    let total = num_traits::pow(BigInt::from(q), d as usize + 1);
    let bound = num_traits::pow(BigInt::from(q), root + 1);
    let row = CensusRow {
        q,
        r,
        d,
        count,
        ratio: Rational::new(BigInt::from(count), total.clone()),
        total,
        bound,
    };
    Ok(Census { row, iterates })
}

/// One census row per `d`.
pub fn density_report(field: PrimeField, r: u32, ds: &[u64], cap: u128) -> Result<Vec<CensusRow>> {
    ds.iter()
        .map(|&d| enumerate_iterates(field, d, r, cap).map(|c| c.row))
        .collect()
}

pub fn ratios_strictly_decreasing(rows: &[CensusRow]) -> bool {
    rows.windows(2).all(|w| w[1].ratio < w[0].ratio)
}

/// `q^{−d−1} |Iterates(d^r, r)|` for each `d`.
pub fn normalized_power_sequence(
    field: PrimeField,
    r: u32,
    ds: &[u64],
    cap: u128,
) -> Result<Vec<(u64, Rational)>> {
    let q = BigInt::from(field.modulus());
    ds.iter()
        .map(|&d| {
            let big_d = d
                .checked_pow(r)
                .ok_or_else(|| Error::InvalidArgument(format!("{d}^{r} overflows")))?;
            let census = enumerate_iterates(field, big_d, r, cap)?;
            let scale = num_traits::pow(q.clone(), d as usize + 1);
            Ok((d, Rational::new(BigInt::from(census.row.count), scale)))
        })
        .collect()
}

/// Degree of a canonical coefficient vector.
pub fn canonical_degree(c: &Canonical) -> Degree {
    match c.len() {
        0 => Degree::NegInfinity,
        n => Degree::Finite(n - 1),
    }
}

/// `true` when `census` contains `x`, every constant and nothing above `d`.
pub fn sanity_check(census: &Census) -> bool {
    let q = census.row.q;
    let d = census.row.d as usize;
    let x: Canonical = vec![0, 1];
    let constants_present = (0..q).all(|c| {
        let v = if c == 0 { vec![] } else { vec![c] };
        census.iterates.contains(&v)
    });
    let degrees_ok = census
        .iterates
        .iter()
        .all(|c| canonical_degree(c) <= Degree::Finite(d));
    constants_present && degrees_ok && census.iterates.contains(&x)
}
