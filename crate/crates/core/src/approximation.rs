//! Specializing ε at rational values and measuring how close `P_e^{∘r}` is
//! to `Q` at the places of ℚ.
//!
//! Everything is exact: the error polynomial has rational coefficients and
//! its norms are exact rationals (p-adic norms are powers of p), so every
//! comparison against a tolerance is a rational comparison.

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::construction::{build_family, ConstructionData};
use crate::epsilon::specialize_epsilon;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalars::{absolute_value, is_prime, Place, Rational};
use crate::serial::rational_string;

/// `Q − P_e^{∘r}` for an already constructed family.
pub fn family_error(data: &ConstructionData<Rational>, e: &Rational) -> Result<Poly<Rational>> {
    if e.is_zero() {
        return Err(Error::ZeroSpecialization);
    }
    let pe = specialize_epsilon(&data.p, e)?;
    Ok(&data.q - &pe.iterate(data.r))
}

/// `Q − P_e^{∘r}` where `P_ε` is the default family for `(Q, r)`.
pub fn error_polynomial(q: &Poly<Rational>, r: usize, e: &Rational) -> Result<Poly<Rational>> {
    if e.is_zero() {
        return Err(Error::ZeroSpecialization);
    }
    family_error(&build_family(q, r, None, None)?, e)
}

/// Largest `|c|_v` over the coefficients; `0` for the zero polynomial.
pub fn sup_norm(p: &Poly<Rational>, v: &Place) -> Rational {
    p.coeffs()
        .iter()
        .map(|c| absolute_value(c, v))
        .max()
        .unwrap_or_else(Rational::zero)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceRow {
    #[serde(serialize_with = "rational_string")]
    pub epsilon: Rational,
    #[serde(serialize_with = "crate::serial::display_string")]
    pub place: Place,
    #[serde(serialize_with = "rational_string")]
    pub error_norm: Rational,
    /// `error_norm / |ε|_v`.
    #[serde(serialize_with = "rational_string")]
    pub ratio: Rational,
}

/// One row per ε, in input order.
pub fn convergence_table(
    q: &Poly<Rational>,
    r: usize,
    place: &Place,
    epsilons: &[Rational],
) -> Result<Vec<ConvergenceRow>> {
    if epsilons.iter().any(|e| e.is_zero()) {
        return Err(Error::ZeroSpecialization);
    }
    let data = build_family(q, r, None, None)?;
    epsilons
        .par_iter()
        .map(|e| {
            let error_norm = sup_norm(&family_error(&data, e)?, place);
            let ratio = &error_norm / absolute_value(e, place);
            Ok(ConvergenceRow {
                epsilon: e.clone(),
                place: *place,
                error_norm,
                ratio,
            })
        })
        .collect()
}

/// `|a − b| ≤ tol · max(|a|, |b|)`.
pub fn ratios_agree(a: &Rational, b: &Rational, tol: &Rational) -> bool {
    let scale = if a.abs() > b.abs() { a.abs() } else { b.abs() };
    (a - b).abs() <= tol * scale
}

/// A target polynomial, iteration order, set of places and tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproximationTarget {
    q: Poly<Rational>,
    r: usize,
    places: Vec<Place>,
    eta: Rational,
}

impl ApproximationTarget {
    pub fn new(q: Poly<Rational>, r: usize, places: Vec<Place>, eta: Rational) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidArgument("r must be at least 1".into()));
        }
        if places.is_empty() {
            return Err(Error::InvalidArgument(
                "at least one place is required".into(),
            ));
        }
        for (i, v) in places.iter().enumerate() {
            if places[..i].contains(v) {
                return Err(Error::InvalidArgument(format!("place {v} is listed twice")));
            }
        }
        if !eta.is_positive() {
            return Err(Error::InvalidArgument("eta must be positive".into()));
        }
        Ok(ApproximationTarget { q, r, places, eta })
    }

    pub fn q(&self) -> &Poly<Rational> {
        &self.q
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn places(&self) -> &[Place] {
        &self.places
    }

    pub fn eta(&self) -> &Rational {
        &self.eta
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlaceNorm {
    #[serde(serialize_with = "crate::serial::display_string")]
    pub place: Place,
    #[serde(serialize_with = "rational_string")]
    pub error_norm: Rational,
}

/// A verified ε together with where it sits on the search schedule.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MultiPlaceResult {
    #[serde(serialize_with = "rational_string")]
    pub epsilon: Rational,
    /// Product of the primes among the places.
    pub base: u64,
    /// Smallest prime not among the places.
    pub s: u64,
    pub m: u32,
    pub m_prime: u32,
    pub norms: Vec<PlaceNorm>,
    pub p_degree: usize,
    /// `max(1, deg Q) + r`.
    pub degree_bound: usize,
    pub steps: usize,
}

/// Searches `ε = base^m / s^{m'}` for a value with
/// `‖Q − P_ε^{∘r}‖_v < η` at every place. Each step raises `m` if a p-adic
/// check fails and `m'` if the archimedean one does.
pub fn find_epsilon_multi_place(
    target: &ApproximationTarget,
    max_steps: usize,
) -> Result<MultiPlaceResult> {
    let data = build_family(&target.q, target.r, None, None)?;
    let primes: Vec<u64> = target
        .places
        .iter()
        .filter_map(|v| match v {
            Place::PAdic(p) => Some(*p),
            Place::Archimedean => None,
        })
        .collect();
    let base: u64 = primes.iter().product();
    let s = (2u64..)
        .find(|&k| is_prime(k) && !primes.contains(&k))
        .expect("primes are unbounded");
    let p_degree = data.p.degree().finite().unwrap_or(0);
    let degree_bound = target.q.degree().finite().unwrap_or(0).max(1) + target.r;
    let (mut m, mut m_prime) = (0u32, 0u32);
    for step in 1..=max_steps {
        let epsilon = Rational::new(
            num_traits::pow(base.into(), m as usize),
            num_traits::pow(s.into(), m_prime as usize),
        );
        let error = family_error(&data, &epsilon)?;
        let norms: Vec<PlaceNorm> = target
            .places
            .iter()
            .map(|v| PlaceNorm {
                place: *v,
                error_norm: sup_norm(&error, v),
            })
            .collect();
        let mut padic_short = false;
        let mut arch_short = false;
        for n in &norms {
            if n.error_norm >= target.eta {
                match n.place {
                    Place::Archimedean => arch_short = true,
                    Place::PAdic(_) => padic_short = true,
                }
            }
        }
        if !padic_short && !arch_short {
            return Ok(MultiPlaceResult {
                epsilon,
                base,
                s,
                m,
                m_prime,
                norms,
                p_degree,
                degree_bound,
                steps: step,
            });
        }
        if padic_short {
            m += 1;
        }
        if arch_short {
            m_prime += 1;
        }
    }
    Err(Error::IterationCapExceeded(max_steps))
}

/// Re-checks a search result from scratch.
pub fn reverify(target: &ApproximationTarget, result: &MultiPlaceResult) -> Result<bool> {
    let error = error_polynomial(&target.q, target.r, &result.epsilon)?;
    Ok(target
        .places
        .iter()
        .all(|v| sup_norm(&error, v) < target.eta))
}

/// `max |t|_v` over every rational coefficient of `T(ε, x)`. For a p-adic
/// place and `|e|_p ≤ 1` this bounds `‖T(e, x)‖_p`.
pub fn residual_coefficient_bound(
    t: &crate::epsilon::EpsilonPoly<Rational>,
    v: &Place,
) -> Rational {
    t.coeffs()
        .iter()
        .flat_map(|c| {
            c.terms()
                .map(|(_, a)| absolute_value(a, v))
                .collect::<Vec<_>>()
        })
        .max()
        .unwrap_or_else(Rational::zero)
}

impl MultiPlaceResult {
    pub fn all_below(&self, eta: &Rational) -> bool {
        self.norms.iter().all(|n| &n.error_norm < eta)
    }

    pub fn degree_bound_holds(&self) -> bool {
        self.p_degree <= self.degree_bound
    }
}
