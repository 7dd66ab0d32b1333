//! Precision-tracked ε-truncated arithmetic.
//!
//! Exact iterates `P^{∘r}` grow like `(deg P)^r` in x and carry long Laurent
//! coefficients, so large instances are computed modulo a power of ε. Every
//! value here records a precision `p`, meaning it is known exactly modulo
//! `ε^p` (all stored terms have exponent `< p`). Products lose precision
//! when a factor has negative order:
//!
//! ```text
//! (A + O(ε^pa)) (B + O(ε^pb)) = AB + O(ε^min(pa + ord B, pb + ord A))
//! ```
//!
//! and this rule is applied to every operation, so a congruence test modulo
//! `ε^ℓ` is accepted only when the operands are known to precision `ℓ`.

use super::laurent::{Laurent, Valuation};
use super::EpsilonPoly;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalars::Ring;

/// Precision of an exactly known value.
pub const EXACT: i64 = i64::MAX;

fn prec_plus(p: i64, m: i64) -> i64 {
    if p == EXACT {
        EXACT
    } else {
        p.saturating_add(m)
    }
}

/// Truncation caps: scalars (x-constant terms) and the non-constant part of
/// polynomials are cut at separate exponents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WindowCaps {
    pub scalar: i64,
    pub poly: i64,
}

/// A Laurent scalar known modulo `ε^prec`.
#[derive(Debug, Clone, PartialEq)]
pub struct Approx<F: Ring> {
    value: Laurent<F>,
    prec: i64,
}

impl<F: Ring> Approx<F> {
    pub fn exact(value: Laurent<F>) -> Self {
        Approx { value, prec: EXACT }
    }

    /// `value` cut to exponents `< cap`.
    pub fn capped(value: &Laurent<F>, cap: i64) -> Self {
        if cap == EXACT {
            return Self::exact(value.clone());
        }
        let prec = if value.max_exponent().is_some_and(|m| m < cap) {
            EXACT
        } else {
            cap
        };
        Approx {
            value: value.truncate(cap),
            prec,
        }
    }

    pub fn value(&self) -> &Laurent<F> {
        &self.value
    }

    pub fn precision(&self) -> i64 {
        self.prec
    }

    /// A lower bound for the true ε-order.
    pub fn order_bound(&self) -> i64 {
        match self.value.min_exponent() {
            Valuation::Finite(m) => m.min(self.prec),
            Valuation::Infinite => self.prec,
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let prec = self.prec.min(rhs.prec);
        let mut value = self.value.clone();
        value += &rhs.value;
        Approx {
            value: if prec == EXACT {
                value
            } else {
                value.truncate(prec)
            },
            prec,
        }
    }

    pub fn mul(&self, rhs: &Self, cap: i64) -> Self {
        let prec = prec_plus(self.prec, rhs.order_bound())
            .min(prec_plus(rhs.prec, self.order_bound()))
            .min(cap);
        Approx {
            value: self.value.mul_truncated(&rhs.value, prec),
            prec,
        }
    }
}

/// A polynomial in x with Laurent coefficients, every coefficient known
/// modulo the same `ε^prec`.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproxPoly<F: Ring> {
    domain: F::Domain,
    coeffs: Vec<Laurent<F>>,
    prec: i64,
}

impl<F: Ring> ApproxPoly<F> {
    pub fn capped(p: &EpsilonPoly<F>, cap: i64) -> Self {
        let mut out = ApproxPoly {
            domain: p.domain().clone(),
            coeffs: p.coeffs().iter().map(|c| c.truncate(cap)).collect(),
            prec: cap,
        };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn precision(&self) -> i64 {
        self.prec
    }

    pub fn coeffs(&self) -> &[Laurent<F>] {
        &self.coeffs
    }

    pub fn order_bound(&self) -> i64 {
        self.coeffs
            .iter()
            .filter_map(|c| c.min_exponent().finite())
            .min()
            .map_or(self.prec, |m| m.min(self.prec))
    }

    pub fn add_assign(&mut self, rhs: &Self) {
        self.prec = self.prec.min(rhs.prec);
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs
                .resize(rhs.coeffs.len(), Laurent::zero(&self.domain));
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        let prec = self.prec;
        for c in &mut self.coeffs {
            *c = c.truncate(prec);
        }
        self.normalize();
    }

    pub fn mul(&self, rhs: &Self, cap: i64) -> Self {
        let prec = prec_plus(self.prec, rhs.order_bound())
            .min(prec_plus(rhs.prec, self.order_bound()))
            .min(cap);
        let mut out = ApproxPoly {
            domain: self.domain.clone(),
            coeffs: Vec::new(),
            prec,
        };
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return out;
        }
        let mut coeffs =
            vec![Laurent::zero(&self.domain); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += &a.mul_truncated(b, prec);
                }
            }
        }
        out.coeffs = coeffs;
        out.normalize();
        out
    }

    pub fn scale(&self, c: &Approx<F>, cap: i64) -> Self {
        let prec = prec_plus(self.prec, c.order_bound())
            .min(prec_plus(c.prec, self.order_bound()))
            .min(cap);
        let mut out = ApproxPoly {
            domain: self.domain.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|a| a.mul_truncated(&c.value, prec))
                .collect(),
            prec,
        };
        out.normalize();
        out
    }
}

/// A polynomial split as `constant + rest`, where `rest(0) = 0`. The
/// constant and the rest carry independent precisions.
#[derive(Debug, Clone, PartialEq)]
pub struct WindowedPoly<F: Ring> {
    constant: Approx<F>,
    rest: ApproxPoly<F>,
}

impl<F: Ring> WindowedPoly<F> {
    pub fn from_exact(p: &EpsilonPoly<F>, caps: WindowCaps) -> Self {
        let constant = Approx::capped(&p.coeff(0), caps.scalar);
        let mut rest_coeffs = p.coeffs().to_vec();
        if let Some(c) = rest_coeffs.first_mut() {
            *c = Laurent::zero(p.domain());
        }
        let rest = ApproxPoly::capped(&Poly::new(p.domain().clone(), rest_coeffs), caps.poly);
        WindowedPoly { constant, rest }
    }

    pub fn constant(&self) -> &Approx<F> {
        &self.constant
    }

    pub fn rest(&self) -> &ApproxPoly<F> {
        &self.rest
    }

    /// Overall precision of the polynomial.
    pub fn precision(&self) -> i64 {
        self.constant.prec.min(self.rest.prec)
    }

    pub fn to_truncated(&self) -> TruncatedPoly<F> {
        let prec = self.precision();
        let mut coeffs = self.rest.coeffs.clone();
        let c0 = self.constant.value.truncate(prec);
        if coeffs.is_empty() {
            coeffs.push(c0);
        } else {
            coeffs[0] = c0;
        }
        TruncatedPoly {
            poly: Poly::new(self.rest.domain.clone(), coeffs),
            known_below: (prec != EXACT).then_some(prec),
        }
    }
}

/// `outer(inner(x))` for an exact `outer`, recentred at the constant term
/// `c` of `inner`:
///
/// ```text
/// outer(c + Z) = Σ_j outer^{[j]}(c) Z^j
/// ```
///
/// The Hasse-derivative values are scalars, which keeps the precision lost
/// to the strongly negative order of `c` out of the polynomial part.
pub fn compose_windowed<F: Ring>(
    outer: &EpsilonPoly<F>,
    inner: &WindowedPoly<F>,
    caps: WindowCaps,
) -> WindowedPoly<F> {
    let domain = outer.domain().clone();
    let c = &inner.constant;
    let z = &inner.rest;
    let degree = outer.coeffs().len();

    let taylor: Vec<Approx<F>> = (0..degree)
        .map(|j| {
            let dj = outer.hasse_derivative(j);
            let mut acc = Approx::exact(Laurent::zero(&domain));
            for coeff in dj.coeffs().iter().rev() {
                acc = acc
                    .mul(c, caps.scalar)
                    .add(&Approx::capped(coeff, caps.scalar));
            }
            acc
        })
        .collect();

    let mut rest = ApproxPoly {
        domain: domain.clone(),
        coeffs: Vec::new(),
        prec: EXACT,
    };
    let mut z_pow = z.clone();
    for (j, t) in taylor.iter().enumerate().skip(1) {
        if j > 1 {
            z_pow = z_pow.mul(z, caps.poly);
        }
        rest.add_assign(&z_pow.scale(t, caps.poly));
    }
    if rest.prec == EXACT {
        rest.prec = caps.poly;
    }
    WindowedPoly {
        constant: taylor
            .into_iter()
            .next()
            .unwrap_or_else(|| Approx::exact(Laurent::zero(&domain))),
        rest,
    }
}

/// `P^{∘1}, …, P^{∘r}`, each modulo the precision the caps allow.
pub fn iterate_windowed<F: Ring>(
    p: &EpsilonPoly<F>,
    r: usize,
    caps: WindowCaps,
) -> Vec<WindowedPoly<F>> {
    let mut levels = Vec::with_capacity(r);
    if r == 0 {
        return levels;
    }
    levels.push(WindowedPoly::from_exact(p, caps));
    for _ in 1..r {
        let next = compose_windowed(p, levels.last().unwrap(), caps);
        levels.push(next);
    }
    levels
}

/// The known part of an ε-polynomial: exact when `known_below` is `None`,
/// otherwise exact modulo `ε^known_below`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedPoly<F: Ring> {
    pub poly: EpsilonPoly<F>,
    pub known_below: Option<i64>,
}

impl<F: Ring> TruncatedPoly<F> {
    pub fn exact(poly: EpsilonPoly<F>) -> Self {
        TruncatedPoly {
            poly,
            known_below: None,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.known_below.is_none()
    }

    pub fn require(&self, ell: i64) -> Result<()> {
        match self.known_below {
            Some(have) if have < ell => Err(Error::InsufficientPrecision { have, need: ell }),
            _ => Ok(()),
        }
    }

    /// Congruence against an exact polynomial; errors when the precision
    /// does not reach `ε^ℓ`.
    pub fn first_incongruence(
        &self,
        target: &EpsilonPoly<F>,
        ell: i64,
    ) -> Result<Option<(usize, Laurent<F>)>> {
        self.require(ell)?;
        let target = match self.known_below {
            Some(p) => target.map(target.domain().clone(), |c| c.truncate(p)),
            None => target.clone(),
        };
        Ok(super::first_incongruence(&self.poly, &target, ell))
    }

    pub fn congruent_mod(&self, target: &EpsilonPoly<F>, ell: i64) -> Result<bool> {
        Ok(self.first_incongruence(target, ell)?.is_none())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{rat, Rational, Rationals};
    use proptest::prelude::*;

    fn lq(terms: &[(i64, i64)]) -> Laurent<Rational> {
        Laurent::from_terms(&Rationals, terms.iter().map(|&(e, c)| (e, rat(c, 1))))
    }

    fn laurent(lo: i64) -> impl Strategy<Value = Laurent<Rational>> {
        prop::collection::vec((lo..lo + 8, -4i64..5), 0..5).prop_map(|ts| {
            Laurent::from_terms(&Rationals, ts.into_iter().map(|(e, c)| (e, rat(c, 1))))
        })
    }

    fn eps_poly() -> impl Strategy<Value = EpsilonPoly<Rational>> {
        (laurent(-6), prop::collection::vec(laurent(-1), 0..4)).prop_map(|(c0, rest)| {
            let mut cs = vec![c0];
            cs.extend(rest);
            Poly::new(Rationals, cs)
        })
    }

    #[test]
    fn precision_drops_with_negative_orders() {
        let a = Approx::capped(&lq(&[(-3, 1), (0, 2), (5, 1)]), 4);
        assert_eq!(a.precision(), 4);
        assert_eq!(a.order_bound(), -3);
        let sq = a.mul(&a, 100);
        assert_eq!(sq.precision(), 1);
        assert_eq!(sq.value(), &lq(&[(-6, 1), (-3, 4), (0, 4)]));
        let exact = Approx::exact(lq(&[(-3, 1)]));
        assert_eq!(exact.mul(&exact, 100).precision(), 100);
        assert_eq!(Approx::capped(&lq(&[(1, 1)]), 5).precision(), EXACT);
    }

    #[test]
    fn insufficient_precision_is_reported() {
        let t = TruncatedPoly {
            poly: Poly::new(Rationals, vec![lq(&[(0, 1)])]),
            known_below: Some(2),
        };
        let target = Poly::new(Rationals, vec![lq(&[(0, 1), (3, 1)])]);
        assert_eq!(t.congruent_mod(&target, 2), Ok(true));
        assert_eq!(
            t.congruent_mod(&target, 3),
            Err(Error::InsufficientPrecision { have: 2, need: 3 })
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn windowed_iterates_agree_with_exact(p in eps_poly(), r in 1usize..4, cap in 0i64..12) {
            // The tracked precision is a guarantee: wherever a value claims
            // to be known, it matches the exact iterate.
            let caps = WindowCaps { scalar: cap + 20, poly: cap };
            let levels = iterate_windowed(&p, r, caps);
            let mut exact = p.clone();
            for (k, level) in levels.iter().enumerate() {
                if k > 0 {
                    exact = p.compose(&exact);
                }
                let t = level.to_truncated();
                let prec = t.known_below.unwrap_or(EXACT);
                if prec > -1000 {
                    let ell = prec.min(1000);
                    prop_assert_eq!(t.congruent_mod(&exact, ell), Ok(true));
                }
            }
        }
    }
}
