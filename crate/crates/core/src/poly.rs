//! Dense univariate polynomials over any [`Ring`].
//!
//! Coefficients are stored in ascending order with no trailing zeros, so the
//! zero polynomial is the empty list. Its degree is [`Degree::NegInfinity`].

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;

use crate::scalars::{binomial, Ring};

/// Degree of a polynomial, with a dedicated value for the zero polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Clone, PartialEq)]
pub struct Poly<R: Ring> {
    domain: R::Domain,
    coeffs: Vec<R>,
}

impl<R: Ring> Poly<R> {
    pub fn new(domain: R::Domain, coeffs: Vec<R>) -> Self {
        let mut p = Poly { domain, coeffs };
        p.normalize();
        p
    }

    /// Builds a polynomial from a nonempty coefficient list, taking the
    /// domain from the first entry.
    pub fn from_coeffs(coeffs: Vec<R>) -> Self {
        let domain = coeffs
            .first()
            .expect("from_coeffs needs at least one coefficient")
            .domain();
        Self::new(domain, coeffs)
    }

    pub fn zero(domain: &R::Domain) -> Self {
        Poly {
            domain: domain.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(domain: &R::Domain) -> Self {
        Self::constant(R::one(domain))
    }

    /// The identity map `x`.
    pub fn x(domain: &R::Domain) -> Self {
        Self::monomial(R::one(domain), 1)
    }

    pub fn constant(c: R) -> Self {
        Self::new(c.domain(), vec![c])
    }

    pub fn monomial(c: R, k: usize) -> Self {
        let domain = c.domain();
        let mut coeffs = vec![R::zero(&domain); k];
        coeffs.push(c);
        Self::new(domain, coeffs)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn domain(&self) -> &R::Domain {
        &self.domain
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// Coefficient of `x^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> R {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| R::zero(&self.domain))
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::new(
            self.domain.clone(),
            self.coeffs.iter().map(|a| a.mul_ref(c)).collect(),
        )
    }

    /// Applies `f` to every coefficient.
    pub fn map<S: Ring>(&self, domain: S::Domain, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(domain, self.coeffs.iter().map(f).collect())
    }

    /// Horner evaluation at `a`.
    pub fn evaluate(&self, a: &R) -> R {
        let mut acc = R::zero(&self.domain);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_ref(a);
            acc += c;
        }
        acc
    }

    /// `outer(inner(x))` by Horner accumulation.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Self::zero(&self.domain);
        for c in self.coeffs.iter().rev() {
            acc = &acc * inner;
            acc.add_constant(c);
        }
        acc
    }

    fn add_constant(&mut self, c: &R) {
        if self.coeffs.is_empty() {
            self.coeffs.push(c.clone());
        } else {
            self.coeffs[0] += c;
        }
        self.normalize();
    }

    /// `P^{∘k}`, with `P^{∘0} = x`.
    pub fn iterate(&self, k: usize) -> Self {
        let mut acc = Self::x(&self.domain);
        for _ in 0..k {
            acc = self.compose(&acc);
        }
        acc
    }

    /// The j-th Hasse derivative `Σ_{k≥j} p_k C(k,j) x^{k-j}`, with the
    /// binomials mapped from the integers into the coefficient ring.
    pub fn hasse_derivative(&self, j: usize) -> Self {
        if j >= self.coeffs.len() {
            return Self::zero(&self.domain);
        }
        let coeffs = (j..self.coeffs.len())
            .map(|k| {
                let b = R::from_integer(&self.domain, &binomial(k as u64, j as u64));
                self.coeffs[k].mul_ref(&b)
            })
            .collect();
        Self::new(self.domain.clone(), coeffs)
    }

    /// Classical derivative.
    pub fn derivative(&self) -> Self {
        let coeffs = (1..self.coeffs.len())
            .map(|k| self.coeffs[k].mul_ref(&R::from_integer(&self.domain, &BigInt::from(k))))
            .collect();
        Self::new(self.domain.clone(), coeffs)
    }

    /// `T(a·x)`.
    pub fn scale_variable(&self, a: &R) -> Self {
        let mut pow = R::one(&self.domain);
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c.mul_ref(&pow));
            pow = pow.mul_ref(a);
        }
        Self::new(self.domain.clone(), coeffs)
    }
}

impl<R: Ring + fmt::Display> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{k}")?,
            }
        }
        Ok(())
    }
}

impl<R: Ring> fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

impl<R: Ring> Add<&Poly<R>> for &Poly<R> {
    type Output = Poly<R>;
    fn add(self, rhs: &Poly<R>) -> Poly<R> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<R: Ring> Sub<&Poly<R>> for &Poly<R> {
    type Output = Poly<R>;
    fn sub(self, rhs: &Poly<R>) -> Poly<R> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<R: Ring> Mul<&Poly<R>> for &Poly<R> {
    type Output = Poly<R>;
    fn mul(self, rhs: &Poly<R>) -> Poly<R> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(&self.domain);
        }
        let (a, b) = (&self.coeffs, &rhs.coeffs);
        let out = (0..a.len() + b.len() - 1)
            .map(|k| {
                let lo = k.saturating_sub(b.len() - 1);
                let hi = k.min(a.len() - 1);
                R::sum_products(&self.domain, (lo..=hi).map(|i| (&a[i], &b[k - i])))
            })
            .collect();
        Poly::new(self.domain.clone(), out)
    }
}

impl<R: Ring> AddAssign<&Poly<R>> for Poly<R> {
    fn add_assign(&mut self, rhs: &Poly<R>) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), R::zero(&self.domain));
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        self.normalize();
    }
}

impl<R: Ring> SubAssign<&Poly<R>> for Poly<R> {
    fn sub_assign(&mut self, rhs: &Poly<R>) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), R::zero(&self.domain));
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
        self.normalize();
    }
}

impl<R: Ring> Add for Poly<R> {
    type Output = Poly<R>;
    fn add(mut self, rhs: Poly<R>) -> Poly<R> {
        self += &rhs;
        self
    }
}

impl<R: Ring> Sub for Poly<R> {
    type Output = Poly<R>;
    fn sub(mut self, rhs: Poly<R>) -> Poly<R> {
        self -= &rhs;
        self
    }
}

impl<R: Ring> Mul for Poly<R> {
    type Output = Poly<R>;
    fn mul(self, rhs: Poly<R>) -> Poly<R> {
        &self * &rhs
    }
}

impl<R: Ring> Neg for Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        Poly {
            domain: self.domain,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

/// Polynomials over a ring form a ring, which gives bivariate polynomials
/// as `Poly<Poly<R>>`.
impl<R: Ring> Ring for Poly<R> {
    type Domain = R::Domain;

    fn domain(&self) -> R::Domain {
        self.domain.clone()
    }

    fn zero(domain: &R::Domain) -> Self {
        Poly::zero(domain)
    }

    fn one(domain: &R::Domain) -> Self {
        Poly::one(domain)
    }

    fn from_integer(domain: &R::Domain, m: &BigInt) -> Self {
        Poly::constant(R::from_integer(domain, m))
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{rat, Fp, PrimeField, Rational, Rationals};
    use proptest::prelude::*;

    fn q(cs: &[i64]) -> Poly<Rational> {
        Poly::new(Rationals, cs.iter().map(|&c| rat(c, 1)).collect())
    }

    fn fp(p: u64, cs: &[u64]) -> Poly<Fp> {
        let f = PrimeField::new(p).unwrap();
        Poly::new(f, cs.iter().map(|&c| f.element(c)).collect())
    }

    #[test]
    fn zero_polynomial_has_sentinel_degree() {
        let z = q(&[0, 0, 0]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
        assert_eq!(q(&[5]).degree(), Degree::Finite(0));
    }

    #[test]
    fn compose_examples() {
        assert_eq!(q(&[0, 0, 1]).compose(&q(&[1, 1])), q(&[1, 2, 1]));
        assert_eq!(q(&[1, 1]).compose(&q(&[0, 0, 1])), q(&[1, 0, 1]));
        let s = fp(2, &[0, 1, 1]);
        assert_eq!(s.compose(&s), fp(2, &[0, 1, 0, 0, 1]));
    }

    #[test]
    fn iterate_examples() {
        assert_eq!(q(&[0, 0, 1]).iterate(3), Poly::monomial(rat(1, 1), 8));
        assert_eq!(q(&[1, 1]).iterate(5), q(&[5, 1]));
        assert_eq!(q(&[7]).iterate(4), q(&[7]));
        assert_eq!(q(&[7]).iterate(0), q(&[0, 1]));
    }

    #[test]
    fn hasse_examples() {
        assert_eq!(q(&[0, 0, 0, 1]).hasse_derivative(2), q(&[0, 3]));
        let x2 = fp(2, &[0, 0, 1]);
        assert_eq!(x2.hasse_derivative(2), fp(2, &[1]));
        assert!(x2.derivative().derivative().is_zero());
        assert!(fp(2, &[0, 0, 1, 0, 1]).hasse_derivative(1).is_zero());
        assert!(q(&[1, 2]).hasse_derivative(5).is_zero());
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(q(&[-1, 0, 1]).evaluate(&rat(3, 1)), rat(8, 1));
        assert_eq!(q(&[]).evaluate(&rat(3, 1)), rat(0, 1));
        assert_eq!(q(&[1, 0, -1]).evaluate(&rat(1, 1)), rat(0, 1));
    }

    fn poly_q(max_deg: usize) -> impl Strategy<Value = Poly<Rational>> {
        prop::collection::vec((-9i64..10, 1i64..4), 0..=max_deg + 1)
            .prop_map(|cs| Poly::new(Rationals, cs.into_iter().map(|(n, d)| rat(n, d)).collect()))
    }

    fn poly_f(p: u64, max_deg: usize) -> impl Strategy<Value = Poly<Fp>> {
        prop::collection::vec(0..p, 0..=max_deg + 1).prop_map(move |cs| fp(p, &cs))
    }

    fn factorial(j: usize) -> Rational {
        (1..=j as i64).fold(rat(1, 1), |acc, k| acc * rat(k, 1))
    }

    proptest! {
        #[test]
        fn composition_is_associative(a in poly_q(3), b in poly_q(3), c in poly_q(2)) {
            prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        }

        #[test]
        fn composition_degree_is_multiplicative(a in poly_q(4), b in poly_q(4), p in prop::sample::select(vec![2u64, 3, 7])) {
            if let (Degree::Finite(da), Degree::Finite(db)) = (a.degree(), b.degree()) {
                if da >= 1 && db >= 1 {
                    prop_assert_eq!(a.compose(&b).degree(), Degree::Finite(da * db));
                }
            }
            let f = PrimeField::new(p).unwrap();
            let fa = a.map(f, |c| Fp::from_integer(&f, c.numer()));
            if let Degree::Finite(d) = fa.degree() {
                if d >= 1 {
                    prop_assert_eq!(fa.iterate(2).degree(), Degree::Finite(d * d));
                }
            }
        }

        #[test]
        fn scaling_commutes_with_hasse(t in poly_q(6), an in -5i64..6, ad in 1i64..4, j in 0usize..7) {
            let a = rat(an, ad);
            let lhs = t.scale_variable(&a).hasse_derivative(j);
            let rhs = t.hasse_derivative(j).scale_variable(&a).scale(&Ring::pow(&a, j as u64));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn hasse_times_factorial_is_classical(t in poly_q(7), j in 0usize..8) {
            let mut classical = t.clone();
            for _ in 0..j {
                classical = classical.derivative();
            }
            prop_assert_eq!(t.hasse_derivative(j).scale(&factorial(j)), classical);
        }

        #[test]
        fn evaluation_matches_composition(a in poly_f(5, 4), b in poly_f(5, 3), v in 0u64..5) {
            let f = PrimeField::new(5).unwrap();
            let x = f.element(v);
            prop_assert_eq!(a.compose(&b).evaluate(&x), a.evaluate(&b.evaluate(&x)));
        }
    }

    #[test]
    fn f2_square_map_over_f4_points() {
        // Check s∘s = x^4 + x pointwise in F_4 = F_2[t]/(t^2+t+1), with F_4
        // elements modelled as F_2-polynomials reduced mod t^2+t+1.
        let f2 = PrimeField::new(2).unwrap();
        let modulus = fp(2, &[1, 1, 1]);
        let reduce = |p: Poly<Fp>| -> Poly<Fp> {
            let mut c = p.coeffs().to_vec();
            while c.len() > 2 {
                let top = c.pop().unwrap();
                let k = c.len() - 2;
                for (i, m) in modulus.coeffs()[..2].iter().enumerate() {
                    c[k + i] = c[k + i] - top * *m;
                }
            }
            Poly::new(f2, c)
        };
        let eval = |p: &Poly<Fp>, t: &Poly<Fp>| -> Poly<Fp> {
            let mut acc = Poly::zero(&f2);
            for c in p.coeffs().iter().rev() {
                acc = reduce(&acc * t) + Poly::constant(*c);
            }
            acc
        };
        let s = fp(2, &[0, 1, 1]);
        let ss = s.compose(&s);
        for a in 0..2 {
            for b in 0..2 {
                let t = fp(2, &[a, b]);
                assert_eq!(eval(&ss, &t), eval(&s, &eval(&s, &t)));
                assert_eq!(eval(&ss, &t), eval(&fp(2, &[0, 1, 0, 0, 1]), &t));
            }
        }
    }
}
