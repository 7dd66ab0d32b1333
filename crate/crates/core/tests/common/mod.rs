//! Seeded random inputs shared by the integration tests.
#![allow(dead_code)]

use polyiter::{Field, Fp, Poly, PrimeField, Rational, Rationals};
use rand::Rng;

pub trait Sample: Field {
    fn sample<R: Rng>(domain: &Self::Domain, rng: &mut R) -> Self;

    fn sample_nonzero<R: Rng>(domain: &Self::Domain, rng: &mut R) -> Self {
        loop {
            let c = Self::sample(domain, rng);
            if !c.is_zero() {
                return c;
            }
        }
    }
}

impl Sample for Rational {
    fn sample<R: Rng>(_: &Rationals, rng: &mut R) -> Self {
        Rational::new(
            rng.gen_range(-9i64..=9).into(),
            rng.gen_range(1i64..=5).into(),
        )
    }
}

impl Sample for Fp {
    fn sample<R: Rng>(field: &PrimeField, rng: &mut R) -> Self {
        field.element(rng.gen_range(0..field.modulus()))
    }
}

/// A polynomial of exact degree `deg`.
pub fn poly_of_degree<F: Sample, R: Rng>(domain: &F::Domain, deg: usize, rng: &mut R) -> Poly<F> {
    let mut coeffs: Vec<F> = (0..deg).map(|_| F::sample(domain, rng)).collect();
    coeffs.push(F::sample_nonzero(domain, rng));
    Poly::new(domain.clone(), coeffs)
}

/// A polynomial of degree at most `deg` (possibly zero).
pub fn poly_up_to<F: Sample, R: Rng>(domain: &F::Domain, deg: usize, rng: &mut R) -> Poly<F> {
    let len = rng.gen_range(0..=deg + 1);
    Poly::new(
        domain.clone(),
        (0..len).map(|_| F::sample(domain, rng)).collect(),
    )
}

/// `count` distinct nonzero elements, or `None` if the field is too small.
pub fn distinct_nonzero<F: Sample, R: Rng>(
    domain: &F::Domain,
    count: usize,
    rng: &mut R,
) -> Option<Vec<F>> {
    if F::cardinality(domain).is_some_and(|q| (q as usize) <= count) {
        return None;
    }
    let mut out: Vec<F> = Vec::with_capacity(count);
    while out.len() < count {
        let c = F::sample_nonzero(domain, rng);
        if !out.contains(&c) {
            out.push(c);
        }
    }
    Some(out)
}

/// Smallest prime at least `n`.
pub fn prime_at_least(n: u64) -> u64 {
    (n.max(2)..)
        .find(|&k| polyiter::scalars::is_prime(k))
        .unwrap()
}
