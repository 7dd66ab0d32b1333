//! Arithmetic in k[ε, ε⁻¹] and k[ε, ε⁻¹][x].

mod laurent;
pub mod window;

pub use laurent::{Laurent, Valuation};
pub use window::{Approx, ApproxPoly, TruncatedPoly, WindowCaps, WindowedPoly};

use crate::error::Result;
use crate::poly::Poly;
use crate::scalars::{Field, Ring};

/// A polynomial in x whose coefficients are Laurent polynomials in ε.
pub type EpsilonPoly<F> = Poly<Laurent<F>>;

/// Embeds a polynomial over the base field as an ε-free `EpsilonPoly`.
pub fn lift<F: Ring>(p: &Poly<F>) -> EpsilonPoly<F> {
    p.map(p.domain().clone(), |c| Laurent::constant(c.clone()))
}

/// Least ε-exponent over all x-coefficients.
pub fn eps_order<F: Ring>(a: &EpsilonPoly<F>) -> Valuation {
    a.coeffs()
        .iter()
        .map(|c| c.min_exponent())
        .min()
        .unwrap_or(Valuation::Infinite)
}

/// `(min, max)` ε-exponent over all x-coefficients; `None` for zero.
pub fn exponent_range<F: Ring>(a: &EpsilonPoly<F>) -> Option<(i64, i64)> {
    let lo = eps_order(a).finite()?;
    let hi = a.coeffs().iter().filter_map(|c| c.max_exponent()).max()?;
    Some((lo, hi))
}

/// Multiplies every coefficient by `ε^k`.
pub fn shift_epsilon<F: Ring>(a: &EpsilonPoly<F>, k: i64) -> EpsilonPoly<F> {
    a.map(a.domain().clone(), |c| c.shift(k))
}

/// `A ≡ B (mod ε^ℓ)`: every x-coefficient of `A − B` lies in `ε^ℓ k[ε]`.
pub fn congruent_mod<F: Ring>(a: &EpsilonPoly<F>, b: &EpsilonPoly<F>, ell: i64) -> bool {
    first_incongruence(a, b, ell).is_none()
}

/// The first x-power whose coefficient in `A − B` has ε-order below `ℓ`,
/// together with that coefficient.
pub fn first_incongruence<F: Ring>(
    a: &EpsilonPoly<F>,
    b: &EpsilonPoly<F>,
    ell: i64,
) -> Option<(usize, Laurent<F>)> {
    let diff = a - b;
    diff.coeffs()
        .iter()
        .enumerate()
        .find(|(_, c)| c.min_exponent() < Valuation::Finite(ell))
        .map(|(k, c)| (k, c.clone()))
}

/// Substitutes ε = e, giving a polynomial over the base field.
pub fn specialize_epsilon<F: Field>(a: &EpsilonPoly<F>, e: &F) -> Result<Poly<F>> {
    let coeffs = a
        .coeffs()
        .iter()
        .map(|c| c.specialize(e))
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(a.domain().clone(), coeffs))
}

/// Horner evaluation of `A` at `x = v` inside k[ε, ε⁻¹].
pub fn evaluate_x_at_laurent<F: Ring>(a: &EpsilonPoly<F>, v: &Laurent<F>) -> Laurent<F> {
    a.evaluate(v)
}

/// The coefficient of ε^e in every x-coefficient.
pub fn epsilon_coefficient<F: Ring>(a: &EpsilonPoly<F>, e: i64) -> Poly<F> {
    a.map(a.domain().clone(), |c| c.coeff(e))
}
