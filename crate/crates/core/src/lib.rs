//! Exact construction and machine verification of polynomial families
//! `P_ε` whose r-th iterates converge to a prescribed polynomial `Q`, plus
//! numeric density demonstrations at the places of ℚ and a finite-field
//! census of r-th iterates.
//!
//! All core arithmetic is generic over the coefficient field ([`Field`]);
//! the concrete instantiations used throughout are aliased below.

pub mod approximation;
pub mod census;
pub mod construction;
pub mod epsilon;
pub mod error;
pub mod poly;
pub mod scalars;
pub mod serial;

pub use epsilon::{EpsilonPoly, Laurent, Valuation};
pub use error::{Error, Result};
pub use poly::{Degree, Poly};
pub use scalars::{Field, FieldDescriptor, Fp, Place, PrimeField, Rational, Rationals, Ring};

/// Polynomials over ℚ.
pub type QPoly = Poly<Rational>;
/// Polynomials over a prime field.
pub type FpPoly = Poly<Fp>;
/// Laurent polynomials in ε over ℚ.
pub type QLaurent = Laurent<Rational>;
/// Polynomials in x over ℚ[ε, ε⁻¹].
pub type QEpsilonPoly = EpsilonPoly<Rational>;
/// Polynomials in x over F_p[ε, ε⁻¹].
pub type FpEpsilonPoly = EpsilonPoly<Fp>;
