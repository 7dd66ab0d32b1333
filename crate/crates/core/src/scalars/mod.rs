//! Exact coefficient fields (rationals and prime fields) and the places of
//! the rationals used to measure approximation errors.

mod descriptor;
mod place;
mod prime;
mod rational;
mod traits;

pub use descriptor::FieldDescriptor;
pub use place::{absolute_value, to_f64, valuation, Place};
pub use prime::{is_prime, Fp, PrimeField};
pub use rational::{parse_rational, rat, Rational, Rationals};
pub use traits::{Field, Ring};

/// Binomial coefficient `C(n, k)` as an arbitrary-precision integer.
pub fn binomial(n: u64, k: u64) -> num_bigint::BigInt {
    if k > n {
        return 0.into();
    }
    let k = k.min(n - k);
    let mut acc = num_bigint::BigInt::from(1);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
