use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::scalars::Field;

/// Distinct nonzero field elements `a_1, …, a_{r−1}`; `a_r = 0` is implicit.
#[derive(Debug, Clone, PartialEq)]
pub struct Anchors<F: Field> {
    domain: F::Domain,
    values: Vec<F>,
}

impl<F: Field> Anchors<F> {
    pub fn new(domain: F::Domain, values: Vec<F>) -> Result<Self> {
        for (i, a) in values.iter().enumerate() {
            if a.is_zero() {
                return Err(Error::InvalidAnchors(format!("anchor a_{} is zero", i + 1)));
            }
            if values[..i].contains(a) {
                return Err(Error::InvalidAnchors(format!(
                    "anchor a_{} repeats an earlier anchor",
                    i + 1
                )));
            }
        }
        Ok(Anchors { domain, values })
    }

    /// The iteration order these anchors serve.
    pub fn r(&self) -> usize {
        self.values.len() + 1
    }

    pub fn values(&self) -> &[F] {
        &self.values
    }

    pub fn domain(&self) -> &F::Domain {
        &self.domain
    }

    /// `a_k` for `1 ≤ k ≤ r`, with `a_r = 0`.
    pub fn get(&self, k: usize) -> F {
        assert!(k >= 1 && k <= self.r(), "anchor index {k} out of range");
        if k == self.r() {
            F::zero(&self.domain)
        } else {
            self.values[k - 1].clone()
        }
    }
}

/// Default anchors: the images of `1, …, r−1`.
///
/// Over F_p these are distinct and nonzero exactly when `p ≥ r`, which is
/// also the condition for F_p to contain `r − 1` distinct nonzero elements.
pub fn choose_anchors<F: Field>(domain: &F::Domain, r: usize) -> Result<Anchors<F>> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be at least 1".into()));
    }
    if let Some(q) = F::cardinality(domain) {
        if q < r as u64 {
            return Err(Error::FieldTooSmall { size: q, r });
        }
    }
    let values = (1..r)
        .map(|k| F::from_integer(domain, &BigInt::from(k)))
        .collect();
    Anchors::new(domain.clone(), values)
}
