use std::fmt;
use std::str::FromStr;

use super::prime::PrimeField;
use crate::error::{Error, Result};

/// A coefficient field chosen at runtime: `Q` or `Fp:<p>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    Rationals,
    Prime(PrimeField),
}

impl FromStr for FieldDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldDescriptor::Rationals);
        }
        let p = s
            .strip_prefix("Fp:")
            .ok_or_else(|| Error::Parse(format!("invalid field descriptor {s:?}")))?;
        let p: u64 = p
            .parse()
            .map_err(|_| Error::Parse(format!("invalid modulus in {s:?}")))?;
        Ok(FieldDescriptor::Prime(PrimeField::new(p)?))
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::Prime(p) => write!(f, "{p}"),
        }
    }
}
