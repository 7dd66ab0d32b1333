//! JSON forms of polynomials, Laurent polynomials and construction data.
//!
//! Scalars are written as literals (`"-3/4"` over ℚ, residues over F_p).
//! Polynomials are `{"coeffs": [...]}` in ascending degree and Laurent
//! polynomials are `{"terms": [[k, "c"], ...]}` in ascending exponent.
//! Struct fields serialize in declaration order, so identical inputs give
//! byte-identical documents.

use std::fmt::Display;

use serde::{Deserialize, Serialize};

use crate::construction::{Anchors, ConstructionData, Residual, Witness};
use crate::epsilon::{EpsilonPoly, Laurent};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalars::{Field, FieldDescriptor};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub coeffs: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentJson {
    pub terms: Vec<(i64, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpsilonPolyJson {
    pub coeffs: Vec<LaurentJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualJson {
    pub t: EpsilonPolyJson,
    pub known_below: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionJson {
    pub field: String,
    pub r: usize,
    pub n: usize,
    pub q: PolyJson,
    pub anchors: Option<Vec<String>>,
    pub l: Option<PolyJson>,
    pub r_poly: Option<PolyJson>,
    pub c: Option<String>,
    pub p: EpsilonPolyJson,
    pub residual: Option<ResidualJson>,
}

pub(crate) fn rational_string<S: serde::Serializer>(
    value: &crate::scalars::Rational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&value.to_string())
}

pub(crate) fn display_string<T: Display, S: serde::Serializer>(
    value: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(value)
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

fn render<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("JSON documents always serialize")
}

pub fn poly_to_json<F: Field + Display>(p: &Poly<F>) -> PolyJson {
    PolyJson {
        coeffs: p.coeffs().iter().map(|c| c.to_string()).collect(),
    }
}

pub fn poly_from_json<F: Field>(domain: &F::Domain, j: &PolyJson) -> Result<Poly<F>> {
    let coeffs = j
        .coeffs
        .iter()
        .map(|c| F::parse_literal(domain, c))
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(domain.clone(), coeffs))
}

pub fn laurent_to_json<F: Field + Display>(l: &Laurent<F>) -> LaurentJson {
    LaurentJson {
        terms: l.terms().map(|(k, c)| (k, c.to_string())).collect(),
    }
}

pub fn laurent_from_json<F: Field>(domain: &F::Domain, j: &LaurentJson) -> Result<Laurent<F>> {
    let terms = j
        .terms
        .iter()
        .map(|(k, c)| Ok((*k, F::parse_literal(domain, c)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Laurent::from_terms(domain, terms))
}

pub fn epsilon_poly_to_json<F: Field + Display>(p: &EpsilonPoly<F>) -> EpsilonPolyJson {
    EpsilonPolyJson {
        coeffs: p.coeffs().iter().map(laurent_to_json).collect(),
    }
}

pub fn epsilon_poly_from_json<F: Field>(
    domain: &F::Domain,
    j: &EpsilonPolyJson,
) -> Result<EpsilonPoly<F>> {
    let coeffs = j
        .coeffs
        .iter()
        .map(|c| laurent_from_json(domain, c))
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(domain.clone(), coeffs))
}

/// Parses the polynomial literal `{"coeffs": [...]}`.
pub fn parse_poly<F: Field>(domain: &F::Domain, text: &str) -> Result<Poly<F>> {
    poly_from_json(domain, &parse_json(text)?)
}

pub fn poly_json_string<F: Field + Display>(p: &Poly<F>) -> String {
    render(&poly_to_json(p))
}

pub fn construction_to_json<F: Field + Display>(data: &ConstructionData<F>) -> ConstructionJson {
    let w = data.witness.as_ref();
    ConstructionJson {
        field: F::describe(data.domain()),
        r: data.r,
        n: data.n,
        q: poly_to_json(&data.q),
        anchors: w.map(|w| w.anchors.values().iter().map(|a| a.to_string()).collect()),
        l: w.map(|w| poly_to_json(&w.l)),
        r_poly: w.map(|w| poly_to_json(&w.r_poly)),
        c: w.map(|w| w.c.to_string()),
        p: epsilon_poly_to_json(&data.p),
        residual: data.residual.as_ref().map(|res| ResidualJson {
            t: epsilon_poly_to_json(&res.t),
            known_below: res.known_below,
        }),
    }
}

pub fn construction_json_string<F: Field + Display>(data: &ConstructionData<F>) -> String {
    render(&construction_to_json(data))
}

/// Reads the field a construction document is written over.
pub fn construction_field(text: &str) -> Result<FieldDescriptor> {
    let doc: ConstructionJson = parse_json(text)?;
    doc.field.parse()
}

/// Parses a construction document over `domain`. The stored `P` and witness
/// are kept as written, so a verification run checks the document itself.
pub fn construction_from_json<F: Field>(
    domain: &F::Domain,
    text: &str,
) -> Result<ConstructionData<F>> {
    let doc: ConstructionJson = parse_json(text)?;
    let expected = F::describe(domain);
    if doc.field != expected {
        return Err(Error::DomainMismatch(doc.field, expected));
    }
    let q = poly_from_json(domain, &doc.q)?;
    let witness = match (doc.anchors, doc.l, doc.r_poly, doc.c) {
        (None, None, None, None) => None,
        (Some(anchors), Some(l), Some(r_poly), Some(c)) => {
            let values = anchors
                .iter()
                .map(|a| F::parse_literal(domain, a))
                .collect::<Result<Vec<_>>>()?;
            Some(Witness {
                anchors: Anchors::new(domain.clone(), values)?,
                l: poly_from_json(domain, &l)?,
                r_poly: poly_from_json(domain, &r_poly)?,
                c: F::parse_literal(domain, &c)?,
            })
        }
        _ => {
            return Err(Error::Parse(
                "anchors, l, r_poly and c must be given together".into(),
            ))
        }
    };
    if doc.r >= 2 && witness.is_none() {
        return Err(Error::Parse(format!("r = {} requires witness data", doc.r)));
    }
    let residual = doc
        .residual
        .map(|res| {
            Ok::<_, Error>(Residual {
                t: epsilon_poly_from_json(domain, &res.t)?,
                known_below: res.known_below,
            })
        })
        .transpose()?;
    Ok(ConstructionData {
        r: doc.r,
        n: doc.n,
        q,
        witness,
        p: epsilon_poly_from_json(domain, &doc.p)?,
        residual,
    })
}
