//! The witness family `P_ε` for a target `Q` and iteration order `r`:
//!
//! ```text
//! P = ε^{(r−1)(2n−3)} R(ε^{2r}x) (ε^r x^n + c⁻¹Q) + ε^{−2r} L(ε^{2r}x)
//! ```
//!
//! together with exact checks that `P^{∘r} ≡ Q (mod ε)` and that every
//! intermediate congruence used to establish it holds.

mod anchors;
pub mod interpolation;
mod verify;
mod word;

pub use anchors::{choose_anchors, Anchors};
pub use interpolation::{build_c, build_l, build_l_lagrange, build_l_linear, build_r};
pub use verify::{
    iterate_tower, verify_all, verify_key_congruence, verify_lemma_suite, CheckResult,
    IterateTower, IterationStrategy, LemmaReport, VerificationReport,
};
pub use word::{parse_word, word_total_exponent};

use crate::epsilon::{lift, EpsilonPoly, Laurent};
use crate::error::{Error, Result};
use crate::poly::{Degree, Poly};
use crate::scalars::Field;

/// The interpolation data behind `P` (absent for `r = 1`).
#[derive(Debug, Clone, PartialEq)]
pub struct Witness<F: Field> {
    pub anchors: Anchors<F>,
    pub l: Poly<F>,
    pub r_poly: Poly<F>,
    pub c: F,
}

/// `P^{∘r} = Q + ε·T`. `known_below` is `None` when `T` is exact, otherwise
/// `T` is known modulo `ε^known_below`.
#[derive(Debug, Clone, PartialEq)]
pub struct Residual<F: Field> {
    pub t: EpsilonPoly<F>,
    pub known_below: Option<i64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstructionData<F: Field> {
    pub r: usize,
    pub n: usize,
    pub q: Poly<F>,
    pub witness: Option<Witness<F>>,
    pub p: EpsilonPoly<F>,
    pub residual: Option<Residual<F>>,
}

impl<F: Field> ConstructionData<F> {
    pub fn domain(&self) -> &F::Domain {
        self.q.domain()
    }

    /// `deg_x P`.
    pub fn p_degree(&self) -> Degree {
        self.p.degree()
    }

    /// Attaches `T` with `P^{∘r} = Q + ε·T`.
    pub fn with_residual(mut self, strategy: IterationStrategy) -> Result<Self> {
        let tower = iterate_tower(&self.p, self.r, strategy, &[(self.r, 1)])?;
        let top = tower.top();
        let diff = &top.poly - &lift(&self.q);
        self.residual = Some(Residual {
            t: crate::epsilon::shift_epsilon(&diff, -1),
            known_below: top.known_below.map(|p| p - 1),
        });
        Ok(self)
    }
}

/// `max(2, deg Q + 1)`.
pub fn default_n<F: Field>(q: &Poly<F>) -> usize {
    match q.degree() {
        Degree::NegInfinity => 2,
        Degree::Finite(d) => (d + 1).max(2),
    }
}

/// Assembles `P` from its ingredients.
pub fn assemble_p<F: Field>(
    q: &Poly<F>,
    r: usize,
    n: usize,
    w: &Witness<F>,
) -> Result<EpsilonPoly<F>> {
    let d = q.domain();
    let (r_i, n_i) = (r as i64, n as i64);
    let eps_2r = Laurent::epsilon_pow(d, 2 * r_i);
    let r_scaled = lift(&w.r_poly).scale_variable(&eps_2r);
    let l_scaled = lift(&w.l).scale_variable(&eps_2r);
    let c_inv = w.c.inv()?;
    let inner = &Poly::monomial(Laurent::epsilon_pow(d, r_i), n) + &lift(&q.scale(&c_inv));
    let first = (&r_scaled * &inner).scale(&Laurent::epsilon_pow(d, (r_i - 1) * (2 * n_i - 3)));
    let second = l_scaled.scale(&Laurent::epsilon_pow(d, -2 * r_i));
    Ok(&first + &second)
}

/// Builds the witness family for `(Q, r)`.
///
/// `n` defaults to `max(2, deg Q + 1)`; a larger `n` is accepted. Anchors
/// default to the images of `1, …, r−1`. For `r = 1` the construction is
/// bypassed and `P = Q`.
pub fn build_family<F: Field>(
    q: &Poly<F>,
    r: usize,
    anchors: Option<Anchors<F>>,
    n: Option<usize>,
) -> Result<ConstructionData<F>> {
    let domain = q.domain();
    let min_n = default_n(q);
    let n = match n {
        Some(n) if n < min_n => {
            return Err(Error::InvalidArgument(format!(
                "n = {n} is below max(2, deg Q + 1) = {min_n}"
            )))
        }
        Some(n) => n,
        None => min_n,
    };
    if r == 0 {
        return Err(Error::InvalidArgument("r must be at least 1".into()));
    }
    if r == 1 {
        return Ok(ConstructionData {
            r,
            n,
            q: q.clone(),
            witness: None,
            p: lift(q),
            residual: None,
        });
    }
    let anchors = match anchors {
        Some(a) if a.r() != r => {
            return Err(Error::InvalidAnchors(format!(
                "{} anchors given, r − 1 = {} needed",
                a.values().len(),
                r - 1
            )))
        }
        Some(a) => a,
        None => choose_anchors(domain, r)?,
    };
    let witness = Witness {
        l: build_l(&anchors, n)?,
        r_poly: build_r(&anchors),
        c: build_c(&anchors, n),
        anchors,
    };
    let p = assemble_p(q, r, n, &witness)?;
    Ok(ConstructionData {
        r,
        n,
        q: q.clone(),
        witness: Some(witness),
        p,
        residual: None,
    })
}
