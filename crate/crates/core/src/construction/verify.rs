use std::fmt::Display;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use super::interpolation::{
    build_c, build_l_lagrange, build_l_linear, build_r, normalization_product,
};
use super::{assemble_p, ConstructionData, Witness};
use crate::epsilon::window::{iterate_windowed, WindowCaps};
use crate::epsilon::{
    eps_order, evaluate_x_at_laurent, exponent_range, lift, shift_epsilon, EpsilonPoly, Laurent,
    TruncatedPoly, Valuation,
};
use crate::error::{Error, Result};
use crate::poly::{Degree, Poly};
use crate::scalars::Field;

/// How iterates `P^{∘k}` are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IterationStrategy {
    /// Full Horner composition in k[ε, ε⁻¹][x].
    Exact,
    /// Precision-tracked ε-truncation, widened until every requested
    /// congruence is decidable.
    Windowed,
    /// Exact when `(deg P)^r` is small, windowed otherwise.
    Auto,
}

impl FromStr for IterationStrategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(IterationStrategy::Exact),
            "windowed" => Ok(IterationStrategy::Windowed),
            "auto" => Ok(IterationStrategy::Auto),
            _ => Err(Error::Parse(format!("unknown strategy {s:?}"))),
        }
    }
}

/// Largest `(deg P)^r` that `Auto` computes exactly.
pub const AUTO_EXACT_DEGREE: usize = 32;

const MAX_WIDENINGS: usize = 64;

/// `P^{∘1}, …, P^{∘r}` as computed by one strategy.
#[derive(Debug, Clone)]
pub struct IterateTower<F: Field> {
    levels: Vec<TruncatedPoly<F>>,
    strategy: IterationStrategy,
    caps: Option<WindowCaps>,
}

impl<F: Field> IterateTower<F> {
    /// `P^{∘k}` for `1 ≤ k ≤ r`.
    pub fn level(&self, k: usize) -> &TruncatedPoly<F> {
        &self.levels[k - 1]
    }

    pub fn top(&self) -> &TruncatedPoly<F> {
        self.levels.last().expect("tower has at least one level")
    }

    pub fn strategy(&self) -> IterationStrategy {
        self.strategy
    }

    pub fn caps(&self) -> Option<WindowCaps> {
        self.caps
    }
}

fn resolve(p_degree: Degree, r: usize, strategy: IterationStrategy) -> IterationStrategy {
    match strategy {
        IterationStrategy::Auto => {
            let d = p_degree.finite().unwrap_or(0);
            let small = d <= 1
                || u32::try_from(r)
                    .ok()
                    .and_then(|r| d.checked_pow(r))
                    .is_some_and(|total| total <= AUTO_EXACT_DEGREE);
            if small {
                IterationStrategy::Exact
            } else {
                IterationStrategy::Windowed
            }
        }
        s => s,
    }
}

/// Computes the iterates of `p` up to order `r`. `requirements` lists
/// `(k, ℓ)` pairs: `P^{∘k}` must be known modulo `ε^ℓ`. Exact towers meet
/// every requirement; windowed towers widen their caps until they do.
pub fn iterate_tower<F: Field>(
    p: &EpsilonPoly<F>,
    r: usize,
    strategy: IterationStrategy,
    requirements: &[(usize, i64)],
) -> Result<IterateTower<F>> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be at least 1".into()));
    }
    match resolve(p.degree(), r, strategy) {
        IterationStrategy::Windowed => windowed_tower(p, r, requirements),
        _ => {
            let mut levels = Vec::with_capacity(r);
            let mut cur = p.clone();
            levels.push(TruncatedPoly::exact(cur.clone()));
            for _ in 1..r {
                cur = p.compose(&cur);
                levels.push(TruncatedPoly::exact(cur.clone()));
            }
            Ok(IterateTower {
                levels,
                strategy: IterationStrategy::Exact,
                caps: None,
            })
        }
    }
}

fn windowed_tower<F: Field>(
    p: &EpsilonPoly<F>,
    r: usize,
    requirements: &[(usize, i64)],
) -> Result<IterateTower<F>> {
    let need_max = requirements.iter().map(|&(_, l)| l).max().unwrap_or(1);
    let depth = match eps_order(p) {
        Valuation::Finite(m) if m < 0 => -m,
        _ => 0,
    };
    let degree = p.degree().finite().unwrap_or(0) as i64;
    let mut caps = WindowCaps {
        poly: need_max + depth + 1,
        scalar: need_max + depth + degree,
    };
    for _ in 0..MAX_WIDENINGS {
        let levels = iterate_windowed(p, r, caps);
        let mut short_scalar = 0;
        let mut short_poly = 0;
        for &(k, need) in requirements {
            let level = &levels[k - 1];
            short_scalar = short_scalar.max(need - level.constant().precision());
            short_poly = short_poly.max(need - level.rest().precision());
        }
        if short_scalar <= 0 && short_poly <= 0 {
            return Ok(IterateTower {
                levels: levels.iter().map(|l| l.to_truncated()).collect(),
                strategy: IterationStrategy::Windowed,
                caps: Some(caps),
            });
        }
        // Once a precision goes negative the loss compounds, so a shortfall
        // measured at small caps overstates the need. Grow by at most half.
        caps.poly += short_poly.clamp(0, caps.poly / 2 + 2);
        caps.scalar += short_scalar.max(short_poly).clamp(0, caps.scalar / 2 + 2);
    }
    let have = requirements
        .iter()
        .map(|&(k, need)| (need, iterate_windowed(p, r, caps)[k - 1].precision()))
        .find(|&(need, have)| have < need)
        .unwrap_or((need_max, i64::MIN));
    Err(Error::InsufficientPrecision {
        have: have.1,
        need: have.0,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckResult {
    fn new(name: impl Into<String>, passed: bool, detail: Option<String>) -> Self {
        CheckResult {
            name: name.into(),
            passed,
            detail,
        }
    }
}

/// Outcome of the key congruence `P^{∘r} ≡ Q (mod ε)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub passed: bool,
    pub field: String,
    pub r: usize,
    pub n: usize,
    pub strategy: IterationStrategy,
    pub p_degree: Option<usize>,
    pub p_degree_bound: usize,
    pub p_exponent_range: Option<(i64, i64)>,
    /// `deg_x P^{∘r}`, only available for exact towers.
    pub iterate_degree: Option<usize>,
    pub iterate_degree_expected: Option<usize>,
    /// `None` when `P^{∘r}` was computed exactly.
    pub iterate_known_below: Option<i64>,
    pub iterate_exponent_range: Option<(i64, i64)>,
    pub residual_exponent_range: Option<(i64, i64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

/// Outcome of every intermediate congruence of the construction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaReport {
    pub passed: bool,
    pub field: String,
    pub r: usize,
    pub n: usize,
    pub strategy: IterationStrategy,
    pub checks: Vec<CheckResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl LemmaReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn lemma_requirements(r: usize, n: usize) -> Vec<(usize, i64)> {
    (1..=r)
        .map(|k| (k, ((r - k) * (2 * n - 3)) as i64 + 1))
        .collect()
}

fn key_report<F: Field + Display>(
    data: &ConstructionData<F>,
    tower: &IterateTower<F>,
) -> Result<VerificationReport> {
    let top = tower.top();
    let target = lift(&data.q);
    let offending = top.first_incongruence(&target, 1)?;
    let residual = shift_epsilon(&(&top.poly - &target), -1);
    let p_degree = data.p.degree().finite();
    let iterate_degree = if top.is_exact() {
        top.poly.degree().finite()
    } else {
        None
    };
    let iterate_degree_expected = p_degree
        .filter(|&d| d >= 2)
        .and_then(|d| d.checked_pow(data.r as u32));
    let degree_ok = match (iterate_degree, iterate_degree_expected) {
        (Some(a), Some(b)) => a == b,
        _ => true,
    };
    let bound = data.n + data.r - 1;
    let p_degree_ok = data.r == 1 || p_degree.is_none_or(|d| d <= bound);
    let mut detail = offending.map(|(k, c)| format!("coefficient of x^{k} in P^r - Q is {c}"));
    if !degree_ok {
        detail.get_or_insert_with(|| "deg P^r differs from (deg P)^r".into());
    }
    if !p_degree_ok {
        detail.get_or_insert_with(|| format!("deg P exceeds n + r - 1 = {bound}"));
    }
    Ok(VerificationReport {
        check: "key_congruence".into(),
        passed: detail.is_none(),
        field: F::describe(data.domain()),
        r: data.r,
        n: data.n,
        strategy: tower.strategy(),
        p_degree,
        p_degree_bound: bound,
        p_exponent_range: exponent_range(&data.p),
        iterate_degree,
        iterate_degree_expected,
        iterate_known_below: top.known_below,
        iterate_exponent_range: exponent_range(&top.poly),
        residual_exponent_range: exponent_range(&residual),
        detail,
        elapsed_ms: None,
    })
}

fn laurent_check<F: Field + Display>(
    name: String,
    lhs: &Laurent<F>,
    rhs: &Laurent<F>,
    ell: i64,
) -> CheckResult {
    let diff = lhs.clone() - rhs.clone();
    let passed = diff.min_exponent() >= Valuation::Finite(ell);
    let detail = (!passed).then(|| format!("difference {diff} has order below {ell}"));
    CheckResult::new(name, passed, detail)
}

fn poly_check<F: Field + Display>(
    name: String,
    lhs: &TruncatedPoly<F>,
    rhs: &EpsilonPoly<F>,
    ell: i64,
) -> Result<CheckResult> {
    let offending = lhs.first_incongruence(rhs, ell)?;
    let detail =
        offending.map(|(k, c)| format!("coefficient of x^{k} differs by {c}, order below {ell}"));
    Ok(CheckResult::new(name, detail.is_none(), detail))
}

fn lemma_checks<F: Field + Display>(
    data: &ConstructionData<F>,
    w: &Witness<F>,
    tower: &IterateTower<F>,
) -> Result<Vec<CheckResult>> {
    let d = data.domain();
    let (r, n) = (data.r, data.n);
    let (ri, ni) = (r as i64, n as i64);
    let a = |k: usize| w.anchors.get(k);
    let zero = F::zero(d);
    let mut checks = Vec::new();

    // The stored data must be what the formulas produce.
    let linear = build_l_linear(&w.anchors, n)?;
    let lagrange = build_l_lagrange(&w.anchors, n)?;
    checks.push(CheckResult::new(
        "interpolation_routes_agree",
        linear == lagrange && linear == w.l,
        (linear != lagrange).then(|| format!("linear solve {linear} vs closed form {lagrange}")),
    ));
    let mut l_ok = w.l.evaluate(&zero) == a(1);
    for k in 1..r {
        l_ok &= w.l.evaluate(&a(k)) == a(k + 1);
    }
    for j in 1..n {
        l_ok &= w.l.hasse_derivative(j).evaluate(&zero).is_zero();
    }
    l_ok &= w.l.degree() <= Degree::Finite(n + r - 2);
    checks.push(CheckResult::new("interpolation_conditions", l_ok, None));
    checks.push(CheckResult::new(
        "product_polynomial",
        w.r_poly == build_r(&w.anchors) && w.r_poly.degree() == Degree::Finite(r - 1),
        None,
    ));
    let norm = normalization_product(&w.anchors, n, &w.c)?;
    checks.push(CheckResult::new(
        "normalization_identity",
        w.c == build_c(&w.anchors, n) && norm.is_one(),
        (!norm.is_one()).then(|| format!("normalization product is {norm}")),
    ));
    let p_rebuilt = assemble_p(&data.q, r, n, w)?;
    checks.push(CheckResult::new(
        "family_matches_formula",
        p_rebuilt == data.p,
        None,
    ));
    let bound = n + r - 1;
    checks.push(CheckResult::new(
        "degree_bound",
        data.p.degree() <= Degree::Finite(bound),
        Some(format!(
            "deg P = {}, bound n + r - 1 = {bound}",
            data.p.degree()
        )),
    ));

    // Derivative of P along the orbit ε^{−2r} a_k.
    let dp = data.p.derivative();
    let r_prime = w.r_poly.derivative();
    for k in 1..r {
        let point = Laurent::monomial(a(k), -2 * ri);
        let lhs = evaluate_x_at_laurent(&dp, &point);
        let rhs = Laurent::monomial(
            r_prime.evaluate(&a(k)).mul_ref(&a(k).pow(n as u64)),
            3 - 2 * ni,
        );
        checks.push(laurent_check(
            format!("derivative_at_orbit[k={k}]"),
            &lhs,
            &rhs,
            4 - 2 * ni,
        ));
    }

    // Order bounds for every Hasse derivative on the orbit.
    let p_deg = data.p.degree().finite().unwrap_or(0);
    for k in 1..r {
        let point = Laurent::monomial(a(k), -2 * ri);
        for j in 1..=p_deg {
            let value = evaluate_x_at_laurent(&data.p.hasse_derivative(j), &point);
            let bound = 2 * ri * (j as i64 - 1) - 2 * ni + 3;
            let passed = value.min_exponent() >= Valuation::Finite(bound);
            checks.push(CheckResult::new(
                format!("hasse_order_bound[k={k},j={j}]"),
                passed,
                (!passed).then(|| format!("order {} below {bound}", value.min_exponent())),
            ));
        }
    }

    // The exponent of the j-th Taylor term, 2r(j−1) − 2n + 3 + j(r−k)(2n−3),
    // is strictly increasing in j.
    let mut h_ok = true;
    for k in 1..r {
        let h = |j: i64| 2 * ri * (j - 1) - 2 * ni + 3 + j * (ri - k as i64) * (2 * ni - 3);
        for j in 0..p_deg as i64 {
            h_ok &= h(j + 1) > h(j);
        }
    }
    checks.push(CheckResult::new("taylor_exponent_increasing", h_ok, None));

    // P^{∘k} ≡ ε^{−2r} a_k + ε^{(r−k)(2n−3)} Q c⁻¹ R(0) ∏_{l<k} R'(a_l) a_l^n.
    let c_inv = w.c.inv()?;
    let r0 = w.r_poly.evaluate(&zero);
    let mut factor = c_inv.mul_ref(&r0);
    for k in 1..=r {
        if k > 1 {
            factor = factor
                .mul_ref(&r_prime.evaluate(&a(k - 1)))
                .mul_ref(&a(k - 1).pow(n as u64));
        }
        let e = ((r - k) * (2 * n - 3)) as i64;
        let expected = &Poly::constant(Laurent::monomial(a(k), -2 * ri))
            + &shift_epsilon(&lift(&data.q.scale(&factor)), e);
        if k == 1 {
            let exact = TruncatedPoly::exact(data.p.clone());
            checks.push(poly_check(
                "first_iterate".into(),
                &exact,
                &expected,
                e + 1,
            )?);
        }
        checks.push(poly_check(
            format!("iterate_congruence[k={k}]"),
            tower.level(k),
            &expected,
            e + 1,
        )?);
    }
    Ok(checks)
}

fn ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

/// Checks `P^{∘r} ≡ Q (mod ε)` and that the residual lies in `k[ε][x]`.
pub fn verify_key_congruence<F: Field + Display>(
    data: &ConstructionData<F>,
    strategy: IterationStrategy,
) -> Result<VerificationReport> {
    let tower = iterate_tower(&data.p, data.r, strategy, &[(data.r, 1)])?;
    key_report(data, &tower)
}

/// Runs every intermediate congruence and identity of the construction.
pub fn verify_lemma_suite<F: Field + Display>(
    data: &ConstructionData<F>,
    strategy: IterationStrategy,
) -> Result<LemmaReport> {
    Ok(verify_all(data, strategy, false)?.1)
}

/// Both reports from a single iterate tower.
pub fn verify_all<F: Field + Display>(
    data: &ConstructionData<F>,
    strategy: IterationStrategy,
    timing: bool,
) -> Result<(VerificationReport, LemmaReport)> {
    let start = Instant::now();
    let requirements = lemma_requirements(data.r, data.n);
    let tower = iterate_tower(&data.p, data.r, strategy, &requirements)?;
    let mut key = key_report(data, &tower)?;
    key.elapsed_ms = timing.then(|| ms(start));
    let lemma_start = Instant::now();
    let checks = match &data.witness {
        Some(w) => lemma_checks(data, w, &tower)?,
        None => vec![CheckResult::new(
            "identity_word",
            data.p == lift(&data.q),
            None,
        )],
    };
    let lemma = LemmaReport {
        passed: checks.iter().all(|c| c.passed),
        field: F::describe(data.domain()),
        r: data.r,
        n: data.n,
        strategy: tower.strategy(),
        checks,
        elapsed_ms: timing.then(|| ms(lemma_start)),
    };
    Ok((key, lemma))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::build_family;
    use crate::scalars::{rat, PrimeField, Rational, Rationals};

    fn q(cs: &[i64]) -> Poly<Rational> {
        Poly::new(Rationals, cs.iter().map(|&c| rat(c, 1)).collect())
    }

    #[test]
    fn identity_target_r2() {
        let data = build_family(&q(&[0, 1]), 2, None, None).unwrap();
        let (key, lemmas) = verify_all(&data, IterationStrategy::Exact, false).unwrap();
        assert!(key.passed, "{key:?}");
        assert_eq!(key.iterate_degree, Some(9));
        assert_eq!(key.iterate_known_below, None);
        assert!(key.residual_exponent_range.unwrap().0 >= 0);
        assert!(lemmas.passed, "{:?}", lemmas.failures().collect::<Vec<_>>());
        let first = lemmas
            .checks
            .iter()
            .find(|c| c.name == "derivative_at_orbit[k=1]")
            .unwrap();
        assert!(first.passed);
    }

    #[test]
    fn constant_target() {
        let data = build_family(&q(&[7]), 2, None, None).unwrap();
        let (key, lemmas) = verify_all(&data, IterationStrategy::Exact, false).unwrap();
        assert!(key.passed && lemmas.passed);
    }

    #[test]
    fn prime_field_r3() {
        let f5 = PrimeField::new(5).unwrap();
        let target = Poly::new(f5, vec![f5.element(1), f5.element(0), f5.element(1)]);
        let data = build_family(&target, 3, None, None).unwrap();
        for s in [IterationStrategy::Exact, IterationStrategy::Windowed] {
            let (key, lemmas) = verify_all(&data, s, false).unwrap();
            assert!(key.passed, "{key:?}");
            assert!(lemmas.passed, "{:?}", lemmas.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn windowed_matches_exact_where_known() {
        let data = build_family(&q(&[2, -1]), 3, None, None).unwrap();
        let exact = iterate_tower(&data.p, 3, IterationStrategy::Exact, &[]).unwrap();
        let win = iterate_tower(
            &data.p,
            3,
            IterationStrategy::Windowed,
            &lemma_requirements(3, data.n),
        )
        .unwrap();
        for k in 1..=3 {
            let w = win.level(k);
            let prec = w.known_below.unwrap();
            assert_eq!(w.congruent_mod(&exact.level(k).poly, prec), Ok(true));
        }
    }

    #[test]
    fn tampered_family_fails() {
        let mut data = build_family(&q(&[1, 1]), 2, None, None).unwrap();
        let bump = Poly::constant(Laurent::constant(rat(1, 1)));
        data.p = &data.p + &bump;
        let (key, lemmas) = verify_all(&data, IterationStrategy::Exact, false).unwrap();
        assert!(!key.passed);
        assert!(key.detail.is_some());
        assert!(!lemmas.passed);
    }

    #[test]
    fn r_one() {
        let data = build_family(&q(&[4, 0, 1]), 1, None, None).unwrap();
        let (key, lemmas) = verify_all(&data, IterationStrategy::Auto, false).unwrap();
        assert!(key.passed && lemmas.passed);
        assert_eq!(key.residual_exponent_range, None);
    }
}
