//! The auxiliary polynomials L and R and the constant c.

use super::anchors::Anchors;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalars::Field;

/// `R(x) = ∏_{k<r} (a_k − x)`.
pub fn build_r<F: Field>(anchors: &Anchors<F>) -> Poly<F> {
    let d = anchors.domain();
    anchors.values().iter().fold(Poly::one(d), |acc, a| {
        &acc * &Poly::new(d.clone(), vec![a.clone(), -F::one(d)])
    })
}

/// `c = R(0)^{n+1} ∏_{l<r} R'(a_l)`.
pub fn build_c<F: Field>(anchors: &Anchors<F>, n: usize) -> F {
    let r = build_r(anchors);
    let dr = r.derivative();
    let base = r.evaluate(&F::zero(anchors.domain())).pow(n as u64 + 1);
    anchors
        .values()
        .iter()
        .fold(base, |acc, a| acc.mul_ref(&dr.evaluate(a)))
}

/// `c⁻¹ R(0) ∏_{l<r} R'(a_l) a_l^n`, which must equal one.
pub fn normalization_product<F: Field>(anchors: &Anchors<F>, n: usize, c: &F) -> Result<F> {
    let r = build_r(anchors);
    let dr = r.derivative();
    let r0 = r.evaluate(&F::zero(anchors.domain()));
    let prod = anchors.values().iter().fold(r0, |acc, a| {
        acc.mul_ref(&dr.evaluate(a)).mul_ref(&a.pow(n as u64))
    });
    prod.div_ref(c)
}

/// Solves `m · v = rhs` by exact Gaussian elimination.
pub fn solve_linear<F: Field>(mut m: Vec<Vec<F>>, mut rhs: Vec<F>) -> Result<Vec<F>> {
    let size = rhs.len();
    for col in 0..size {
        let pivot = (col..size)
            .find(|&row| !m[row][col].is_zero())
            .ok_or_else(|| Error::InvalidArgument("singular linear system".into()))?;
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = m[col][col].inv()?;
        let pivot_row = m[col].clone();
        for row in 0..size {
            if row == col || m[row][col].is_zero() {
                continue;
            }
            let factor = m[row][col].mul_ref(&inv);
            for (entry, p) in m[row].iter_mut().zip(&pivot_row).skip(col) {
                *entry -= &factor.mul_ref(p);
            }
            let t = factor.mul_ref(&rhs[col]);
            rhs[row] -= &t;
        }
    }
    (0..size).map(|i| rhs[i].div_ref(&m[i][i])).collect()
}

/// L by solving the linear system in `ℓ_n, …, ℓ_{n+r−2}` with the
/// coefficients of `x^1, …, x^{n−1}` forced to zero and `ℓ_0 = a_1`.
pub fn build_l_linear<F: Field>(anchors: &Anchors<F>, n: usize) -> Result<Poly<F>> {
    let d = anchors.domain();
    let size = anchors.r() - 1;
    let a1 = anchors.get(1);
    let matrix = (1..=size)
        .map(|k| {
            let ak = anchors.get(k);
            (0..size).map(|i| ak.pow((n + i) as u64)).collect()
        })
        .collect();
    let rhs = (1..=size)
        .map(|k| anchors.get(k + 1) - a1.clone())
        .collect();
    let unknowns = solve_linear(matrix, rhs)?;
    let mut coeffs = vec![F::zero(d); n + size];
    coeffs[0] = a1;
    for (i, v) in unknowns.into_iter().enumerate() {
        coeffs[n + i] = v;
    }
    Ok(Poly::new(d.clone(), coeffs))
}

/// L by the closed interpolation formula
/// `a_1 + Σ_k (a_{k+1} − a_1) (x/a_k)^n ∏_{l≠k} (x − a_l)/(a_k − a_l)`.
pub fn build_l_lagrange<F: Field>(anchors: &Anchors<F>, n: usize) -> Result<Poly<F>> {
    let d = anchors.domain();
    let size = anchors.r() - 1;
    let a1 = anchors.get(1);
    let mut acc = Poly::constant(a1.clone());
    for k in 1..=size {
        let ak = anchors.get(k);
        let mut scale = (anchors.get(k + 1) - a1.clone()).div_ref(&ak.pow(n as u64))?;
        let mut basis = Poly::monomial(F::one(d), n);
        for l in (1..=size).filter(|&l| l != k) {
            let al = anchors.get(l);
            scale = scale.div_ref(&(ak.clone() - al.clone()))?;
            basis = &basis * &Poly::new(d.clone(), vec![-al, F::one(d)]);
        }
        acc += &basis.scale(&scale);
    }
    Ok(acc)
}

/// L by both routes; they must agree exactly.
pub fn build_l<F: Field>(anchors: &Anchors<F>, n: usize) -> Result<Poly<F>> {
    let linear = build_l_linear(anchors, n)?;
    let lagrange = build_l_lagrange(anchors, n)?;
    if linear != lagrange {
        return Err(Error::InconsistentInterpolation);
    }
    Ok(linear)
}
