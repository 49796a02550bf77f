use rug::Float;

use crate::coeffs::f_neg;
use crate::error::{Error, Result};
use crate::mp::{CNum, PrecisionContext};
use crate::oracle::{lerch_reference, one_plus_f0, LerchParams};

/// The K-term algebraic expansion of L(λ, a, s) for large |a|.
#[derive(Debug, Clone)]
pub struct PoincareExpansion {
    /// a^{1−s}/(s−1) at λ = 1, zero otherwise.
    pub pole_term: CNum,
    /// terms[0] = a^{−s}{1 + F(λ, 0)}; terms[k] = (−1)^k (s)_k/k! · F(λ, −k) a^{−s−k}.
    pub terms: Vec<CNum>,
    pub sum: CNum,
}

/// L(λ, a, s) ≈ ε(λ) a^{1−s}/(s−1) + a^{−s} + Σ_{k<K} (−1)^k (s)_k/k! F(λ, −k) a^{−s−k}.
///
/// At λ = 1 the coefficients F(1, −k) = ζ(−k) give the Bernoulli-number series.
pub fn poincare_expand(p: &LerchParams, k_terms: usize, ctx: &PrecisionContext) -> Result<PoincareExpansion> {
    if k_terms == 0 {
        return Err(Error::domain("the Poincaré expansion needs K ≥ 1"));
    }
    let prec = ctx.bits();
    let q = p.with_prec(prec);
    let a = q.a();
    let s = q.s();
    let pole_term = if q.is_lambda_one() {
        if s.is_real() && s.re == 1 {
            return Err(Error::pole("a^{1−s}/(s−1)", "s = 1"));
        }
        &a.pow(&(CNum::one(prec) - s)) / &s.add_i64(-1)
    } else {
        CNum::zero(prec)
    };
    let a_ms = a.pow(&-s.clone());
    let a_inv = a.recip();
    let mut terms = vec![&a_ms * &one_plus_f0(&q, prec)];
    // (−1)^k (s)_k / k! · a^{−s−k}
    let mut factor = a_ms;
    for k in 1..k_terms {
        factor = &(&factor * &s.add_i64(k as i64 - 1)) * &a_inv;
        factor = -factor.div_i64(k as i64);
        let f = f_neg(q.lambda(), k, ctx)?;
        terms.push(&factor * &f);
    }
    let mut sum = pole_term.clone();
    for t in &terms {
        sum += t;
    }
    Ok(PoincareExpansion { pole_term, terms, sum })
}

/// R_K = L − (K-term expansion), with L from the quadrature reference.
pub fn poincare_remainder(p: &LerchParams, k_terms: usize, ctx: &PrecisionContext) -> Result<CNum> {
    let expansion = poincare_expand(p, k_terms, ctx)?;
    let l = lerch_reference(p, ctx)?;
    Ok(&l.with_prec(ctx.bits()) - &expansion.sum)
}

/// Smallest |term| among the retained terms k ≥ 1, used for superasymptotic checks.
pub fn smallest_term(expansion: &PoincareExpansion) -> Option<Float> {
    expansion.terms.iter().skip(1).map(CNum::abs).min_by(|x, y| x.partial_cmp(y).expect("finite"))
}
