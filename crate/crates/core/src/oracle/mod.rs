//! Independent reference values of L(λ, a, s) and Z(λ, a, s).

mod fixture;
mod levin;
mod params;
mod reference;

pub use fixture::LerchFixture;
pub use levin::{lerch_direct, levin_u};
pub use params::LerchParams;
pub use reference::{lerch_reference, lerch_reference_with, ray_direction, ReferenceOptions};

use rug::Float;

use crate::error::{Error, Result};
use crate::mp::{gamma, CNum, PrecisionContext};

/// 1 + F(λ, 0): 1/(1 − e^{2πiλ}) for λ < 1 and 1/2 for λ = 1.
pub fn one_plus_f0(p: &LerchParams, prec: u32) -> CNum {
    if p.is_lambda_one() {
        return CNum::real(Float::with_val(prec, 0.5));
    }
    (CNum::one(prec) - &p.x(prec)).recip()
}

/// ε(λ) a^{1−s}/(s−1) + a^{−s}{1 + F(λ, 0)}.
pub fn leading_term(p: &LerchParams, ctx: &PrecisionContext) -> Result<CNum> {
    let prec = ctx.bits();
    let q = p.with_prec(prec);
    let a = q.a();
    let s = q.s();
    let a_ms = a.pow(&-s.clone());
    let mut lead = &a_ms * &one_plus_f0(&q, prec);
    if q.is_lambda_one() {
        if s.is_real() && s.re == 1 {
            return Err(Error::pole("a^{1−s}/(s−1)", "s = 1"));
        }
        lead += &(&(&a_ms * a) / &s.add_i64(-1));
    }
    Ok(lead)
}

/// Z = Γ(s)·(L − ε(λ) a^{1−s}/(s−1) − a^{−s}{1 + F(λ, 0)}).
pub fn z_from_lerch(p: &LerchParams, l: &CNum, ctx: &PrecisionContext) -> Result<CNum> {
    let lead = leading_term(p, ctx)?;
    let g = gamma(&p.s().with_prec(ctx.bits()), ctx)?;
    Ok(&g * &(&l.with_prec(ctx.bits()) - &lead))
}

/// F(λ, s) = e^{2πiλ} L(λ, 1, s) for 0 < λ < 1.
pub fn periodic_zeta(lambda: &Float, s: &CNum, ctx: &PrecisionContext) -> Result<CNum> {
    let prec = ctx.bits();
    if !(*lambda > 0 && *lambda < 1) {
        return Err(Error::domain(format!(
            "periodic_zeta needs 0 < λ < 1, got {}",
            lambda.to_f64()
        )));
    }
    let p = LerchParams::new(Float::with_val(prec, lambda), CNum::one(prec), s.with_prec(prec))?;
    let l = lerch_reference(&p, ctx)?;
    Ok(&p.x(prec) * &l)
}
