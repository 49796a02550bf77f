//! Second, independent reference: the defining series summed directly with
//! the Levin u-transform applied to its tail.

use rug::{Float, Integer};

use super::params::LerchParams;
use crate::error::{Error, Result};
use crate::mp::{hurwitz_zeta, CNum, PrecisionContext};

/// Levin u-transform (β = 1) of the series Σ_{j≥0} terms[j]; returns the last two
/// estimates so the caller can judge convergence.
pub fn levin_u(terms: &[CNum], prec: u32) -> Result<(CNum, CNum)> {
    if terms.len() < 4 {
        return Err(Error::domain("Levin transform needs at least four terms"));
    }
    let mut partial = Vec::with_capacity(terms.len());
    let mut acc = CNum::zero(prec);
    for t in terms {
        acc += t;
        partial.push(acc.clone());
    }
    let estimate = |k: usize| -> Result<CNum> {
        let mut num = CNum::zero(prec);
        let mut den = CNum::zero(prec);
        let base = Float::with_val(prec, k as u32 + 1);
        for j in 0..=k {
            let omega = terms[j].scale_i64(j as i64 + 1);
            if omega.is_zero() {
                return Err(Error::convergence("Levin transform", "a term vanished"));
            }
            let ratio = Float::with_val(prec, j as u32 + 1) / &base;
            let pow = Float::with_val(prec, rug::ops::Pow::pow(&ratio, k as i32 - 1));
            let mut c = Float::with_val(prec, &Integer::from(Integer::binomial_u(k as u32, j as u32))) * pow;
            if j % 2 == 1 {
                c = -c;
            }
            let w = omega.recip().scale(&c);
            num += &(&w * &partial[j]);
            den += &w;
        }
        Ok(num / den)
    };
    let k = terms.len() - 1;
    Ok((estimate(k - 1)?, estimate(k)?))
}

/// L(λ, a, s) from the series itself, at twice the context's digits.
///
/// For λ < 1 the first n₀ ≈ 2|a| + 10 terms are summed and the oscillating tail
/// goes through [`levin_u`], with the order raised until two estimates agree.
/// For λ = 1 the series is the Hurwitz zeta function, and the reference is the
/// Euler–Maclaurin evaluation after shifting a into Re a ≥ 1.
pub fn lerch_direct(p: &LerchParams, ctx: &PrecisionContext) -> Result<CNum> {
    let hi = ctx.doubled();
    let prec = hi.bits();
    let q = p.with_prec(prec);
    let s = q.s();
    let a = q.a();
    if q.is_lambda_one() {
        if s.re <= 1 {
            return Err(Error::domain("the λ = 1 series needs Re s > 1"));
        }
        let shift = (1.0 - a.re.to_f64()).ceil().max(0.0) as i64;
        let mut acc = CNum::zero(prec);
        for k in 0..shift {
            acc += &a.add_i64(k).pow(&-s.clone());
        }
        acc += &hurwitz_zeta(s, &a.add_i64(shift), &hi)?;
        return Ok(acc.with_prec(ctx.bits()));
    }
    let x = q.x(prec);
    let n0 = (2.0 * q.a_mod().to_f64()).ceil() as i64 + 10;
    let mut head = CNum::zero(prec);
    let mut xn = CNum::one(prec);
    for n in 0..n0 {
        head += &(&xn * &a.add_i64(n).pow(&-s.clone()));
        xn = &xn * &x;
    }
    let tol = Float::with_val(prec, ctx.tolerance()) / 1000u32;
    let mut terms: Vec<CNum> = Vec::new();
    let mut last: Option<CNum> = None;
    let mut order = 16usize;
    while order <= 160 {
        while terms.len() <= order {
            let n = n0 + terms.len() as i64;
            terms.push(&xn * &a.add_i64(n).pow(&-s.clone()));
            xn = &xn * &x;
        }
        let (_, est) = levin_u(&terms, prec)?;
        if let Some(prev) = &last {
            let scale = (&head + &est).abs().max(&Float::with_val(prec, 1e-300));
            if (&est - prev).abs() <= Float::with_val(prec, &tol * &scale) {
                return Ok((&head + &est).with_prec(ctx.bits()));
            }
        }
        last = Some(est);
        order += 8;
    }
    Err(Error::convergence(
        "Levin-accelerated direct sum",
        format!("no agreement up to order 160 for λ = {}", q.lambda().to_f64()),
    ))
}
