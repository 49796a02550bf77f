use rug::{Float, Integer};

use super::bernoulli::bernoulli_even;
use super::cnum::CNum;
use super::context::PrecisionContext;
use crate::error::{Error, Result};

/// (w + k)^{−s}, taking the real path when both are real and w + k > 0.
fn inv_power(s: &CNum, base: &CNum) -> CNum {
    if s.is_real() && base.is_real() && base.re > 0 {
        let p = base.prec().max(s.prec());
        let v = Float::with_val(p, rug::ops::Pow::pow(&base.re, &s.re)).recip();
        return CNum::real(v);
    }
    base.pow(&-s.clone())
}

/// Hurwitz zeta ζ(s, w) = Σ_{k≥0} (w+k)^{−s}, Re w > 0, s ≠ 1.
///
/// Direct summation up to a shift N followed by Euler–Maclaurin. The
/// Bernoulli tail is summed until a term drops below the working epsilon
/// relative to the partial sum; its magnitude bounds the discarded remainder
/// (times |s+2j+1|/(Re s+2j+1), which is checked to stay small).
pub fn hurwitz_zeta(s: &CNum, w: &CNum, ctx: &PrecisionContext) -> Result<CNum> {
    if s.is_real() && s.re == 1 {
        return Err(Error::pole("hurwitz_zeta", s));
    }
    if w.re <= 0 {
        return Err(Error::domain(format!("hurwitz_zeta needs Re w > 0, got w = {w}")));
    }
    let prec = ctx.bits() + 16;
    let s = s.with_prec(prec);
    let w = w.with_prec(prec);
    let eps = Float::with_val(prec, ctx.epsilon());

    // The smallest Bernoulli term is about e^{−2π|w+N|}; pick N so that it is out of reach.
    let s_abs = s.abs().to_f64();
    let target = 0.12 * f64::from(prec) + s_abs + 2.0;
    let n_shift = (target - w.re.to_f64()).ceil().max(0.0) as i64;

    let mut acc = CNum::zero(prec);
    for k in 0..n_shift {
        acc += &inv_power(&s, &w.add_i64(k));
    }
    let x = w.add_i64(n_shift);
    let x_pow = inv_power(&s, &x);
    // (w+N)^{1−s}/(s−1) + ½(w+N)^{−s}
    acc += &(&(&x_pow * &x) / &s.add_i64(-1));
    acc += &x_pow.scale(&Float::with_val(prec, 0.5));

    let x_inv = x.recip();
    let x_inv2 = x_inv.square();
    // rising factor (s)_{2j−1} x^{−s−2j+1} / (2j)!
    let mut factor = &s * &(&x_pow * &x_inv);
    let mut fact = Integer::from(2);
    let mut previous = Float::with_val(prec, f64::INFINITY);
    let mut j = 1usize;
    loop {
        let b = Float::with_val(prec, &bernoulli_even(j));
        let coeff = Float::with_val(prec, b / &fact);
        let term = factor.scale(&coeff);
        acc += &term;
        let mag = term.abs();
        if mag <= Float::with_val(prec, &eps * acc.abs()) || term.is_zero() {
            break;
        }
        if mag > previous {
            return Err(Error::convergence(
                "Euler-Maclaurin tail",
                format!("terms started growing at j = {j} (w + N = {})", x.re.to_f64()),
            ));
        }
        previous = mag;
        let k = 2 * j as i64;
        factor = &(&factor * &(&s.add_i64(k - 1) * &s.add_i64(k))) * &x_inv2;
        fact *= Integer::from((k + 1) * (k + 2));
        j += 1;
    }
    Ok(acc.with_prec(ctx.bits()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mp::cnum::pi;

    fn ctx() -> PrecisionContext {
        PrecisionContext::with_digits(50).unwrap()
    }

    #[test]
    fn basel_and_half() {
        let c = ctx();
        let p = c.bits();
        let two = CNum::from_i64(p, 2);
        let z = hurwitz_zeta(&two, &CNum::one(p), &c).unwrap();
        let basel = Float::with_val(p, pi(p).square_ref()) / 6u32;
        assert!(Float::with_val(p, &z.re - &basel).abs() < 1e-55);
        let half = CNum::from_f64(p, 0.5, 0.0);
        let z = hurwitz_zeta(&two, &half, &c).unwrap();
        let expect = Float::with_val(p, pi(p).square_ref()) / 2u32;
        assert!(Float::with_val(p, &z.re - &expect).abs() < 1e-54);
    }

    #[test]
    fn pole_and_domain() {
        let c = ctx();
        let p = c.bits();
        assert!(matches!(
            hurwitz_zeta(&CNum::one(p), &CNum::one(p), &c),
            Err(Error::Pole { .. })
        ));
        assert!(matches!(
            hurwitz_zeta(&CNum::from_i64(p, 2), &CNum::from_i64(p, -1), &c),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn matches_riemann_zeta_for_complex_s() {
        let c = ctx();
        let p = c.bits();
        let s = CNum::from_i64(p, 3);
        let ours = hurwitz_zeta(&s, &CNum::one(p), &c).unwrap();
        let theirs = Float::with_val(p, 3).zeta();
        assert!(Float::with_val(p, &ours.re - &theirs).abs() < 1e-55);
        // ζ(s, 1) − ζ(s, 2) = 1 for complex s
        let s = CNum::from_f64(p, 2.5, 7.0);
        let d = &hurwitz_zeta(&s, &CNum::one(p), &c).unwrap() - &hurwitz_zeta(&s, &CNum::from_i64(p, 2), &c).unwrap();
        assert!((&d - &CNum::one(p)).abs() < 1e-50);
    }
}
