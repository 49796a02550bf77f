use rug::Float;

use super::cnum::{pi, CNum};
use super::context::PrecisionContext;

/// Complex error function.
///
/// The Maclaurin series is summed with enough extra bits to absorb the
/// e^{|z|²} cancellation; far from the origin (Re z ≥ 0) the asymptotic
/// expansion of erfc is used instead, and erf(−z) = −erf(z) covers the rest.
pub fn erf(z: &CNum, ctx: &PrecisionContext) -> CNum {
    let prec = ctx.bits();
    if z.is_zero() {
        return CNum::zero(prec);
    }
    if z.re.is_sign_negative() && !z.re.is_zero() {
        return -erf(&-z.clone(), ctx);
    }
    let r2 = z.norm_sqr().to_f64();
    // Smallest asymptotic term is about e^{-|z|²}; use it once that is below 2^-prec.
    let asymptotic_ok = r2 > f64::from(prec) * std::f64::consts::LN_2 + 4.0;
    if asymptotic_ok && z.re >= Float::with_val(prec, z.im.abs_ref()) / 2u32 {
        if let Some(c) = erfc_asymptotic(z, prec) {
            return (CNum::one(prec) - &c).with_prec(prec);
        }
    }
    erf_series(z, prec + (r2 * 1.45) as u32 + 16).with_prec(prec)
}

fn erf_series(z: &CNum, prec: u32) -> CNum {
    let z = z.with_prec(prec);
    let z2 = z.square();
    let threshold = Float::with_val(prec, Float::i_exp(1, -(prec as i32)));
    // Σ (−1)^n z^{2n+1} / (n! (2n+1))
    let mut power = z.clone();
    let mut sum = z.clone();
    let mut n: u64 = 1;
    loop {
        power = -(&power * &z2).div_i64(n as i64);
        let term = power.div_i64((2 * n + 1) as i64);
        sum += &term;
        if n as f64 > z2.abs().to_f64() && term.abs() <= Float::with_val(prec, &threshold * sum.abs()) {
            break;
        }
        n += 1;
    }
    let k = Float::with_val(prec, pi(prec).recip_sqrt_ref()) * 2u32;
    sum.scale(&k)
}

/// erfc z ~ e^{−z²}/(z√π) Σ (−1)^n (2n−1)!! / (2z²)^n, stopped at the smallest term.
fn erfc_asymptotic(z: &CNum, prec: u32) -> Option<CNum> {
    let z = z.with_prec(prec + 16);
    let p = z.prec();
    let threshold = Float::with_val(p, Float::i_exp(1, -(prec as i32 + 4)));
    let inv = (z.square().scale_i64(2)).recip();
    let mut term = CNum::one(p);
    let mut sum = CNum::one(p);
    let mut previous = Float::with_val(p, 1);
    let mut n: i64 = 1;
    loop {
        term = -(&term * &inv).scale_i64(2 * n - 1);
        let mag = term.abs();
        if mag > previous {
            return None;
        }
        sum += &term;
        if mag <= threshold {
            break;
        }
        previous = mag;
        n += 1;
    }
    let pref = (-z.square()).exp() / z.scale(&Float::with_val(p, pi(p).sqrt_ref()));
    Some(&pref * &sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::with_digits(40).unwrap()
    }

    #[test]
    fn zero_and_real_values() {
        let c = ctx();
        let p = c.bits();
        assert!(erf(&CNum::zero(p), &c).is_zero());
        for x in [0.3, 1.0, -1.4377, 4.5, 9.0, -12.0] {
            let e = erf(&CNum::from_f64(p, x, 0.0), &c);
            let expect = Float::with_val(p, x).erf();
            assert!(e.im.is_zero());
            let err = Float::with_val(p, &e.re - &expect).abs().to_f64();
            assert!(err < 1e-45, "x = {x}: {err}");
        }
    }

    #[test]
    fn odd_symmetry() {
        let c = ctx();
        let p = c.bits();
        for (x, y) in [(0.7, 0.4), (2.0, -1.5), (6.5, 3.0)] {
            let z = CNum::from_f64(p, x, y);
            let sum = &erf(&z, &c) + &erf(&-z.clone(), &c);
            assert!(sum.abs() < 1e-45);
        }
    }

    #[test]
    fn series_and_asymptotic_agree_where_both_apply() {
        let c = ctx();
        let p = c.bits();
        let z = CNum::from_f64(p, 11.0, 2.0);
        let a = CNum::one(p) - &erfc_asymptotic(&z, p).unwrap();
        let s = erf_series(&z, p + (z.norm_sqr().to_f64() * 1.45) as u32 + 16);
        assert!((&a - &s).abs() < 1e-45);
    }
}
