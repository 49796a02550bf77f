use rug::Float;

use super::bernoulli::bernoulli_even;
use super::cnum::{pi, CNum};
use super::context::PrecisionContext;
use crate::error::{Error, Result};

pub(crate) fn is_nonpositive_integer(z: &CNum) -> bool {
    z.im.is_zero() && z.re.is_integer() && z.re <= 0
}

/// Complex Γ(z): Stirling series after an upward shift, reflection for Re z < 1/2.
pub fn gamma(z: &CNum, ctx: &PrecisionContext) -> Result<CNum> {
    if is_nonpositive_integer(z) {
        return Err(Error::pole("gamma", z));
    }
    let prec = ctx.bits() + 32;
    let z = z.with_prec(prec);
    let value = if z.re < 0.5 {
        // Γ(z) = π / (sin(πz) Γ(1−z))
        let one_minus = CNum::one(prec) - &z;
        let s = z.scale(&pi(prec)).sin();
        let g = gamma_right_half_plane(&one_minus)?;
        CNum::real(pi(prec)) / (s * g)
    } else {
        gamma_right_half_plane(&z)?
    };
    Ok(value.with_prec(ctx.bits()))
}

/// ln Γ on the shifted argument; valid for Re z ≥ 1/2.
fn gamma_right_half_plane(z: &CNum) -> Result<CNum> {
    let prec = z.prec();
    let radius = 0.12 * f64::from(prec) + 4.0;
    let shift = (radius - z.re.to_f64()).ceil().max(0.0) as i64;
    let w = z.add_i64(shift);
    let ln_w = w.ln();
    let half = Float::with_val(prec, 0.5);
    let ln_2pi = Float::with_val(prec, pi(prec) * 2u32).ln();
    let mut lg = &w.add_real(&-half.clone()) * &ln_w - &w;
    lg = lg.add_real(&(ln_2pi / 2u32));

    let threshold = Float::with_val(prec, Float::i_exp(1, -(prec as i32)));
    let w_inv = w.recip();
    let w_inv2 = w_inv.square();
    let mut power = w_inv.clone();
    let mut previous = Float::with_val(prec, f64::INFINITY);
    let mut k = 1usize;
    loop {
        let b = Float::with_val(prec, &bernoulli_even(k));
        let denom = (2 * k * (2 * k - 1)) as u64;
        let term = power.scale(&(b / denom));
        let mag = term.abs();
        lg += &term;
        if mag <= threshold {
            break;
        }
        if mag > previous {
            return Err(Error::convergence(
                "Stirling series",
                format!("terms grew at k = {k} for |w| = {}", w.abs().to_f64()),
            ));
        }
        previous = mag;
        power = &power * &w_inv2;
        k += 1;
    }
    let mut g = lg.exp();
    if shift > 0 {
        let mut prod = z.clone();
        for j in 1..shift {
            prod = &prod * &z.add_i64(j);
        }
        g = &g / &prod;
    }
    Ok(g)
}

/// Γ(n + s) for n = 0, 1, 2, … by upward recurrence from Γ(s).
pub fn gamma_shifted_sequence(s: &CNum, count: usize, ctx: &PrecisionContext) -> Result<Vec<CNum>> {
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return Ok(out);
    }
    // Start above the poles so the recurrence never multiplies through zero.
    let mut start = 0usize;
    while is_nonpositive_integer(&s.add_i64(start as i64)) {
        start += 1;
    }
    let mut g = gamma(&s.add_i64(start as i64), ctx)?;
    for n in 0..count {
        if n < start {
            out.push(CNum::zero(ctx.bits()));
            continue;
        }
        if n > start {
            g = &g * &s.add_i64(n as i64 - 1);
        }
        out.push(g.clone());
    }
    Ok(out)
}
