//! Upper incomplete gamma function on an explicitly tracked sheet.

use rug::Float;

use super::cnum::{pi, CNum};
use super::context::PrecisionContext;
use super::gamma::{gamma, is_nonpositive_integer};
use super::quad::{integrate_ray, DeOptions};
use crate::error::{Error, Result};

/// Distance kept between the integration ray and the pole of 1/(1+t) at t = −1.
pub const RAY_MARGIN: f64 = 0.3;

/// I(ν, z) = ∫_0^∞ e^{−zt} t^{ν−1} / (1+t) dt for Re ν > 0, where
/// z = modulus·e^{i·phase} and |phase| < 3π/2 − [`RAY_MARGIN`].
///
/// The ray arg t = ψ is turned against the phase of z (and held back from the
/// pole at −1), so the same formula continues analytically past |phase| = π.
pub fn pole_kernel(
    nu: &CNum,
    modulus: &Float,
    phase: &Float,
    ctx: &PrecisionContext,
) -> Result<CNum> {
    if nu.re <= 0 {
        return Err(Error::domain(format!("pole kernel needs Re ν > 0, got {nu}")));
    }
    if modulus.is_zero() || modulus.is_sign_negative() {
        return Err(Error::domain("pole kernel needs |z| > 0"));
    }
    let work = ctx.extended(ctx.guard());
    let prec = work.bits();
    let limit = pi(prec) - Float::with_val(prec, RAY_MARGIN);
    let sector = Float::with_val(prec, &limit + pi(prec) / 2u32);
    if Float::with_val(prec, phase.abs_ref()) >= sector {
        return Err(Error::domain(format!(
            "phase {} lies outside the kernel's sector",
            phase.to_f64()
        )));
    }
    let mut psi = -Float::with_val(prec, phase);
    if psi > limit {
        psi = limit.clone();
    } else if psi < -limit.clone() {
        psi = -limit.clone();
    }
    let nu = nu.with_prec(prec);
    let modulus = Float::with_val(prec, modulus);
    let rot = Float::with_val(prec, phase + &psi);
    // Re(z·e^{iψ}) per unit u, positive by construction.
    let decay = Float::with_val(prec, &modulus * rot.clone().cos());
    let zt_unit = CNum::from_polar(&modulus, &rot);
    let dir = CNum::cis(&psi);
    let nu_m1 = nu.add_i64(-1);
    let i_psi = CNum::new(Float::new(prec), psi.clone());
    let peak = Float::with_val(prec, &nu_m1.re).max(&Float::with_val(prec, 0.5));
    let scale = peak / &decay;

    let q = integrate_ray(
        &dir,
        &scale,
        |u, ln_u| {
            let log_t = i_psi.add_real(ln_u);
            let expo = &(&nu_m1 * &log_t) - &zt_unit.scale(u);
            let t = dir.scale(u);
            expo.exp() / t.add_i64(1)
        },
        &work,
        &DeOptions::default(),
    )?;
    Ok(q.value.with_prec(ctx.bits()))
}

/// z^α with z given by modulus and tracked phase.
pub(crate) fn tracked_pow(modulus: &Float, phase: &Float, alpha: &CNum) -> CNum {
    let prec = alpha.prec().max(modulus.prec());
    let log_z = CNum::new(Float::with_val(prec, modulus.ln_ref()), Float::with_val(prec, phase));
    (alpha * &log_z).exp()
}

/// Γ(α, z) with z on the sheet given by `phase` (|phase| < 3π/2 − margin).
pub fn upper_incomplete_gamma_tracked(
    alpha: &CNum,
    modulus: &Float,
    phase: &Float,
    ctx: &PrecisionContext,
) -> Result<CNum> {
    let prec = ctx.bits();
    if modulus.is_zero() {
        if alpha.re > 0 {
            return gamma(alpha, ctx);
        }
        return Err(Error::domain(format!(
            "Γ(α, 0) diverges for Re α ≤ 0 (α = {alpha})"
        )));
    }
    let work = ctx.extended(4);
    let wp = work.bits();
    let alpha = alpha.with_prec(wp);
    let modulus = Float::with_val(wp, modulus);
    let phase = Float::with_val(wp, phase);
    let on_principal_sheet = Float::with_val(wp, phase.abs_ref()) <= pi(wp);

    if modulus < 1 && on_principal_sheet && !is_nonpositive_integer(&alpha) {
        return Ok(small_z_series(&alpha, &modulus, &phase, &work)?.with_prec(prec));
    }

    // Shift down so Re β < 1, then climb back with Γ(β+1, z) = βΓ(β, z) + z^β e^{−z}.
    let shift = if alpha.re >= 1 {
        Float::with_val(wp, &alpha.re).floor().to_f64() as i64
    } else {
        0
    };
    let beta = alpha.add_i64(-shift);
    let z = CNum::from_polar(&modulus, &phase);
    let exp_mz = (-z.clone()).exp();
    let nu = CNum::one(wp) - &beta;
    let kernel = pole_kernel(&nu, &modulus, &phase, &work)?;
    // Γ(β, z) = e^{−z} I(1−β, z) / Γ(1−β)
    let mut value = &exp_mz * &kernel;
    value = &value / &gamma(&nu, &work)?;
    let mut b = beta;
    for _ in 0..shift {
        let zb = &tracked_pow(&modulus, &phase, &b) * &exp_mz;
        value = &(&b * &value) + &zb;
        b = b.add_i64(1);
    }
    Ok(value.with_prec(prec))
}

/// Γ(α, z) on the principal branch, |arg z| ≤ π.
pub fn upper_incomplete_gamma(alpha: &CNum, z: &CNum, ctx: &PrecisionContext) -> Result<CNum> {
    upper_incomplete_gamma_tracked(alpha, &z.abs(), &z.arg(), ctx)
}

/// Γ(α) − γ(α, z) with γ(α, z) = z^α e^{−z} Σ z^n / (α)_{n+1}.
fn small_z_series(
    alpha: &CNum,
    modulus: &Float,
    phase: &Float,
    ctx: &PrecisionContext,
) -> Result<CNum> {
    let prec = ctx.bits();
    let z = CNum::from_polar(modulus, phase);
    let threshold = ctx.epsilon();
    let mut term = alpha.recip();
    let mut sum = term.clone();
    let mut n = 1i64;
    loop {
        term = &(&term * &z) / &alpha.add_i64(n);
        sum += &term;
        if term.abs() <= Float::with_val(prec, &threshold * sum.abs()) {
            break;
        }
        n += 1;
        if n > 100_000 {
            return Err(Error::convergence("lower incomplete gamma series", "too many terms"));
        }
    }
    let lower = &(&tracked_pow(modulus, phase, alpha) * &(-z).exp()) * &sum;
    Ok(&gamma(alpha, ctx)? - &lower)
}
