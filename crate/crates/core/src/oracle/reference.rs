//! Reference values of L(λ, a, s) by contour quadrature of
//! L = (1/Γ(s)) ∫_0^{∞e^{iφ}} t^{s−1} e^{−at} / (1 − e^{2πiλ} e^{−t}) dt.

use rug::Float;

use super::params::LerchParams;
use crate::error::{Error, Result};
use crate::mp::gamma::{gamma, is_nonpositive_integer};
use crate::mp::quad::{integrate_interval, integrate_ray, DeOptions};
use crate::mp::{pi, CNum, PrecisionContext};

#[derive(Debug, Clone)]
pub struct ReferenceOptions {
    /// Margin kept between the ray and the imaginary axis (radians).
    pub delta: f64,
    /// Explicit ray direction, overriding the clamp rule.
    pub phi: Option<f64>,
    /// Successive quadrature levels must agree to 10^{−(digits + extra_digits)}.
    pub extra_digits: u32,
    pub max_level: u32,
}

impl Default for ReferenceOptions {
    fn default() -> Self {
        ReferenceOptions {
            delta: 0.1,
            phi: None,
            extra_digits: 5,
            max_level: 13,
        }
    }
}

/// φ = −clamp(θ, −π/2+δ, π/2−δ); when that leaves |θ+φ| too close to π/2 the
/// ray moves to the middle of the admissible window.
pub fn ray_direction(theta: f64, delta: f64) -> f64 {
    let half = std::f64::consts::FRAC_PI_2;
    let phi = -theta.clamp(-half + delta, half - delta);
    if (theta + phi).abs() <= half - delta / 2.0 {
        phi
    } else {
        -theta / 2.0
    }
}

pub fn lerch_reference(p: &LerchParams, ctx: &PrecisionContext) -> Result<CNum> {
    lerch_reference_with(p, &ReferenceOptions::default(), ctx)
}

pub fn lerch_reference_with(
    p: &LerchParams,
    opts: &ReferenceOptions,
    ctx: &PrecisionContext,
) -> Result<CNum> {
    let prec = ctx.bits();
    let q = p.with_prec(prec);
    let s = q.s();
    if q.is_lambda_one() && s.re <= 1 {
        return Err(Error::domain(
            "the reference integral at λ = 1 needs Re s > 1",
        ));
    }
    let theta = q.theta().to_f64();
    let phi = opts.phi.unwrap_or_else(|| ray_direction(theta, opts.delta));
    let half = std::f64::consts::FRAC_PI_2;
    if phi.abs() >= half || (theta + phi).abs() >= half {
        return Err(Error::domain(format!(
            "ray direction φ = {phi} does not give a convergent integral for θ = {theta}"
        )));
    }
    let de = DeOptions {
        max_level: opts.max_level,
        tol_digits: Some(ctx.digits() + opts.extra_digits),
        ..DeOptions::default()
    };
    let phi_f = Float::with_val(prec, phi);
    let keyhole = !q.is_lambda_one() && s.re < 0.5;
    let value = if keyhole {
        keyhole_integral(&q, &phi_f, &de, ctx)?
    } else {
        let integral = ray_integral(&q, &phi_f, &Float::new(prec), &de, ctx)?;
        &integral / &gamma(s, ctx)?
    };
    Ok(value)
}

/// g(t) = e^{−at} / (1 − x e^{−t}).
fn kernel(q: &LerchParams, x: &CNum, t: &CNum) -> CNum {
    let num = (-(q.a() * t)).exp();
    let den = if q.is_lambda_one() {
        -(-t.clone()).exp_m1()
    } else {
        CNum::one(t.prec()) - &(x * &(-t.clone()).exp())
    };
    num / den
}

/// ∫ t^{s−1} g(t) dt along t = e^{iφ}(start + v), v ∈ (0, ∞).
fn ray_integral(
    q: &LerchParams,
    phi: &Float,
    start: &Float,
    de: &DeOptions,
    ctx: &PrecisionContext,
) -> Result<CNum> {
    let prec = ctx.bits();
    let x = q.x(prec);
    let dir = CNum::cis(phi);
    let sm1 = q.s().add_i64(-1);
    let i_phi = CNum::new(Float::new(prec), phi.clone());
    let beta = Float::with_val(prec, q.theta() + phi);
    let decay = Float::with_val(prec, q.a_mod() * beta.cos());
    let peak = Float::with_val(prec, &sm1.re).max(&Float::with_val(prec, 0.5));
    let scale = (peak / decay.max(&Float::with_val(prec, 0.2))).max(&Float::with_val(prec, 0.05));
    let quad = integrate_ray(
        &dir,
        &scale,
        |v, ln_v| {
            let (u, ln_u) = if start.is_zero() {
                (v.clone(), ln_v.clone())
            } else {
                let u = Float::with_val(prec, start + v);
                let l = Float::with_val(prec, u.ln_ref());
                (u, l)
            };
            let t = dir.scale(&u);
            let log_pow = &sm1 * &i_phi.add_real(&ln_u);
            let expo = &log_pow - &(q.a() * &t);
            let den = if q.is_lambda_one() {
                -(-t.clone()).exp_m1()
            } else {
                CNum::one(prec) - &(&x * &(-t.clone()).exp())
            };
            expo.exp() / den
        },
        ctx,
        de,
    )?;
    Ok(quad.value)
}

/// Keyhole form for λ < 1 valid for every s:
/// L = (1/Γ(s))·[C/(e^{2πis} − 1) + ∫_r^∞], C = ∮_{|t|=r} t^{s−1} g(t) dt from arg φ to φ + 2π.
fn keyhole_integral(
    q: &LerchParams,
    phi: &Float,
    de: &DeOptions,
    ctx: &PrecisionContext,
) -> Result<CNum> {
    let prec = ctx.bits();
    let s = q.s();
    let x = q.x(prec);
    let lam = q.lambda().to_f64();
    let r = Float::with_val(prec, std::f64::consts::PI * lam.min(1.0 - lam));
    let ln_r = Float::with_val(prec, r.ln_ref());
    let two_pi = Float::with_val(prec, pi(prec) * 2u32);
    let lo = phi.clone();
    let hi = Float::with_val(prec, phi + &two_pi);
    // f(t) dt = i t^s g(t) dψ on t = r e^{iψ}
    let circle = integrate_interval(
        &lo,
        &hi,
        |psi| {
            let t = CNum::from_polar(&r, psi);
            let log_t = CNum::new(ln_r.clone(), psi.clone());
            let pow = (s * &log_t).exp();
            (&pow * &kernel(q, &x, &t)).mul_i()
        },
        ctx,
        de,
    )?
    .value;
    if is_nonpositive_integer(s) {
        // s = −k: 1/(Γ(s)(e^{2πis} − 1)) → (−1)^k k!/(2πi)
        let k = (-s.re.to_f64()).round() as u32;
        let fact = Float::with_val(prec, &rug::Integer::from(rug::Integer::factorial(k)));
        let signed = if k % 2 == 0 { fact } else { -fact };
        let denom = CNum::new(Float::new(prec), two_pi.clone());
        return Ok(&circle.scale(&signed) / &denom);
    }
    let tail = ray_integral(q, phi, &r, de, ctx)?;
    let e2 = (s * &CNum::new(Float::new(prec), two_pi)).exp().add_i64(-1);
    let bracket = &(&circle / &e2) + &tail;
    Ok(&bracket / &gamma(s, ctx)?)
}
