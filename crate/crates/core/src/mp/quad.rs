//! Double-exponential quadrature at arbitrary precision.
//!
//! Every rule reduces to the trapezoidal rule on the real line applied to a
//! doubly-exponentially decaying integrand `g(x)`; the step is halved until two
//! successive levels agree relative to the L1 mass of the integrand.

use rug::Float;

use super::cnum::{pi, CNum};
use super::context::{pow10, PrecisionContext};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct DeOptions {
    /// Maximal number of step halvings after the initial step 1/2.
    pub max_level: u32,
    pub min_level: u32,
    /// Truncation of the transformed abscissa.
    pub x_max: f64,
    /// Agreement demanded between successive levels, in decimal digits relative
    /// to the L1 mass. `None` means the context's working digits.
    pub tol_digits: Option<u32>,
}

impl Default for DeOptions {
    fn default() -> Self {
        DeOptions {
            max_level: 12,
            min_level: 3,
            x_max: 12.0,
            tol_digits: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Quadrature {
    pub value: CNum,
    /// Σ|g|·h at the final level; the cancellation scale of the result.
    pub l1: Float,
    /// |T_l − T_{l−1}| at the final level.
    pub error_estimate: Float,
    pub levels: u32,
    pub evaluations: usize,
}

impl Quadrature {
    /// Decimal digits lost to cancellation, log10(L1 / |value|).
    pub fn cancellation_digits(&self) -> f64 {
        let v = self.value.abs();
        if v.is_zero() {
            return f64::INFINITY;
        }
        let r = Float::with_val(v.prec(), &self.l1 / &v);
        r.log10().to_f64().max(0.0)
    }
}

/// Trapezoidal sums of `g` over ℝ with successive step halving.
pub fn integrate_line<F>(mut g: F, ctx: &PrecisionContext, opts: &DeOptions) -> Result<Quadrature>
where
    F: FnMut(&Float) -> CNum,
{
    let prec = ctx.bits();
    let negligible = ctx.epsilon() / 16u32;
    let tol = pow10(prec, -(opts.tol_digits.unwrap_or(ctx.working_digits()) as i32));
    let h0 = Float::with_val(prec, 0.5);
    let mut evaluations = 0usize;

    let mut eval = |x: &Float, evaluations: &mut usize| -> CNum {
        *evaluations += 1;
        let v = g(x);
        if v.is_finite() {
            v
        } else {
            CNum::zero(prec)
        }
    };

    // Level 0: walk outwards until the integrand is negligible.
    let centre = eval(&Float::new(prec), &mut evaluations);
    let mut sum = centre.clone();
    let mut mass = centre.abs();
    let mut peak = mass.clone();
    let k_limit = (opts.x_max / 0.5).ceil() as i64;
    let mut reach = [0i64; 2];
    for (side, sign) in [(0usize, 1i64), (1usize, -1i64)] {
        let mut quiet = 0;
        let mut k = 1i64;
        while k <= k_limit {
            let x = Float::with_val(prec, &h0 * (sign * k));
            let v = eval(&x, &mut evaluations);
            let a = v.abs();
            if a > peak {
                peak = a.clone();
            }
            mass += &a;
            sum += &v;
            reach[side] = k;
            if a <= Float::with_val(prec, &peak * &negligible) {
                quiet += 1;
                if quiet >= 3 {
                    break;
                }
            } else {
                quiet = 0;
            }
            k += 1;
        }
    }
    let mut total = sum.scale(&h0);
    let mut l1 = Float::with_val(prec, &mass * &h0);
    let (kp, kn) = (reach[0], reach[1]);

    let mut h = h0.clone();
    let mut last_diff = Float::with_val(prec, f64::INFINITY);
    for level in 1..=opts.max_level {
        h /= 2u32;
        let steps_per_unit = 1i64 << level; // multiples of h per h0
        let mut fresh = CNum::zero(prec);
        let mut fresh_mass = Float::new(prec);
        let lo = -kn * steps_per_unit;
        let hi = kp * steps_per_unit;
        let mut j = lo + 1;
        while j < hi {
            let x = Float::with_val(prec, &h * j);
            let v = eval(&x, &mut evaluations);
            fresh_mass += v.abs();
            fresh += &v;
            j += 2;
        }
        let next = &total.scale(&Float::with_val(prec, 0.5)) + &fresh.scale(&h);
        let next_l1 = Float::with_val(prec, &l1 / 2u32) + Float::with_val(prec, &fresh_mass * &h);
        let diff = (&next - &total).abs();
        total = next;
        l1 = next_l1;
        let scale = if l1.is_zero() {
            Float::with_val(prec, 1)
        } else {
            l1.clone()
        };
        let converged = diff <= Float::with_val(prec, &tol * &scale);
        last_diff = diff;
        if level >= opts.min_level && converged {
            return Ok(Quadrature {
                value: total,
                l1,
                error_estimate: last_diff,
                levels: level,
                evaluations,
            });
        }
    }
    Err(Error::convergence(
        "double-exponential quadrature",
        format!(
            "levels disagree by {} after {} halvings (L1 mass {})",
            last_diff.to_f64(),
            opts.max_level,
            l1.to_f64()
        ),
    ))
}

/// ∫ f along the ray `origin + dir·u`, u ∈ (0, ∞), with the exp-sinh map
/// `u = scale·exp(π/2·sinh x)`.
///
/// `f` receives `u` and `ln u` (so callers can track branches of powers
/// exactly) and returns the integrand value; the Jacobian `dir·du` is applied
/// here.
pub fn integrate_ray<F>(
    dir: &CNum,
    scale: &Float,
    mut f: F,
    ctx: &PrecisionContext,
    opts: &DeOptions,
) -> Result<Quadrature>
where
    F: FnMut(&Float, &Float) -> CNum,
{
    let prec = ctx.bits();
    let half_pi = pi(prec) / 2u32;
    let ln_scale = Float::with_val(prec, scale.ln_ref());
    let mut q = integrate_line(
        |x| {
            let (sh, ch) = x.clone().sinh_cosh(Float::new(prec));
            let v = Float::with_val(prec, &half_pi * &sh);
            let ln_u = Float::with_val(prec, &ln_scale + &v);
            let u = Float::with_val(prec, ln_u.exp_ref());
            if u.is_zero() || !u.is_finite() {
                return CNum::zero(prec);
            }
            let jac = Float::with_val(prec, &u * &half_pi) * ch;
            f(&u, &ln_u).scale(&jac)
        },
        ctx,
        opts,
    )?;
    q.value = &q.value * dir;
    Ok(q)
}

/// ∫_a^b f(t) dt for real a < b with the tanh-sinh map.
pub fn integrate_interval<F>(
    a: &Float,
    b: &Float,
    mut f: F,
    ctx: &PrecisionContext,
    opts: &DeOptions,
) -> Result<Quadrature>
where
    F: FnMut(&Float) -> CNum,
{
    let prec = ctx.bits();
    let half_pi = pi(prec) / 2u32;
    let half = Float::with_val(prec, b - a) / 2u32;
    let opts = DeOptions {
        x_max: opts.x_max.min(6.0),
        ..opts.clone()
    };
    integrate_line(
        |x| {
            let (sh, ch) = x.clone().sinh_cosh(Float::new(prec));
            let v = Float::with_val(prec, &half_pi * &sh);
            let chv = Float::with_val(prec, v.cosh_ref());
            let w = Float::with_val(prec, &half * &half_pi) * ch / chv.square();
            if w.is_zero() {
                return CNum::zero(prec);
            }
            // Distance to the nearer endpoint without cancellation: 1 ± tanh v = 2/(1 + e^{∓2v}).
            let t = if v.is_sign_negative() {
                let e = Float::with_val(prec, -Float::with_val(prec, &v * 2u32)).exp();
                Float::with_val(prec, a + Float::with_val(prec, &half * 2u32) / (e + 1u32))
            } else {
                let e = Float::with_val(prec, &v * 2u32).exp();
                Float::with_val(prec, b - Float::with_val(prec, &half * 2u32) / (e + 1u32))
            };
            f(&t).scale(&w)
        },
        ctx,
        &opts,
    )
}
