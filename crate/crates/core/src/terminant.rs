//! The terminant T_ν(z) = e^{πiν} Γ(ν)/(2πi) · Γ(1−ν, z) with explicitly tracked phase.

use rug::Float;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mp::gamma::is_nonpositive_integer;
use crate::mp::incgamma::{pole_kernel, upper_incomplete_gamma_tracked, RAY_MARGIN};
use crate::mp::{erf, gamma, pi, CNum, PrecisionContext};

/// z = modulus·e^{i·phase} with the phase kept unreduced in (−3π/2, 3π/2).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArgTrackedZ {
    #[serde(serialize_with = "ser_float")]
    pub modulus: Float,
    #[serde(serialize_with = "ser_float")]
    pub phase: Float,
}

fn ser_float<S: serde::Serializer>(x: &Float, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&crate::mp::parse::format_decimal(x, 30))
}

impl ArgTrackedZ {
    pub fn new(modulus: Float, phase: Float) -> Result<Self> {
        if !(modulus.is_finite() && modulus > 0) {
            return Err(Error::domain("terminant argument needs a positive modulus"));
        }
        let prec = phase.prec();
        let bound = Float::with_val(prec, pi(prec) * 3u32) / 2u32;
        if !phase.is_finite() || Float::with_val(prec, phase.abs_ref()) >= bound {
            return Err(Error::domain(format!(
                "phase {} lies outside (−3π/2, 3π/2)",
                phase.to_f64()
            )));
        }
        Ok(ArgTrackedZ { modulus, phase })
    }

    /// Principal-branch representation of a non-zero complex number.
    pub fn from_principal(z: &CNum) -> Result<Self> {
        ArgTrackedZ::new(z.abs(), z.arg())
    }

    pub fn to_cnum(&self) -> CNum {
        CNum::from_polar(&self.modulus, &self.phase)
    }

    /// The same point with its phase shifted by `turns`·2π.
    pub fn rotated(&self, turns: i32) -> Result<Self> {
        let prec = self.phase.prec();
        let shift = Float::with_val(prec, pi(prec) * (2 * turns));
        ArgTrackedZ::new(self.modulus.clone(), Float::with_val(prec, &self.phase + shift))
    }

    fn beyond_pi(&self) -> bool {
        let prec = self.phase.prec();
        Float::with_val(prec, self.phase.abs_ref()) > pi(prec)
    }
}

fn check_nu(nu: &CNum) -> Result<()> {
    if is_nonpositive_integer(nu) {
        return Err(Error::pole("terminant", nu));
    }
    Ok(())
}

/// e^{πiν}/(2πi).
fn prefactor(nu: &CNum, prec: u32) -> CNum {
    let pi_i = CNum::new(Float::new(prec), pi(prec));
    let two_pi_i = CNum::new(Float::new(prec), Float::with_val(prec, pi(prec) * 2u32));
    (&pi_i * nu).exp() / two_pi_i
}

/// Evaluation on the sheet given by the phase, without the connection formula.
///
/// For Re ν > 0 this is e^{πiν} e^{−z}/(2πi) · ∫_0^∞ e^{−zt} t^{ν−1}/(1+t) dt,
/// which is analytic in the tracked phase up to |phase| < 3π/2 − 0.3.
pub fn terminant_on_sheet(nu: &CNum, z: &ArgTrackedZ, ctx: &PrecisionContext) -> Result<CNum> {
    check_nu(nu)?;
    let prec = ctx.bits();
    let nu = nu.with_prec(prec);
    let zc = z.to_cnum().with_prec(prec);
    if nu.re > 0 {
        let kernel = pole_kernel(&nu, &z.modulus, &z.phase, ctx)?;
        return Ok(&(&prefactor(&nu, prec) * &(-zc).exp()) * &kernel);
    }
    let one_minus = CNum::one(prec) - &nu;
    let g = upper_incomplete_gamma_tracked(&one_minus, &z.modulus, &z.phase, ctx)?;
    Ok(&(&prefactor(&nu, prec) * &gamma(&nu, ctx)?) * &g)
}

/// T_ν(z) for |phase| < 3π/2; beyond |phase| = π via [`continue_past_pi`].
pub fn terminant(nu: &CNum, z: &ArgTrackedZ, ctx: &PrecisionContext) -> Result<CNum> {
    check_nu(nu)?;
    if z.beyond_pi() {
        return continue_past_pi(nu, z, ctx);
    }
    terminant_on_sheet(nu, z, ctx)
}

/// Connection formula T_ν(ze^{−πi}) = e^{2πiν}{T_ν(ze^{πi}) − 1}, used so that
/// only principal-sheet evaluations are needed:
///
/// * phase > π:  T_ν(w) = 1 + e^{−2πiν} T_ν(w e^{−2πi})
/// * phase < −π: T_ν(w) = e^{2πiν}{T_ν(w e^{2πi}) − 1}
pub fn continue_past_pi(nu: &CNum, z: &ArgTrackedZ, ctx: &PrecisionContext) -> Result<CNum> {
    check_nu(nu)?;
    if !z.beyond_pi() {
        return Err(Error::domain(
            "continue_past_pi needs π < |phase| < 3π/2; evaluate directly instead",
        ));
    }
    let prec = ctx.bits();
    let nu = nu.with_prec(prec);
    let two_pi_i = CNum::new(Float::new(prec), Float::with_val(prec, pi(prec) * 2u32));
    let e2 = (&two_pi_i * &nu).exp();
    if z.phase.is_sign_positive() {
        let inner = terminant_on_sheet(&nu, &z.rotated(-1)?, ctx)?;
        Ok((&inner / &e2).add_i64(1))
    } else {
        let inner = terminant_on_sheet(&nu, &z.rotated(1)?, ctx)?;
        Ok(&e2 * &inner.add_i64(-1))
    }
}

/// c(φ) with ½c² = 1 + i(φ−π) − e^{i(φ−π)}, on the branch c ≈ φ − π near π.
///
/// Written as c = (φ−π)·√(c²/(φ−π)²); the ratio has non-negative real part for
/// real φ, so the principal root is continuous and equals 1 at φ = π.
pub fn c_of_phi(phi: &Float, ctx: &PrecisionContext) -> CNum {
    let base = ctx.bits();
    let delta0 = Float::with_val(base, phi - pi(base));
    if delta0.is_zero() {
        return CNum::zero(base);
    }
    // 1 − cos δ and δ − sin δ cancel for small δ; add bits accordingly.
    let small = delta0.to_f64().abs().max(1e-300);
    let extra = (3.0 * (1.0 / small).log2()).max(0.0) as u32 + 16;
    let prec = base + extra;
    let delta = Float::with_val(prec, phi) - pi(prec);
    let (s, c) = delta.clone().sin_cos(Float::new(prec));
    let re = Float::with_val(prec, 1 - c) * 2u32;
    let im = Float::with_val(prec, &delta - s) * 2u32;
    let d2 = Float::with_val(prec, delta.square_ref());
    let ratio = CNum::new(re / &d2, im / &d2);
    ratio.sqrt().scale(&delta).with_prec(base)
}

/// Margin used to choose between the two leading-order forms.
pub const ASYMPTOTIC_MARGIN: f64 = 0.05;

/// Leading-order uniform approximation of T_ν(z) for ν ≈ |z| large:
///
/// * |φ| ≤ π − δ: −i e^{(π−φ)iν}/(1 + e^{−iφ}) · e^{−z−|z|}/√(2π|z|)
/// * δ ≤ φ ≤ 2π − δ: ½ + ½ erf[c(φ)(½|z|)^{1/2}]
pub fn terminant_asymptotic(nu: &CNum, z: &ArgTrackedZ, ctx: &PrecisionContext) -> Result<CNum> {
    let prec = ctx.bits();
    let nu = nu.with_prec(prec);
    let phi = Float::with_val(prec, &z.phase);
    let delta = Float::with_val(prec, ASYMPTOTIC_MARGIN);
    let pi_f = pi(prec);
    let modulus = Float::with_val(prec, &z.modulus);
    if Float::with_val(prec, phi.abs_ref()) <= Float::with_val(prec, &pi_f - &delta) {
        let zc = z.to_cnum().with_prec(prec);
        let rot = CNum::new(Float::new(prec), Float::with_val(prec, &pi_f - &phi));
        let top = (&rot * &nu).exp().mul_neg_i();
        let bottom = CNum::cis(&-phi.clone()).add_i64(1);
        let gauss = (&-zc - &CNum::real(modulus.clone())).exp();
        let root = Float::with_val(prec, &modulus * Float::with_val(prec, &pi_f * 2u32)).sqrt();
        return Ok(&(&top / &bottom) * &gauss.scale(&root.recip()));
    }
    let two_pi = Float::with_val(prec, &pi_f * 2u32);
    if phi >= delta && phi <= Float::with_val(prec, &two_pi - &delta) {
        let c = c_of_phi(&phi, ctx);
        let arg = c.scale(&Float::with_val(prec, &modulus / 2u32).sqrt());
        let half = Float::with_val(prec, 0.5);
        return Ok(erf(&arg, ctx).scale(&half).add_real(&half));
    }
    Err(Error::domain(format!(
        "phase {} is outside both regimes of the leading-order approximation",
        phi.to_f64()
    )))
}

/// Largest |phase| that [`terminant_on_sheet`] accepts for Re ν > 0.
pub fn sheet_limit(prec: u32) -> Float {
    Float::with_val(prec, pi(prec) * 3u32) / 2u32 - RAY_MARGIN
}
