use rug::Float;

use crate::error::{Error, Result};
use crate::mp::parse::parse_real;
use crate::mp::{pi, CNum};

/// The triple (λ, a, s) of L(λ, a, s) = Σ_{n≥0} e^{2πinλ} (n+a)^{−s}.
///
/// λ ∈ (0, 1] is real, a ≠ 0 with |arg a| < π, and s is any complex number.
#[derive(Debug, Clone, PartialEq)]
pub struct LerchParams {
    lambda: Float,
    a: CNum,
    s: CNum,
    theta: Float,
}

impl LerchParams {
    pub fn new(lambda: Float, a: CNum, s: CNum) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 0 && lambda <= 1) {
            return Err(Error::domain(format!("λ must lie in (0, 1], got {}", lambda.to_f64())));
        }
        if !a.is_finite() || a.is_zero() {
            return Err(Error::domain("a must be finite and non-zero"));
        }
        if a.im.is_zero() && a.re < 0 {
            return Err(Error::domain(format!(
                "arg a = π is outside the sector |arg a| < π (a = {a})"
            )));
        }
        if !s.is_finite() {
            return Err(Error::domain("s must be finite"));
        }
        let theta = a.arg();
        Ok(LerchParams { lambda, a, s, theta })
    }

    /// a = |a|·e^{iθ} built from its polar form; θ in radians, |θ| < π.
    pub fn from_polar(lambda: Float, a_mod: &Float, theta: &Float, s: CNum) -> Result<Self> {
        let prec = a_mod.prec().max(theta.prec());
        if *a_mod <= 0 {
            return Err(Error::domain("|a| must be positive"));
        }
        if Float::with_val(prec, theta.abs_ref()) >= pi(prec) {
            return Err(Error::domain(format!(
                "θ = {} lies outside (−π, π)",
                theta.to_f64()
            )));
        }
        let a = CNum::from_polar(a_mod, theta);
        let mut p = LerchParams::new(lambda, a, s)?;
        // keep the exact phase rather than atan2 of the rounded components
        p.theta = Float::with_val(prec, theta);
        Ok(p)
    }

    /// Parses decimal or fractional strings; θ is given in units of π.
    pub fn parse_polar(
        lambda: &str,
        a_mod: &str,
        theta_over_pi: &str,
        s_re: &str,
        s_im: &str,
        prec: u32,
    ) -> Result<Self> {
        let lambda = parse_real(lambda, prec)?;
        let a_mod = parse_real(a_mod, prec)?;
        let theta = parse_real(theta_over_pi, prec)? * pi(prec);
        let s = CNum::new(parse_real(s_re, prec)?, parse_real(s_im, prec)?);
        LerchParams::from_polar(lambda, &a_mod, &theta, s)
    }

    /// Parses decimal or fractional strings for a in Cartesian form.
    pub fn parse_cartesian(
        lambda: &str,
        a_re: &str,
        a_im: &str,
        s_re: &str,
        s_im: &str,
        prec: u32,
    ) -> Result<Self> {
        let lambda = parse_real(lambda, prec)?;
        let a = CNum::new(parse_real(a_re, prec)?, parse_real(a_im, prec)?);
        let s = CNum::new(parse_real(s_re, prec)?, parse_real(s_im, prec)?);
        LerchParams::new(lambda, a, s)
    }

    pub fn lambda(&self) -> &Float {
        &self.lambda
    }

    /// λ′ = 1 − λ.
    pub fn lambda_prime(&self) -> Float {
        Float::with_val(self.lambda.prec(), 1 - &self.lambda)
    }

    pub fn a(&self) -> &CNum {
        &self.a
    }

    pub fn s(&self) -> &CNum {
        &self.s
    }

    /// θ = arg a ∈ (−π, π).
    pub fn theta(&self) -> &Float {
        &self.theta
    }

    pub fn a_mod(&self) -> Float {
        self.a.abs()
    }

    /// ε(λ): 1 when λ = 1, else 0.
    pub fn epsilon(&self) -> u8 {
        u8::from(self.lambda == 1)
    }

    pub fn is_lambda_one(&self) -> bool {
        self.lambda == 1
    }

    /// The same parameters converted to `prec` bits.
    pub fn with_prec(&self, prec: u32) -> Self {
        LerchParams {
            lambda: Float::with_val(prec, &self.lambda),
            a: self.a.with_prec(prec),
            s: self.s.with_prec(prec),
            theta: Float::with_val(prec, &self.theta),
        }
    }

    /// Replaces a, keeping λ and s.
    pub fn with_a(&self, a: CNum) -> Result<Self> {
        LerchParams::new(self.lambda.clone(), a, self.s.clone())
    }

    /// Replaces a by its polar form, keeping λ and s.
    pub fn with_polar_a(&self, a_mod: &Float, theta: &Float) -> Result<Self> {
        LerchParams::from_polar(self.lambda.clone(), a_mod, theta, self.s.clone())
    }

    /// e^{2πiλ}.
    pub fn x(&self, prec: u32) -> CNum {
        let phase = Float::with_val(prec, pi(prec) * 2u32) * &self.lambda;
        CNum::cis(&phase)
    }
}
