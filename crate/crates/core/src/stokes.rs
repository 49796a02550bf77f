//! Stokes multipliers S_n(θ) extracted from Z(λ, a, s) near arg a = ±π/2.

use rayon::prelude::*;
use rug::Float;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expansion::{h_block_in, padded_base, remainder_pair_in, Frame, TruncationSchedule};
use crate::mp::parse::format_decimal;
use crate::mp::{erf, pi, CNum, DecimalComplex, PrecisionContext};
use crate::oracle::{lerch_reference, z_from_lerch, LerchParams};

/// Which Stokes line the multiplier belongs to: arg a = π/2 or −π/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Upper,
    Lower,
}

impl Side {
    pub fn of(theta: f64) -> Self {
        if theta >= 0.0 { Side::Upper } else { Side::Lower }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Side::Upper => "upper",
            Side::Lower => "lower",
        }
    }
}

#[derive(Debug, Clone)]
pub struct StokesSample {
    pub n: usize,
    /// arg a in radians.
    pub theta: f64,
    pub theta_over_pi: f64,
    pub s: CNum,
    /// ½ ± ½ erf[(θ ∓ π/2)√(π(n+ξ)|a|)].
    pub approx: f64,
    pub side: Side,
}

/// S_n(θ) for θ = arg a ∈ (0, π) (upper) or (−π, 0) (lower).
///
/// Upper:
/// S_n = e^{−2πi(n+λ′)a+πis/2}(n+λ′)^{1−s}·{Z/(2π)^s − (i/2π)Σ_{m≤n} H_m
///       − e^{πis/2}Σ_{m<n}(m+λ′)^{s−1}R′_m + e^{−πis/2}Σ_{m≤n}(m+λ)^{s−1}R_m},
/// and the lower multiplier swaps the roles: e^{2πi(n+λ)a−πis/2}(n+λ)^{1−s},
/// primed remainders for m ≤ n and unprimed ones for m < n.
///
/// Fails with [`Error::Precision`] when the braces cancel more than
/// digits − 10 decimal digits of the largest quantity entering them.
pub fn stokes_multiplier(
    n: usize,
    p: &LerchParams,
    sch: &TruncationSchedule,
    ctx: &PrecisionContext,
) -> Result<CNum> {
    if n > sch.m_max() {
        return Err(Error::domain(format!(
            "S_{n} needs truncation indices up to m = {n}, schedule has mMax = {}",
            sch.m_max()
        )));
    }
    let theta = p.theta().to_f64();
    if theta == 0.0 {
        return Err(Error::domain("θ = 0 lies on neither Stokes line"));
    }
    let side = Side::of(theta);
    if side == Side::Upper && p.is_lambda_one() && n == 0 {
        return Err(Error::domain("at λ = 1 the upper exponentials start at n = 1"));
    }
    let frame = Frame::new(p, ctx);
    let prec = frame.prec;
    let l = lerch_reference(&frame.q, ctx)?;
    let z = z_from_lerch(&frame.q, &l, ctx)?;

    let two_pi = Float::with_val(prec, pi(prec) * 2u32);
    let two_pi_s = CNum::real(two_pi.clone()).pow(&frame.s);
    let top = sch.n_at(n).max(sch.n_prime_at(n));
    let base = padded_base(&frame, top)?;

    let mut largest = Float::new(prec);
    let mut track = |v: &CNum| {
        let a = v.abs();
        if a > largest {
            largest = a;
        }
    };
    let mut brace = &z / &two_pi_s;
    track(&brace);
    let e_plus = frame.e_pi_i_s(0.5);
    let e_minus = frame.e_pi_i_s(-0.5);
    for m in 0..=n {
        let h = h_block_in(m, &frame, sch, &base)?.mul_i().scale(&two_pi.clone().recip());
        track(&h);
        brace -= &h;
        let (r, rp) = remainder_pair_in(m, &frame, sch)?;
        let take_primed = frame.has_primed(m) && (m < n || side == Side::Lower);
        let take_plain = m < n || side == Side::Upper;
        if take_primed {
            let t = &(&e_plus * &frame.weight(m, true)) * &rp;
            track(&t);
            brace -= &t;
        }
        if take_plain {
            let t = &(&e_minus * &frame.weight(m, false)) * &r;
            track(&t);
            brace += &t;
        }
    }
    let lost = if brace.is_zero() {
        u32::MAX
    } else {
        let ratio = Float::with_val(prec, &largest / brace.abs());
        ratio.log10().to_f64().max(0.0).floor() as u32
    };
    let budget = ctx.digits().saturating_sub(10);
    if lost > budget {
        return Err(Error::Precision { lost_digits: lost, budget });
    }
    let prefactor = match side {
        Side::Upper => {
            let xp = frame.two_pi_a.scale(&frame.shift(n, true));
            &(&xp.mul_neg_i().exp() * &e_plus) / &frame.weight(n, true)
        }
        Side::Lower => {
            let x = frame.two_pi_a.scale(&frame.shift(n, false));
            &(&x.mul_i().exp() * &e_minus) / &frame.weight(n, false)
        }
    };
    Ok((&prefactor * &brace).with_prec(ctx.bits()))
}

/// ½ + ½ erf[(θ − π/2)√(π(n+λ′)|a|)] for θ ≥ 0 and ½ − ½ erf[(θ + π/2)√(π(n+λ)|a|)] for θ < 0.
pub fn stokes_erf_approx(n: usize, theta: f64, a_mod: f64, lambda: f64) -> f64 {
    let ctx = PrecisionContext::with_digits(30).expect("valid precision");
    let prec = ctx.bits();
    let half_pi = std::f64::consts::FRAC_PI_2;
    let (offset, xi, sign) = match Side::of(theta) {
        Side::Upper => (theta - half_pi, 1.0 - lambda, 1.0),
        Side::Lower => (theta + half_pi, lambda, -1.0),
    };
    let width = (std::f64::consts::PI * (n as f64 + xi) * a_mod).sqrt();
    let e = erf(&CNum::from_f64(prec, offset * width, 0.0), &ctx).re.to_f64();
    0.5 + sign * 0.5 * e
}

/// Standard θ/π grids (positive half) for the S_0 and S_1 tables.
pub const TABLE_ONE_GRID: [f64; 11] = [0.30, 0.40, 0.45, 0.48, 0.49, 0.50, 0.51, 0.52, 0.55, 0.60, 0.70];
pub const TABLE_TWO_GRID: [f64; 11] = [0.35, 0.40, 0.45, 0.48, 0.49, 0.50, 0.51, 0.52, 0.55, 0.60, 0.65];

/// ± the grid, sorted ascending.
pub fn symmetric_grid(half: &[f64]) -> Vec<f64> {
    let mut v: Vec<f64> = half.iter().flat_map(|&t| [-t, t]).collect();
    v.sort_by(|a, b| a.partial_cmp(b).expect("finite grid"));
    v
}

/// One row of a θ sweep; failures are kept in place.
#[derive(Debug, Clone)]
pub struct StokesRow {
    pub theta_over_pi: f64,
    pub result: Result<StokesSample>,
}

/// S_n over a grid of θ/π values with |a|, λ, s taken from `template`.
/// Rows are computed in parallel and returned sorted by θ.
pub fn stokes_table(
    n: usize,
    template: &LerchParams,
    theta_over_pi: &[f64],
    sch: &TruncationSchedule,
    ctx: &PrecisionContext,
) -> Vec<StokesRow> {
    let mut grid = theta_over_pi.to_vec();
    grid.sort_by(|a, b| a.partial_cmp(b).expect("finite grid"));
    let prec = ctx.bits();
    let a_mod = Float::with_val(prec, template.a_mod());
    let lambda = template.lambda().to_f64();
    grid.par_iter()
        .map(|&t| {
            let result = (|| {
                if !(t.abs() < 1.0) || t == 0.0 {
                    return Err(Error::domain(format!("θ/π = {t} is outside (−1, 1) \\ {{0}}")));
                }
                let theta = Float::with_val(prec, t) * pi(prec);
                let p = template.with_polar_a(&a_mod, &theta)?;
                let s = stokes_multiplier(n, &p, sch, ctx)?;
                let theta_f = theta.to_f64();
                Ok(StokesSample {
                    n,
                    theta: theta_f,
                    theta_over_pi: t,
                    s,
                    approx: stokes_erf_approx(n, theta_f, a_mod.to_f64(), lambda),
                    side: Side::of(theta_f),
                })
            })();
            StokesRow { theta_over_pi: t, result }
        })
        .collect()
}

/// Header of the CSV table format.
pub const CSV_HEADER: &str = "theta_over_pi,re_S,im_S,approx,side,n";

/// CSV rendering; `digits` significant digits for S. Failed rows are skipped
/// here and must be reported by the caller.
pub fn to_csv(samples: &[StokesSample], digits: usize) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for s in samples {
        let (re, im) = s.s.to_decimal_pair(digits);
        out.push_str(&format!(
            "{},{},{},{:.10},{},{}\n",
            s.theta_over_pi,
            re,
            im,
            s.approx,
            s.side.as_str(),
            s.n
        ));
    }
    out
}

/// JSON mirror of a sample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StokesRecord {
    pub theta_over_pi: String,
    #[serde(rename = "S")]
    pub s: DecimalComplex,
    pub approx: String,
    pub side: Side,
    pub n: usize,
}

impl StokesRecord {
    pub fn from_sample(s: &StokesSample, digits: usize) -> Self {
        StokesRecord {
            theta_over_pi: s.theta_over_pi.to_string(),
            s: DecimalComplex::from_cnum(&s.s, digits),
            approx: format_decimal(&Float::with_val(64, s.approx), 10),
            side: s.side,
            n: s.n,
        }
    }
}
