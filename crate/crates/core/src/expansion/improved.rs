use rayon::prelude::*;
use rug::Float;
use serde::{Deserialize, Serialize};

use super::schedule::TruncationSchedule;
use crate::error::{Error, Result};
use crate::mp::parse::format_decimal;
use crate::mp::{gamma, hurwitz_zeta, pi, CNum, DecimalComplex, PrecisionContext};
use crate::oracle::{leading_term, LerchParams};
use crate::terminant::{terminant, ArgTrackedZ};

/// Quantities shared by every block of one evaluation, computed once on the
/// principal branch.
pub(crate) struct Frame {
    pub ctx: PrecisionContext,
    pub prec: u32,
    pub q: LerchParams,
    pub lam: Float,
    pub lamp: Float,
    pub s: CNum,
    pub a_mod: Float,
    pub theta: Float,
    ln_two_pi_a: CNum,
    pub two_pi_a: CNum,
}

impl Frame {
    pub fn new(p: &LerchParams, ctx: &PrecisionContext) -> Self {
        let prec = ctx.bits();
        let q = p.with_prec(prec);
        let two_pi = Float::with_val(prec, pi(prec) * 2u32);
        let two_pi_a = q.a().scale(&two_pi);
        Frame {
            ctx: *ctx,
            prec,
            lam: q.lambda().clone(),
            lamp: q.lambda_prime(),
            s: q.s().clone(),
            a_mod: q.a_mod(),
            theta: q.theta().clone(),
            ln_two_pi_a: two_pi_a.ln(),
            two_pi_a,
            q,
        }
    }

    /// Γ(r+s)/(2πa)^{r+s}.
    pub fn base_term(&self, r: usize) -> Result<CNum> {
        let nu = self.s.add_i64(r as i64);
        let g = gamma(&nu, &self.ctx)?;
        Ok(&g * &(-(&nu * &self.ln_two_pi_a)).exp())
    }

    /// Γ(r+s)/(2πa)^{r+s} for r = lo..hi by the upward recurrence.
    pub fn base_terms(&self, lo: usize, hi: usize) -> Result<Vec<CNum>> {
        if lo >= hi {
            return Ok(Vec::new());
        }
        let mut out = Vec::with_capacity(hi - lo);
        let mut b = self.base_term(lo)?;
        for r in lo..hi {
            if r > lo {
                b = &(&b * &self.s.add_i64(r as i64 - 1)) / &self.two_pi_a;
            }
            out.push(b.clone());
        }
        Ok(out)
    }

    pub(crate) fn shift(&self, m: usize, primed: bool) -> Float {
        let xi = if primed { &self.lamp } else { &self.lam };
        Float::with_val(self.prec, xi + m as u32)
    }

    pub(crate) fn e_pi_i_s(&self, factor: f64) -> CNum {
        let rot = CNum::new(Float::new(self.prec), Float::with_val(self.prec, pi(self.prec) * factor));
        (&rot * &self.s).exp()
    }

    /// (m+ξ)^{s−1}.
    pub(crate) fn weight(&self, m: usize, primed: bool) -> CNum {
        let w = CNum::real(self.shift(m, primed));
        w.pow(&self.s.add_i64(-1))
    }

    /// Whether the λ′ series has a term at index m (the k = 0 term is absent at λ = 1).
    pub(crate) fn has_primed(&self, m: usize) -> bool {
        !(self.q.is_lambda_one() && m == 0)
    }
}

/// (−i)^r for `sign = −1` and i^r for `sign = 1`.
fn i_power(r: usize, sign: i32, prec: u32) -> CNum {
    let k = (r as i64 * i64::from(sign)).rem_euclid(4);
    match k {
        0 => CNum::one(prec),
        1 => CNum::i(prec),
        2 => CNum::from_i64(prec, -1),
        _ => -CNum::i(prec),
    }
}

/// r-range [lo, hi) of the λ and λ′ parts of H_m.
fn block_ranges(m: usize, frame: &Frame, sch: &TruncationSchedule) -> ((usize, usize), Option<(usize, usize)>) {
    let plain = (sch.n_before(m), sch.n_at(m));
    let primed = if !frame.has_primed(m) {
        None
    } else if frame.q.is_lambda_one() && m == 1 {
        // the k = 0 term is missing, so the first λ′ block starts at r = 1
        Some((1, sch.n_prime_at(1)))
    } else {
        Some((sch.n_prime_before(m), sch.n_prime_at(m)))
    };
    (plain, primed)
}

fn side_sum(
    frame: &Frame,
    range: (usize, usize),
    m: usize,
    primed: bool,
    base: &[CNum],
) -> Result<CNum> {
    let prec = frame.prec;
    let w = CNum::real(frame.shift(m, primed));
    let sign = if primed { 1 } else { -1 };
    let mut acc = CNum::zero(prec);
    for r in range.0..range.1 {
        let z = hurwitz_zeta(&CNum::from_i64(prec, r as i64 + 1), &w, &frame.ctx)?;
        acc += &(&(&i_power(r, sign, prec) * &base[r]) * &z);
    }
    Ok(acc)
}

pub(crate) fn h_block_in(m: usize, frame: &Frame, sch: &TruncationSchedule, base: &[CNum]) -> Result<CNum> {
    let (plain, primed) = block_ranges(m, frame, sch);
    let mut h = side_sum(frame, plain, m, false, base)?;
    if let Some(range) = primed {
        h -= &side_sum(frame, range, m, true, base)?;
    }
    Ok(h)
}

/// H_m = Σ_{r=N_{m−1}}^{N_m−1} (−i)^r Γ(r+s)/(2πa)^{r+s} ζ(r+1, m+λ)
///       − Σ_{r=N′_{m−1}}^{N′_m−1} i^r Γ(r+s)/(2πa)^{r+s} ζ(r+1, m+λ′).
pub fn h_block(m: usize, p: &LerchParams, sch: &TruncationSchedule, ctx: &PrecisionContext) -> Result<CNum> {
    if m > sch.m_max() {
        return Err(Error::domain(format!("block {m} lies beyond mMax = {}", sch.m_max())));
    }
    let frame = Frame::new(p, ctx);
    let top = sch.n_at(m).max(sch.n_prime_at(m));
    let base = padded_base(&frame, top)?;
    h_block_in(m, &frame, sch, &base)
}

/// base[r] = Γ(r+s)/(2πa)^{r+s} for r < hi (index 0 unused).
pub(crate) fn padded_base(frame: &Frame, hi: usize) -> Result<Vec<CNum>> {
    let mut base = vec![CNum::zero(frame.prec)];
    base.extend(frame.base_terms(1, hi.max(1))?);
    Ok(base)
}

pub(crate) fn remainder_pair_in(m: usize, frame: &Frame, sch: &TruncationSchedule) -> Result<(CNum, CNum)> {
    let prec = frame.prec;
    let half_pi = Float::with_val(prec, pi(prec) / 2u32);
    let two_pi_mod = Float::with_val(prec, &frame.a_mod * Float::with_val(prec, pi(prec) * 2u32));
    let e_minus_pi_i_s = frame.e_pi_i_s(-1.0);

    let x = frame.two_pi_a.scale(&frame.shift(m, false));
    let z = ArgTrackedZ::new(
        Float::with_val(prec, &two_pi_mod * &frame.shift(m, false)),
        Float::with_val(prec, &frame.theta - &half_pi),
    )?;
    let nu = frame.s.add_i64(sch.n_at(m) as i64);
    let t = terminant(&nu, &z, &frame.ctx)?;
    let r = &(&x.mul_neg_i().exp() * &e_minus_pi_i_s) * &t;

    let r_prime = if frame.has_primed(m) {
        let xp = frame.two_pi_a.scale(&frame.shift(m, true));
        let zp = ArgTrackedZ::new(
            Float::with_val(prec, &two_pi_mod * &frame.shift(m, true)),
            Float::with_val(prec, &frame.theta + &half_pi),
        )?;
        let nup = frame.s.add_i64(sch.n_prime_at(m) as i64);
        let tp = terminant(&nup, &zp, &frame.ctx)?;
        &(&xp.mul_i().exp() * &e_minus_pi_i_s) * &tp
    } else {
        CNum::zero(prec)
    };
    Ok((r, r_prime))
}

/// (R_m, R′_m) with R_m = e^{−iX−πis} T_{N_m+s}(−iX), R′_m = e^{iX′−πis} T_{N′_m+s}(iX′).
///
/// The arguments carry the phases θ − π/2 and θ + π/2. Indices beyond mMax use
/// the frozen N_M, N′_M. R′_0 is zero at λ = 1.
pub fn remainder_terms(
    m: usize,
    p: &LerchParams,
    sch: &TruncationSchedule,
    ctx: &PrecisionContext,
) -> Result<(CNum, CNum)> {
    let frame = Frame::new(p, ctx);
    remainder_pair_in(m, &frame, sch)
}

/// The blocks of one evaluation of the improved expansion.
#[derive(Debug, Clone)]
pub struct ExpansionBreakdown {
    pub schedule: TruncationSchedule,
    pub h: Vec<CNum>,
    pub r: Vec<CNum>,
    pub r_prime: Vec<CNum>,
    /// ε(λ) a^{1−s}/(s−1) + a^{−s}{1 + F(λ, 0)}.
    pub leading: CNum,
    pub total: CNum,
    /// Bound on the omitted m > mMax part of the sum.
    pub tail_bound: Float,
    pub digits: u32,
}

/// JSON mirror of [`ExpansionBreakdown`] with decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BreakdownRecord {
    pub schedule: TruncationSchedule,
    #[serde(rename = "H")]
    pub h: Vec<DecimalComplex>,
    #[serde(rename = "R")]
    pub r: Vec<DecimalComplex>,
    #[serde(rename = "Rprime")]
    pub r_prime: Vec<DecimalComplex>,
    pub leading: DecimalComplex,
    pub total: DecimalComplex,
    pub tail_bound: String,
    pub digits: u32,
}

impl ExpansionBreakdown {
    pub fn to_record(&self) -> BreakdownRecord {
        let d = self.digits as usize;
        let dec = |v: &[CNum]| v.iter().map(|z| DecimalComplex::from_cnum(z, d)).collect();
        BreakdownRecord {
            schedule: self.schedule.clone(),
            h: dec(&self.h),
            r: dec(&self.r),
            r_prime: dec(&self.r_prime),
            leading: DecimalComplex::from_cnum(&self.leading, d),
            total: DecimalComplex::from_cnum(&self.total, d),
            tail_bound: format_decimal(&self.tail_bound, 6),
            digits: self.digits,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_record()).expect("breakdown serializes")
    }

    /// The total recomputed from the stored parts.
    pub fn reassemble(&self, p: &LerchParams, ctx: &PrecisionContext) -> Result<CNum> {
        let frame = Frame::new(p, ctx);
        assemble(&frame, &self.leading, &self.h, &self.r, &self.r_prime)
    }
}

/// (2π)^s/Γ(s).
fn outer_factor(frame: &Frame) -> Result<CNum> {
    let prec = frame.prec;
    let two_pi = CNum::real(Float::with_val(prec, pi(prec) * 2u32));
    Ok(&two_pi.pow(&frame.s) / &gamma(&frame.s, &frame.ctx)?)
}

/// (i/2π) H_m − e^{−πis/2}(m+λ)^{s−1} R_m + e^{πis/2}(m+λ′)^{s−1} R′_m.
fn contribution(frame: &Frame, m: usize, h: &CNum, r: &CNum, rp: &CNum) -> CNum {
    let prec = frame.prec;
    let two_pi = Float::with_val(prec, pi(prec) * 2u32);
    let mut c = h.mul_i().scale(&two_pi.recip());
    c -= &(&(&frame.e_pi_i_s(-0.5) * &frame.weight(m, false)) * r);
    if frame.has_primed(m) {
        c += &(&(&frame.e_pi_i_s(0.5) * &frame.weight(m, true)) * rp);
    }
    c
}

fn assemble(frame: &Frame, leading: &CNum, h: &[CNum], r: &[CNum], rp: &[CNum]) -> Result<CNum> {
    let mut sum = CNum::zero(frame.prec);
    for m in 0..h.len() {
        sum += &contribution(frame, m, &h[m], &r[m], &rp[m]);
    }
    Ok(&leading.with_prec(frame.prec) + &(&outer_factor(frame)? * &sum))
}

/// Decimal digits by which the largest term of the H blocks exceeds |a|^{−Re s}.
fn cancellation_digits(p: &LerchParams, sch: &TruncationSchedule) -> u32 {
    let s_re = p.s().re.to_f64();
    let s_im = p.s().im.to_f64();
    let a_mod = p.a_mod().to_f64();
    let theta = p.theta().to_f64();
    let lam = p.lambda().to_f64();
    let ln_2pi_a = (2.0 * std::f64::consts::PI * a_mod).ln();
    let reference = -s_re * a_mod.ln();
    let top = sch.n_at(sch.m_max()).max(sch.n_prime_at(sch.m_max()));
    // ln|Γ(r+s)| by recurrence from Stirling at r = 1 + |s|
    let ln_abs_gamma = |x: f64, y: f64| -> f64 {
        let mut acc = 0.0;
        let (mut re, im) = (x, y);
        while re < 10.0 {
            acc -= (re * re + im * im).sqrt().ln();
            re += 1.0;
        }
        let r2 = re * re + im * im;
        let ln_r = 0.5 * r2.ln();
        let arg = im.atan2(re);
        (re - 0.5) * ln_r - im * arg - re + 0.5 * (2.0 * std::f64::consts::PI).ln() + acc
    };
    let mut worst = f64::NEG_INFINITY;
    for m in 0..=sch.m_max() {
        for (xi, lo, hi) in [
            (lam, sch.n_before(m), sch.n_at(m)),
            (1.0 - lam, sch.n_prime_before(m), sch.n_prime_at(m)),
        ] {
            let w = m as f64 + xi;
            if w <= 0.0 {
                continue;
            }
            for r in lo..hi.min(top) {
                let rf = r as f64;
                let term = ln_abs_gamma(rf + s_re, s_im) - (rf + s_re) * ln_2pi_a + s_im * theta
                    - (rf + 1.0) * w.ln();
                worst = worst.max(term);
            }
        }
    }
    let excess = (worst - reference) / std::f64::consts::LN_10;
    if excess.is_finite() && excess > 0.0 {
        excess.ceil() as u32
    } else {
        0
    }
}

/// L(λ, a, s) assembled from the H blocks and terminant remainders for m ≤ mMax.
///
/// The m > mMax part is bounded by evaluating the m = mMax+1 remainders exactly
/// (with frozen orders) and multiplying by an envelope factor; a
/// [`Error::Tail`] is returned when that bound exceeds 10^{−(digits+5)}·|total|.
pub fn exp_improved_eval(
    p: &LerchParams,
    sch: &TruncationSchedule,
    ctx: &PrecisionContext,
) -> Result<ExpansionBreakdown> {
    if sch.m_max() < 2 {
        return Err(Error::domain("the improved expansion needs mMax ≥ 2"));
    }
    let work = ctx.extended(cancellation_digits(p, sch) + 5);
    let frame = Frame::new(p, &work);
    let m_max = sch.m_max();
    let top = sch.n_at(m_max).max(sch.n_prime_at(m_max));
    let base = padded_base(&frame, top)?;

    let parts: Vec<Result<(CNum, CNum, CNum)>> = (0..=m_max + 1)
        .into_par_iter()
        .map(|m| {
            let h = if m <= m_max {
                h_block_in(m, &frame, sch, &base)?
            } else {
                CNum::zero(frame.prec)
            };
            let (r, rp) = remainder_pair_in(m, &frame, sch)?;
            Ok((h, r, rp))
        })
        .collect();
    let mut h = Vec::with_capacity(m_max + 1);
    let mut r = Vec::with_capacity(m_max + 1);
    let mut rp = Vec::with_capacity(m_max + 1);
    for part in parts {
        let (a, b, c) = part?;
        h.push(a);
        r.push(b);
        rp.push(c);
    }
    let (tail_r, tail_rp) = (r.pop().expect("tail"), rp.pop().expect("tail"));
    h.pop();

    let leading = leading_term(&frame.q, &frame.ctx)?;
    let total = assemble(&frame, &leading, &h, &r, &rp)?;
    let tail_bound = tail_estimate(&frame, sch, &tail_r, &tail_rp)?;

    let tol = Float::with_val(frame.prec, ctx.tolerance()) * Float::with_val(frame.prec, 1e-5) * total.abs();
    if tail_bound > tol {
        return Err(Error::Tail {
            bound: format_decimal(&tail_bound, 4),
            tolerance: format_decimal(&tol, 4),
        });
    }
    let out = ctx.bits();
    Ok(ExpansionBreakdown {
        schedule: sch.clone(),
        h: h.iter().map(|z| z.with_prec(out)).collect(),
        r: r.iter().map(|z| z.with_prec(out)).collect(),
        r_prime: rp.iter().map(|z| z.with_prec(out)).collect(),
        leading: leading.with_prec(out),
        total: total.with_prec(out),
        tail_bound: Float::with_val(out, &tail_bound),
        digits: ctx.digits(),
    })
}

/// |(2π)^s/Γ(s)|·Σ_side |tail term at M+1|·envelope.
///
/// With frozen orders the late terms decay like (m+ξ)^{−N−1}, whose sum from
/// M+1 on is at most the first term times 1 + (M+1+ξ)/N. Past the Stokes line the
/// terminant tends to 1 and the decay is geometric with ratio e^{−2π|a||sin θ|}.
fn tail_estimate(frame: &Frame, sch: &TruncationSchedule, r: &CNum, rp: &CNum) -> Result<Float> {
    let prec = frame.prec;
    let m = sch.m_max() + 1;
    let outer = outer_factor(frame)?.abs();
    let theta = frame.theta.to_f64();
    let a_mod = frame.a_mod.to_f64();
    let geometric = 1.0 / (1.0 - (-2.0 * std::f64::consts::PI * a_mod * theta.sin().abs()).exp());
    let half = std::f64::consts::FRAC_PI_2;
    let envelope = |n: usize, shift: f64, crossed: bool| {
        let power = 1.0 + shift / n as f64;
        if crossed { power.max(geometric) } else { power }
    };
    let lam = frame.lam.to_f64();
    let plain = Float::with_val(prec, (&frame.weight(m, false) * r).abs() * &outer)
        * envelope(sch.n_at(m), m as f64 + lam, theta < -half);
    let primed = if frame.has_primed(m) {
        Float::with_val(prec, (&frame.weight(m, true) * rp).abs() * &outer)
            * envelope(sch.n_prime_at(m), m as f64 + 1.0 - lam, theta > half)
    } else {
        Float::new(prec)
    };
    Ok(plain + primed)
}

/// A schedule of least-term indices long enough for [`exp_improved_eval`],
/// found by growing mMax until the tail test passes.
pub fn exp_improved_auto(p: &LerchParams, ctx: &PrecisionContext) -> Result<ExpansionBreakdown> {
    let mut m_max = initial_m_max(p, ctx);
    loop {
        let sch = TruncationSchedule::optimal(p, m_max, ctx)?;
        match exp_improved_eval(p, &sch, ctx) {
            Err(Error::Tail { .. }) if m_max < 400 => m_max += 2,
            other => return other,
        }
    }
}

/// A first guess at mMax for least-term schedules: the m-th remainder is about
/// e^{−2π(m+ξ)|a|}, or e^{−2π(m+ξ)|a||sin θ|} once the Stokes line is crossed.
fn initial_m_max(p: &LerchParams, ctx: &PrecisionContext) -> usize {
    let a_mod = p.a_mod().to_f64();
    let theta = p.theta().to_f64();
    let target = f64::from(ctx.digits() + 5 + 4) * std::f64::consts::LN_10
        + p.s().re.to_f64().abs() * a_mod.ln().abs();
    let damping = if theta.abs() > std::f64::consts::FRAC_PI_2 { theta.sin().abs().max(0.05) } else { 1.0 };
    let rate = 2.0 * std::f64::consts::PI * a_mod * damping;
    ((target / rate).ceil() as usize).clamp(2, 400)
}

/// Σ_{k≤kMax} Σ_{r=1}^{N_k−1} A_r (k+λ)^{−r−1} − Σ′_{k≤kMax} Σ_{r=1}^{N′_k−1} A′_r (k+λ′)^{−r−1},
/// A_r = (−i)^r Γ(r+s)/(2πa)^{r+s}, A′_r = i^r Γ(r+s)/(2πa)^{r+s}, with the
/// schedule frozen at N_M, N′_M beyond mMax.
pub fn double_sum_direct(
    p: &LerchParams,
    sch: &TruncationSchedule,
    k_max: usize,
    ctx: &PrecisionContext,
) -> Result<CNum> {
    if k_max < sch.m_max() {
        return Err(Error::domain(format!(
            "kMax = {k_max} must be at least mMax = {}",
            sch.m_max()
        )));
    }
    let frame = Frame::new(p, ctx);
    let prec = frame.prec;
    let top = sch.n_at(sch.m_max()).max(sch.n_prime_at(sch.m_max()));
    let base = padded_base(&frame, top)?;
    let side = |k: usize, primed: bool, n: usize| -> CNum {
        let w = Float::with_val(prec, frame.shift(k, primed).recip_ref());
        let sign = if primed { 1 } else { -1 };
        let mut acc = CNum::zero(prec);
        let mut wp = Float::with_val(prec, &w * &w);
        for r in 1..n {
            acc += &(&i_power(r, sign, prec) * &base[r]).scale(&wp);
            wp *= &w;
        }
        acc
    };
    let mut total = CNum::zero(prec);
    for k in 0..=k_max {
        total += &side(k, false, sch.n_at(k));
        if frame.has_primed(k) {
            total -= &side(k, true, sch.n_prime_at(k));
        }
    }
    Ok(total)
}
