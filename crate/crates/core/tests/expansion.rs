use lerch_stokes::expansion::{
    double_sum_direct, exp_improved_auto, exp_improved_eval, h_block, optimal_truncation,
    poincare_expand, poincare_remainder, remainder_terms, smallest_term, BreakdownRecord,
    TruncationSchedule,
};
use lerch_stokes::mp::{gamma, hurwitz_zeta, pi, CNum, PrecisionContext};
use lerch_stokes::oracle::{lerch_direct, lerch_reference, LerchParams};
use lerch_stokes::terminant::{terminant, ArgTrackedZ};
use lerch_stokes::Error;
use proptest::prelude::*;
use rug::Float;

fn ctx(d: u32) -> PrecisionContext {
    PrecisionContext::with_digits(d).unwrap()
}

fn polar(lambda: &str, a_mod: &str, theta_over_pi: &str, c: &PrecisionContext) -> LerchParams {
    LerchParams::parse_polar(lambda, a_mod, theta_over_pi, "4", "0", c.bits()).unwrap()
}

fn rel(a: &CNum, b: &CNum) -> f64 {
    ((a - b).abs() / b.abs()).to_f64()
}

fn table_one_schedule() -> TruncationSchedule {
    TruncationSchedule::new(vec![17, 49], vec![7, 38]).unwrap()
}

/// Γ(r+s)/(2πa)^{r+s} written out directly.
fn base(r: usize, p: &LerchParams, c: &PrecisionContext) -> CNum {
    let prec = c.bits();
    let nu = p.s().add_i64(r as i64).with_prec(prec);
    let two_pi_a = p.a().with_prec(prec).scale(&Float::with_val(prec, pi(prec) * 2u32));
    &gamma(&nu, c).unwrap() / &two_pi_a.pow(&nu)
}

fn i_pow(r: usize, sign: i64, prec: u32) -> CNum {
    CNum::new(Float::new(prec), Float::with_val(prec, sign)).powi(r as i64)
}

#[test]
fn least_term_truncation_indices() {
    let c = ctx(30);
    let s = CNum::from_i64(c.bits(), 4);
    assert_eq!(optimal_truncation(0, 2.0 / 3.0, 5.0, &s, &c), 17);
    assert_eq!(optimal_truncation(0, 1.0 / 3.0, 5.0, &s, &c), 7);
    assert_eq!(optimal_truncation(1, 2.0 / 3.0, 5.0, &s, &c), 49);
    assert_eq!(optimal_truncation(1, 1.0 / 3.0, 5.0, &s, &c), 38);
    let p = polar("2/3", "5", "0.3", &c);
    let sch = TruncationSchedule::optimal(&p, 1, &c).unwrap();
    assert_eq!(sch, table_one_schedule());
}

#[test]
fn schedule_validation() {
    assert!(TruncationSchedule::new(vec![3, 3], vec![1, 2]).is_err());
    assert!(TruncationSchedule::new(vec![0, 3], vec![1, 2]).is_err());
    assert!(TruncationSchedule::new(vec![1, 3], vec![1]).is_err());
    assert!(TruncationSchedule::new(vec![], vec![]).is_err());
    let sch = TruncationSchedule::linear(5, 3).unwrap();
    assert_eq!(sch.n(), &[5, 6, 7, 8]);
    assert_eq!(sch.n_before(0), 1);
    assert_eq!(sch.n_at(10), 8);
    let json = serde_json::to_string(&sch).unwrap();
    assert!(json.contains("\"Nprime\"") && json.contains("\"mMax\":3"));
    let c = ctx(20);
    let p = polar("2/3", "5", "0.3", &c);
    let longer = table_one_schedule().extended(&p, 3, &c).unwrap();
    assert_eq!(&longer.n()[..2], &[17, 49]);
    assert_eq!(longer.m_max(), 3);
}

#[test]
fn poincare_first_term_and_trig_form() {
    let c = ctx(40);
    let prec = c.bits();
    let p = polar("2/3", "5", "0.3", &c);
    let e = poincare_expand(&p, 5, &c).unwrap();
    assert_eq!(e.terms.len(), 5);
    let a = p.a().with_prec(prec);
    let x = CNum::cis(&(Float::with_val(prec, pi(prec) * 4u32) / 3u32));
    let first = &a.powi(-4) / &(CNum::one(prec) - &x);
    assert!(rel(&e.terms[0], &first) < 1e-38);
    assert!(e.pole_term.is_zero());

    // trigonometric coefficients at λ = 2/3, s = 4, a = 7
    let p = LerchParams::parse_cartesian("2/3", "7", "0", "4", "0", prec).unwrap();
    let e = poincare_expand(&p, 5, &c).unwrap();
    let a = 7.0f64;
    let (sn, cs) = ((std::f64::consts::PI * 2.0 / 3.0).sin(), (std::f64::consts::PI * 2.0 / 3.0).cos());
    let pre = a.powi(-4) / (2.0 * sn);
    let s = 4.0;
    let t1 = pre * s / (2.0 * a * sn);
    let t2 = -pre * s * (s + 1.0) * cs / (4.0 * a * a * sn * sn);
    let t3_num = -pre * s * (s + 1.0) * (s + 2.0) * (1.0 + 2.0 * cs * cs) / (a.powi(3) * sn.powi(3));
    let t4 = pre * s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (2.0 + cs * cs) * cs / (48.0 * a.powi(4) * sn.powi(4));
    let close = |z: &CNum, re: f64, im: f64| {
        let (zr, zi) = z.to_f64_pair();
        ((zr - re).abs() + (zi - im).abs()) / (re.abs() + im.abs())
    };
    // k = 0: i e^{−πiλ}/(2 sin πλ)·a^{−s}
    let phase = -std::f64::consts::PI * 2.0 / 3.0;
    assert!(close(&e.terms[0], -pre * phase.sin(), pre * phase.cos()) < 1e-13);
    assert!(close(&e.terms[1], t1, 0.0) < 1e-13);
    assert!(close(&e.terms[2], 0.0, t2) < 1e-13);
    // the third coefficient needs the constant 24; 23 would be off by 4%
    assert!(close(&e.terms[3], t3_num / 24.0, 0.0) < 1e-13);
    assert!(close(&e.terms[3], t3_num / 23.0, 0.0) > 0.04);
    assert!(close(&e.terms[4], 0.0, t4) < 1e-13);
}

#[test]
fn poincare_hurwitz_case() {
    // ζ(4, 10) ~ ½a^{−4} + a^{−3}/3 + (B_2/2!)·4·a^{−5} + (B_4/4!)·4·5·6·a^{−7}
    let c = ctx(40);
    let prec = c.bits();
    let p = LerchParams::parse_cartesian("1", "10", "0", "4", "0", prec).unwrap();
    let e = poincare_expand(&p, 4, &c).unwrap();
    let a = Float::with_val(prec, 10);
    let pw = |k: i32| Float::with_val(prec, rug::ops::Pow::pow(&a, -k));
    let expect = Float::with_val(prec, pw(4) / 2u32)
        + Float::with_val(prec, pw(3) / 3u32)
        + Float::with_val(prec, pw(5) * 4u32) / 12u32
        - Float::with_val(prec, pw(7) * 120u32) / 720u32;
    assert!(rel(&e.sum, &CNum::real(expect)) < 1e-38);
    assert!(e.terms[2].is_zero());
    let pole = LerchParams::parse_cartesian("1", "10", "0", "1", "0", prec).unwrap();
    assert!(matches!(poincare_expand(&pole, 3, &c), Err(Error::Pole { .. })));
    assert!(matches!(poincare_expand(&p, 0, &c), Err(Error::Domain(_))));
}

fn fitted_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

#[test]
fn remainder_scaling() {
    let c = ctx(50);
    for k in [1usize, 2, 3] {
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for a in ["5", "10", "20", "40"] {
            let p = polar("2/3", a, "0.3", &c);
            let r = poincare_remainder(&p, k, &c).unwrap();
            xs.push(a.parse::<f64>().unwrap().ln());
            ys.push(r.abs().to_f64().ln());
        }
        let slope = fitted_slope(&xs, &ys);
        let target = -(k as f64 + 4.0);
        assert!((slope - target).abs() <= 0.05 * target.abs(), "K = {k}: {slope}");
        if k == 3 {
            let ratio = (ys[1] - ys[0]).exp();
            let expect = 2f64.powi(-7);
            assert!((ratio / expect - 1.0).abs() < 0.2, "{ratio}");
        }
    }
}

#[test]
fn remainder_against_omitted_term() {
    let c = ctx(40);
    let p = LerchParams::parse_cartesian("1/2", "0", "20", "4", "0", c.bits()).unwrap();
    let r1 = poincare_remainder(&p, 1, &c).unwrap();
    let e = poincare_expand(&p, 2, &c).unwrap();
    assert!(r1.abs() <= Float::with_val(c.bits(), e.terms[1].abs() * 2u32));
    // telescoping: R_K − R_{K+1} is the K-th term
    let q = polar("2/3", "5", "0.3", &c);
    let r2 = poincare_remainder(&q, 2, &c).unwrap();
    let r3 = poincare_remainder(&q, 3, &c).unwrap();
    let e = poincare_expand(&q, 3, &c).unwrap();
    assert!(rel(&(&r2 - &r3), &e.terms[2]) < 1e-30);
}

#[test]
fn improved_minus_algebraic_scaling() {
    // improved total minus the K-term expansion scales like |a|^{−K−4}
    let c = ctx(40);
    let k = 2;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for a in ["5", "10", "20", "40"] {
        let p = polar("2/3", a, "0.3", &c);
        let b = exp_improved_auto(&p, &c).unwrap();
        let e = poincare_expand(&p, k, &c).unwrap();
        xs.push(a.parse::<f64>().unwrap().ln());
        ys.push((&b.total - &e.sum).abs().to_f64().ln());
    }
    let slope = fitted_slope(&xs, &ys);
    assert!((slope + 6.0).abs() <= 0.3, "{slope}");
}

#[test]
fn block_index_bookkeeping() {
    // H_0 at a = 5i with N_0 = 17, N′_0 = 7: r = 1..16 for λ, r = 1..6 for λ′
    let c = ctx(40);
    let prec = c.bits();
    let p = polar("2/3", "5", "0.5", &c);
    let sch = table_one_schedule();
    let lam = CNum::real(Float::with_val(prec, 2) / 3u32);
    let lamp = CNum::real(Float::with_val(prec, 1) / 3u32);
    let mut expect = CNum::zero(prec);
    for r in 1..=16 {
        let z = hurwitz_zeta(&CNum::from_i64(prec, r as i64 + 1), &lam, &c).unwrap();
        expect += &(&(&i_pow(r, -1, prec) * &base(r, &p, &c)) * &z);
    }
    for r in 1..=6 {
        let z = hurwitz_zeta(&CNum::from_i64(prec, r as i64 + 1), &lamp, &c).unwrap();
        expect -= &(&(&i_pow(r, 1, prec) * &base(r, &p, &c)) * &z);
    }
    let h0 = h_block(0, &p, &sch, &c).unwrap();
    assert!(rel(&h0, &expect) < 1e-35);
    assert!(h_block(2, &p, &sch, &c).is_err());
}

#[test]
fn half_lambda_blocks_share_zeta_factors() {
    let c = ctx(40);
    let prec = c.bits();
    let p = polar("1/2", "4", "0.2", &c);
    let sch = TruncationSchedule::new(vec![6, 20], vec![6, 20]).unwrap();
    let w = CNum::real(Float::with_val(prec, 1.5));
    let mut expect = CNum::zero(prec);
    for r in 6..20 {
        let z = hurwitz_zeta(&CNum::from_i64(prec, r as i64 + 1), &w, &c).unwrap();
        let weight = &i_pow(r, -1, prec) - &i_pow(r, 1, prec);
        expect += &(&(&weight * &base(r, &p, &c)) * &z);
    }
    let h1 = h_block(1, &p, &sch, &c).unwrap();
    assert!(rel(&h1, &expect) < 1e-35);
}

#[test]
fn remainders_on_the_stokes_lines() {
    let c = ctx(40);
    let prec = c.bits();
    let sch = table_one_schedule();
    // θ = π/2: iX′ lies on arg = π, T ≈ ½, so |R′_0| ≈ ½|e^{iX′}|
    let p = polar("2/3", "5", "0.5", &c);
    let (_, rp) = remainder_terms(0, &p, &sch, &c).unwrap();
    let x_prime = Float::with_val(prec, pi(prec) * 10u32) / 3u32;
    let scale = Float::with_val(prec, (-x_prime).exp()) / 2u32;
    let ratio = (rp.abs() / scale).to_f64();
    assert!((ratio - 1.0).abs() < 0.1, "{ratio}");
    // θ = −π/2: |R_0| ≈ ½ e^{−2π·5·(2/3)}
    let p = polar("2/3", "5", "-0.5", &c);
    let (r, _) = remainder_terms(0, &p, &sch, &c).unwrap();
    let x = Float::with_val(prec, pi(prec) * 20u32) / 3u32;
    let scale = Float::with_val(prec, (-x).exp()) / 2u32;
    let ratio = (r.abs() / scale).to_f64();
    assert!((ratio - 1.0).abs() < 0.15, "{ratio}");
}

#[test]
fn remainder_matches_direct_terminant() {
    let c = ctx(40);
    let prec = c.bits();
    let p = polar("2/3", "5", "0.3", &c);
    let sch = table_one_schedule();
    let (r, _) = remainder_terms(1, &p, &sch, &c).unwrap();
    let a = p.a().with_prec(prec);
    let x = a.scale(&Float::with_val(prec, pi(prec) * 2u32)).scale(&(Float::with_val(prec, 5) / 3u32));
    let z = ArgTrackedZ::new(x.abs(), Float::with_val(prec, p.theta() - pi(prec) / 2u32)).unwrap();
    let t = terminant(&CNum::from_i64(prec, 49 + 4), &z, &c).unwrap();
    let pi_i = CNum::new(Float::new(prec), pi(prec));
    let expect = &(-&(&x.mul_i() + &pi_i.scale_i64(4))).exp() * &t;
    assert!(rel(&r, &expect) < 1e-35);
}

#[test]
fn half_lambda_conjugate_pairs() {
    // with λ = λ′ and real s, a → ā maps R_m to −conj(R′_m)
    let c = ctx(40);
    let sch = TruncationSchedule::new(vec![14, 40], vec![14, 40]).unwrap();
    for m in 0..2 {
        let (r_up, _) = remainder_terms(m, &polar("1/2", "4.5", "0.4", &c), &sch, &c).unwrap();
        let (_, rp_down) = remainder_terms(m, &polar("1/2", "4.5", "-0.4", &c), &sch, &c).unwrap();
        assert!(rel(&r_up, &-rp_down.conj()) < 1e-35, "m = {m}");
    }
}

#[test]
fn exactness_for_arbitrary_schedules() {
    let c = ctx(50);
    let tol = 1e-42;
    for theta in ["0.3", "0.5", "-0.45", "0.7", "-0.7"] {
        let p = polar("2/3", "5", theta, &c);
        let l = lerch_reference(&p, &c).unwrap();
        let linear = exp_improved_eval(&p, &TruncationSchedule::linear(5, 30).unwrap(), &c).unwrap();
        let optimal = exp_improved_eval(&p, &TruncationSchedule::optimal(&p, 6, &c).unwrap(), &c).unwrap();
        let scale = l.abs().to_f64().max(1.0);
        assert!((&linear.total - &l).abs().to_f64() / scale < tol, "θ/π = {theta}");
        assert!((&optimal.total - &l).abs().to_f64() / scale < tol, "θ/π = {theta}");
        assert!(rel(&linear.total, &optimal.total) < tol);
    }
}

#[test]
fn oracle_equivalence_grid() {
    let c = ctx(30);
    for lambda in ["1/3", "1/2", "2/3", "1"] {
        for a_mod in ["2", "5"] {
            for theta in ["0", "0.3", "-0.5", "0.7"] {
                let p = polar(lambda, a_mod, theta, &c);
                let l = lerch_direct(&p, &c).unwrap();
                let b = exp_improved_auto(&p, &c).unwrap();
                let err = (&b.total - &l).abs().to_f64() / l.abs().to_f64().max(1.0);
                assert!(err < 1e-22, "λ={lambda} |a|={a_mod} θ/π={theta}: {err}");
            }
        }
    }
}

#[test]
fn superasymptotic_accuracy_on_the_real_axis() {
    let c = ctx(50);
    let p = LerchParams::parse_cartesian("2/3", "5", "0", "4", "0", c.bits()).unwrap();
    let all = poincare_expand(&p, 60, &c).unwrap();
    let (k_min, _) = all
        .terms
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, t)| (k, t.abs()))
        .min_by(|x, y| x.1.partial_cmp(&y.1).unwrap())
        .unwrap();
    let truncated = poincare_expand(&p, k_min, &c).unwrap();
    let exact = exp_improved_auto(&p, &c).unwrap().total;
    let err = (&exact - &truncated.sum).abs();
    let smallest = smallest_term(&truncated).unwrap();
    assert!(err <= Float::with_val(c.bits(), &smallest * 2u32), "{} vs {}", err.to_f64(), smallest.to_f64());
}

#[test]
fn breakdown_document() {
    let c = ctx(30);
    let p = polar("2/3", "5", "0.3", &c);
    let b = exp_improved_auto(&p, &c).unwrap();
    let again = b.reassemble(&p, &c).unwrap();
    assert!(rel(&again, &b.total) < 1e-28);
    assert_eq!(b.h.len(), b.schedule.m_max() + 1);
    assert_eq!(b.r_prime.len(), b.r.len());
    let json = b.to_json();
    let record: BreakdownRecord = serde_json::from_str(&json).unwrap();
    assert_eq!(record, b.to_record());
    assert_eq!(serde_json::to_string_pretty(&record).unwrap(), json);
    assert!(json.contains("\"Rprime\""));
}

#[test]
fn tail_and_schedule_errors() {
    let c = ctx(30);
    let p = polar("2/3", "5", "0.3", &c);
    let short = TruncationSchedule::linear(5, 4).unwrap();
    assert!(matches!(exp_improved_eval(&p, &short, &c), Err(Error::Tail { .. })));
    assert!(matches!(exp_improved_eval(&p, &table_one_schedule(), &c), Err(Error::Domain(_))));
    assert!(double_sum_direct(&p, &TruncationSchedule::linear(5, 4).unwrap(), 3, &c).is_err());
}

/// Σ_{m≤M} H_m with each ζ(r+1, m+ξ) replaced by Σ_{k=m}^{kMax} (k+ξ)^{−r−1}.
fn blocks_with_partial_zeta(p: &LerchParams, sch: &TruncationSchedule, k_max: usize, c: &PrecisionContext) -> CNum {
    let prec = c.bits();
    let lam = Float::with_val(prec, p.lambda());
    let lamp = Float::with_val(prec, 1 - &lam);
    let one = p.is_lambda_one();
    let partial = |r: usize, m: usize, xi: &Float| -> Float {
        let mut acc = Float::new(prec);
        for k in m..=k_max {
            let w = Float::with_val(prec, xi + k as u32);
            if w.is_zero() {
                continue;
            }
            acc += Float::with_val(prec, rug::ops::Pow::pow(&w, -(r as i32 + 1)));
        }
        acc
    };
    let mut total = CNum::zero(prec);
    for m in 0..=sch.m_max() {
        let lo = if m == 0 { 1 } else { sch.n()[m - 1] };
        for r in lo..sch.n()[m] {
            total += &(&i_pow(r, -1, prec) * &base(r, p, c)).scale(&partial(r, m, &lam));
        }
        if one && m == 0 {
            continue;
        }
        let lo = if m == 0 || (one && m == 1) { 1 } else { sch.n_prime()[m - 1] };
        for r in lo..sch.n_prime()[m] {
            total -= &(&i_pow(r, 1, prec) * &base(r, p, c)).scale(&partial(r, m.max(usize::from(one)), &lamp));
        }
    }
    total
}

#[test]
fn rearrangement_identity() {
    let c = ctx(40);
    let p = polar("2/3", "5", "0.3", &c);
    let sch = table_one_schedule();
    let direct = double_sum_direct(&p, &sch, 200, &c).unwrap();
    let blocks = blocks_with_partial_zeta(&p, &sch, 200, &c);
    assert!((&direct - &blocks).abs().to_f64() < 1e-38 * direct.abs().to_f64());

    // full Hurwitz blocks minus the k > kMax tail of the frozen schedule
    let prec = c.bits();
    let mut h = h_block(0, &p, &sch, &c).unwrap();
    h += &h_block(1, &p, &sch, &c).unwrap();
    let far = |xi: &Float| CNum::real(Float::with_val(prec, xi + 201u32));
    let lam = Float::with_val(prec, p.lambda());
    let lamp = Float::with_val(prec, 1 - &lam);
    for r in 1..49 {
        let z = hurwitz_zeta(&CNum::from_i64(prec, r + 1), &far(&lam), &c).unwrap();
        h -= &(&(&i_pow(r as usize, -1, prec) * &base(r as usize, &p, &c)) * &z);
    }
    for r in 1..38 {
        let z = hurwitz_zeta(&CNum::from_i64(prec, r + 1), &far(&lamp), &c).unwrap();
        h += &(&(&i_pow(r as usize, 1, prec) * &base(r as usize, &p, &c)) * &z);
    }
    assert!((&direct - &h).abs().to_f64() < 1e-30);

    // λ = 1: the λ′ sum starts at k = 1
    let q = polar("1", "3", "0.2", &c);
    let sch = TruncationSchedule::new(vec![6, 9, 12], vec![1, 8, 11]).unwrap();
    let direct = double_sum_direct(&q, &sch, 40, &c).unwrap();
    let blocks = blocks_with_partial_zeta(&q, &sch, 40, &c);
    assert!(rel(&direct, &blocks) < 1e-35);
}

#[test]
fn hurwitz_reduction() {
    // per k, the λ-term of index k−1 and the λ′-term of index k collapse to
    // k^{s−1}{(1/π)Σ_{r<n_k} (−1)^r Γ(2r+s+1)/X^{2r+s+1} + e^{−πis}(e^{iX+πis/2}T_ν(iX) − e^{−iX−πis/2}T_ν(−iX))}
    let c = ctx(40);
    let prec = c.bits();
    let p = polar("1", "3", "0.3", &c);
    let nk = [0usize, 4, 7, 10];
    // N_{k−1} = N′_k = 2n_k
    let sch = TruncationSchedule::new(vec![8, 14, 20], vec![1, 8, 14]).unwrap();
    let a = p.a().with_prec(prec);
    let s = p.s().with_prec(prec);
    let two_pi = Float::with_val(prec, pi(prec) * 2u32);
    let half_pi_i_s = &CNum::new(Float::new(prec), pi(prec) / 2u32) * &s;
    for k in 1..=2usize {
        let x = a.scale(&two_pi).scale_i64(k as i64);
        let nu = s.add_i64(2 * nk[k] as i64);
        let mut series = CNum::zero(prec);
        for r in 0..nk[k] {
            let e = s.add_i64(2 * r as i64 + 1);
            let sign = if r % 2 == 0 { 1 } else { -1 };
            series += &(&gamma(&e, &c).unwrap() / &x.pow(&e)).scale_i64(sign);
        }
        series = series.scale(&pi(prec).recip());
        let up = ArgTrackedZ::from_principal(&x.mul_i()).unwrap();
        let down = ArgTrackedZ::new(x.abs(), Float::with_val(prec, p.theta() - pi(prec) / 2u32)).unwrap();
        let t_up = terminant(&nu, &up, &c).unwrap();
        let t_down = terminant(&nu, &down, &c).unwrap();
        let rem = &(&(&x.mul_i() + &half_pi_i_s).exp() * &t_up) - &(&(-&(&x.mul_i() + &half_pi_i_s)).exp() * &t_down);
        let rem = &(-&half_pi_i_s.scale_i64(2)).exp() * &rem;
        let kk = CNum::from_i64(prec, k as i64).pow(&s.add_i64(-1));
        let merged = &kk * &(&series + &rem);

        // general form: (k+λ)^{s−1}{(i/2π)Σ_r (−i)^r Γ(r+s)/X^{r+s} − e^{−πis/2}R} at index k−1,
        // minus (k+λ′)^{s−1}{(i/2π)Σ_r i^r Γ(r+s)/X′^{r+s} − e^{πis/2}R′} at index k
        let (r_k, _) = remainder_terms(k - 1, &p, &sch, &c).unwrap();
        let (_, rp_k) = remainder_terms(k, &p, &sch, &c).unwrap();
        let inner = |sign: i64, n: usize| {
            let mut acc = CNum::zero(prec);
            for r in 1..n {
                let e = s.add_i64(r as i64);
                acc += &(&i_pow(r, sign, prec) * &(&gamma(&e, &c).unwrap() / &x.pow(&e)));
            }
            acc.mul_i().scale(&two_pi.clone().recip())
        };
        let e_minus = (-half_pi_i_s.clone()).exp();
        let e_plus = half_pi_i_s.exp();
        let general = &(&kk * &(&inner(-1, sch.n()[k - 1]) - &(&e_minus * &r_k)))
            - &(&kk * &(&inner(1, sch.n_prime()[k]) - &(&e_plus * &rp_k)));
        assert!(rel(&merged, &general) < 1e-35, "k = {k}");
    }

    // and the assembled total at λ = 1 is the Hurwitz zeta function
    let l = lerch_direct(&p, &c).unwrap();
    let b = exp_improved_auto(&p, &c).unwrap();
    assert!(rel(&b.total, &l) < 1e-32);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 6, ..ProptestConfig::default() })]

    #[test]
    fn schedule_independence(
        lam in 0.15f64..0.95,
        theta in -0.8f64..0.8,
        a_mod in 3.0f64..8.0,
        base in 2usize..9,
    ) {
        let c = ctx(30);
        let prec = c.bits();
        let p = LerchParams::from_polar(
            Float::with_val(prec, lam),
            &Float::with_val(prec, a_mod),
            &(Float::with_val(prec, theta) * pi(prec)),
            CNum::from_i64(prec, 4),
        ).unwrap();
        let auto = exp_improved_auto(&p, &c).unwrap();
        let mut m = 12;
        let linear = loop {
            match exp_improved_eval(&p, &TruncationSchedule::linear(base, m).unwrap(), &c) {
                Err(Error::Tail { .. }) => m += 8,
                other => break other.unwrap(),
            }
        };
        prop_assert!(rel(&auto.total, &linear.total) < 1e-22);
    }
}
