use std::sync::OnceLock;

use lerch_stokes::expansion::TruncationSchedule;
use lerch_stokes::mp::PrecisionContext;
use lerch_stokes::oracle::LerchParams;
use lerch_stokes::stokes::{
    stokes_erf_approx, stokes_multiplier, stokes_table, symmetric_grid, to_csv, Side, StokesRecord,
    StokesSample, CSV_HEADER, TABLE_ONE_GRID, TABLE_TWO_GRID,
};
use lerch_stokes::Error;

/// Reference (θ/π, Re S, approx) rows to five decimals, both hemispheres.
const TABLE_ONE: [(f64, f64, f64); 22] = [
    (0.30, 0.02114, 0.02101),
    (0.40, 0.15648, 0.15466),
    (0.45, 0.30653, 0.30562),
    (0.48, 0.41977, 0.41944),
    (0.49, 0.45968, 0.45951),
    (0.50, 0.50000, 0.50000),
    (0.51, 0.54032, 0.54049),
    (0.52, 0.58023, 0.58056),
    (0.55, 0.69347, 0.69438),
    (0.60, 0.84352, 0.84534),
    (0.70, 0.97886, 0.97899),
    (-0.30, 0.00216, 0.00202),
    (-0.40, 0.07660, 0.07525),
    (-0.45, 0.23102, 0.23611),
    (-0.48, 0.38280, 0.38685),
    (-0.49, 0.44063, 0.44284),
    (-0.50, 0.50000, 0.50000),
    (-0.51, 0.55937, 0.55716),
    (-0.52, 0.61720, 0.61315),
    (-0.55, 0.76898, 0.76389),
    (-0.60, 0.92340, 0.92475),
    (-0.70, 0.99784, 0.99798),
];

const TABLE_TWO: [(f64, f64, f64); 22] = [
    (0.35, 0.00114, 0.00114),
    (0.40, 0.02157, 0.02101),
    (0.45, 0.15510, 0.15466),
    (0.48, 0.34208, 0.34213),
    (0.49, 0.41939, 0.41944),
    (0.50, 0.50000, 0.50000),
    (0.51, 0.58061, 0.58056),
    (0.52, 0.65792, 0.65787),
    (0.55, 0.84490, 0.84534),
    (0.60, 0.97843, 0.97899),
    (0.65, 0.99889, 0.99886),
    (-0.35, 0.00021, 0.00032),
    (-0.40, 0.01128, 0.01151),
    (-0.45, 0.12807, 0.12785),
    (-0.48, 0.32480, 0.32468),
    (-0.49, 0.41014, 0.41009),
    (-0.50, 0.50000, 0.50000),
    (-0.51, 0.58986, 0.58991),
    (-0.52, 0.67520, 0.67532),
    (-0.55, 0.87193, 0.87215),
    (-0.60, 0.98872, 0.98849),
    (-0.65, 0.99979, 0.99968),
];

fn ctx() -> PrecisionContext {
    PrecisionContext::with_digits(50).unwrap()
}

fn template(lambda: &str, c: &PrecisionContext) -> LerchParams {
    LerchParams::parse_polar(lambda, "5", "0.3", "4", "0", c.bits()).unwrap()
}

fn computed(n: usize) -> &'static [StokesSample] {
    static ONE: OnceLock<Vec<StokesSample>> = OnceLock::new();
    static TWO: OnceLock<Vec<StokesSample>> = OnceLock::new();
    let (cell, grid, sch) = match n {
        0 => (&ONE, &TABLE_ONE_GRID, TruncationSchedule::new(vec![17], vec![7]).unwrap()),
        _ => (&TWO, &TABLE_TWO_GRID, TruncationSchedule::new(vec![17, 49], vec![7, 38]).unwrap()),
    };
    cell.get_or_init(|| {
        let c = ctx();
        stokes_table(n, &template("2/3", &c), &symmetric_grid(grid), &sch, &c)
            .into_iter()
            .map(|row| row.result.unwrap())
            .collect()
    })
}

fn lookup(samples: &[StokesSample], t: f64) -> &StokesSample {
    samples.iter().find(|s| s.theta_over_pi == t).unwrap()
}

fn check_table(n: usize, table: &[(f64, f64, f64)]) {
    let samples = computed(n);
    assert_eq!(samples.len(), table.len());
    for &(t, re, _) in table {
        let got = lookup(samples, t).s.re.to_f64();
        assert!((got - re).abs() <= 5e-5, "S_{n} at θ/π = {t}: {got} vs {re}");
    }
}

#[test]
fn table_one_values() {
    check_table(0, &TABLE_ONE);
}

#[test]
fn table_two_values() {
    check_table(1, &TABLE_TWO);
}

#[test]
fn approx_columns() {
    for (n, table) in [(0, &TABLE_ONE), (1, &TABLE_TWO)] {
        for &(t, _, approx) in table.iter() {
            let v = stokes_erf_approx(n, t * std::f64::consts::PI, 5.0, 2.0 / 3.0);
            assert!((v - approx).abs() <= 5e-6, "n = {n}, θ/π = {t}: {v} vs {approx}");
            assert!((0.0..=1.0).contains(&v));
        }
    }
    assert_eq!(stokes_erf_approx(0, std::f64::consts::FRAC_PI_2, 5.0, 2.0 / 3.0), 0.5);
    assert_eq!(stokes_erf_approx(3, -std::f64::consts::FRAC_PI_2, 9.0, 0.1), 0.5);
}

#[test]
fn samples_are_ordered_and_sided() {
    for n in [0, 1] {
        let samples = computed(n);
        assert!(samples.windows(2).all(|w| w[0].theta < w[1].theta));
        for s in samples {
            assert_eq!(s.side, if s.theta > 0.0 { Side::Upper } else { Side::Lower });
            assert_eq!(s.n, n);
            assert!(s.s.im.to_f64().abs() < 0.1);
        }
    }
}

#[test]
fn erf_approximation_is_close() {
    for n in [0, 1] {
        for s in computed(n) {
            let d = (s.s.re.to_f64() - s.approx).abs();
            assert!(d <= 7e-3, "n = {n}, θ/π = {}: {d}", s.theta_over_pi);
        }
    }
}

#[test]
fn monotone_across_each_transition() {
    for n in [0, 1] {
        let samples = computed(n);
        let upper: Vec<f64> = samples.iter().filter(|s| s.theta > 0.0).map(|s| s.s.re.to_f64()).collect();
        let lower: Vec<f64> = samples.iter().filter(|s| s.theta < 0.0).map(|s| s.s.re.to_f64()).collect();
        assert!(upper.windows(2).all(|w| w[0] < w[1]), "{upper:?}");
        assert!(lower.windows(2).all(|w| w[0] > w[1]), "{lower:?}");
    }
}

#[test]
fn unequal_transition_scales() {
    let samples = computed(0);
    let re = |t: f64| lookup(samples, t).s.re.to_f64();
    let up = re(0.51) - re(0.49);
    let down = re(-0.51) - re(-0.49);
    let ratio = up / down;
    let expect = (1.0f64 / 2.0).sqrt();
    assert!((ratio / expect - 1.0).abs() < 0.1, "{ratio}");
}

#[test]
fn half_lambda_conjugation() {
    let c = ctx();
    let p = template("1/2", &c);
    let sch = TruncationSchedule::optimal(&p, 1, &c).unwrap();
    assert_eq!(sch.n(), sch.n_prime());
    let grid = symmetric_grid(&[0.4, 0.5, 0.55]);
    for n in [0, 1] {
        let rows = stokes_table(n, &p, &grid, &sch, &c);
        for t in [0.4, 0.5, 0.55] {
            let up = &rows.iter().find(|r| r.theta_over_pi == t).unwrap().result.as_ref().unwrap().s;
            let down = &rows.iter().find(|r| r.theta_over_pi == -t).unwrap().result.as_ref().unwrap().s;
            let d = (down - &up.conj()).abs().to_f64();
            assert!(d < 1e-30, "n = {n}, θ/π = {t}: {d}");
        }
    }
}

#[test]
fn empty_grid() {
    let c = PrecisionContext::with_digits(20).unwrap();
    let sch = TruncationSchedule::new(vec![17], vec![7]).unwrap();
    assert!(stokes_table(0, &template("2/3", &c), &[], &sch, &c).is_empty());
}

#[test]
fn failed_rows_are_kept() {
    let c = PrecisionContext::with_digits(30).unwrap();
    let sch = TruncationSchedule::new(vec![17], vec![7]).unwrap();
    let rows = stokes_table(0, &template("2/3", &c), &[0.5, 0.0, 1.2], &sch, &c);
    assert_eq!(rows.len(), 3);
    assert!(matches!(rows[0].result, Err(Error::Domain(_))));
    assert!(rows[1].result.is_ok());
    assert!(matches!(rows[2].result, Err(Error::Domain(_))));
}

#[test]
fn domain_errors() {
    let c = PrecisionContext::with_digits(30).unwrap();
    let sch = TruncationSchedule::new(vec![17], vec![7]).unwrap();
    let on_axis = LerchParams::parse_polar("2/3", "5", "0", "4", "0", c.bits()).unwrap();
    assert!(matches!(stokes_multiplier(0, &on_axis, &sch, &c), Err(Error::Domain(_))));
    let p = template("2/3", &c);
    assert!(matches!(stokes_multiplier(1, &p, &sch, &c), Err(Error::Domain(_))));
    let hurwitz = LerchParams::parse_polar("1", "5", "0.5", "4", "0", c.bits()).unwrap();
    assert!(matches!(stokes_multiplier(0, &hurwitz, &sch, &c), Err(Error::Domain(_))));
}

#[test]
fn low_precision_is_refused() {
    let c = PrecisionContext::with_digits(25).unwrap();
    let sch = TruncationSchedule::new(vec![17, 49], vec![7, 38]).unwrap();
    let p = LerchParams::parse_polar("2/3", "5", "-0.45", "4", "0", c.bits()).unwrap();
    assert!(matches!(stokes_multiplier(1, &p, &sch, &c), Err(Error::Precision { .. })));
}

#[test]
fn precision_consistency() {
    // the same multiplier at two working precisions
    let sch = TruncationSchedule::new(vec![17, 49], vec![7, 38]).unwrap();
    let c50 = ctx();
    let c60 = PrecisionContext::with_digits(60).unwrap();
    let p = template("2/3", &c60).with_prec(c60.bits());
    let q = LerchParams::parse_polar("2/3", "5", "-0.45", "4", "0", c60.bits()).unwrap();
    for p in [p, q] {
        let lo = stokes_multiplier(1, &p, &sch, &c50).unwrap();
        let hi = stokes_multiplier(1, &p, &sch, &c60).unwrap();
        assert!((&lo - &hi).abs().to_f64() < 1e-25);
    }
}

#[test]
fn csv_and_json_documents() {
    let samples = computed(0);
    let csv = to_csv(samples, 12);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], CSV_HEADER);
    assert_eq!(lines.len(), samples.len() + 1);
    let first: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(first.len(), 6);
    assert_eq!(first[0], "-0.7");
    assert_eq!(first[4], "lower");
    assert_eq!(first[5], "0");
    assert!((first[1].parse::<f64>().unwrap() - 0.99784).abs() < 5e-5);

    let records: Vec<StokesRecord> = samples.iter().map(|s| StokesRecord::from_sample(s, 20)).collect();
    let json = serde_json::to_string(&records).unwrap();
    assert!(json.contains("\"S\":{\"re\":"));
    let back: Vec<StokesRecord> = serde_json::from_str(&json).unwrap();
    assert_eq!(back, records);
    assert_eq!(serde_json::to_string(&back).unwrap(), json);
}
