//! Exact coefficient machinery: Stirling numbers of the second kind, the
//! palindromic polynomials P_n, and the values F(λ, −k) of the periodic zeta
//! function at non-positive integers.

use rug::{Float, Integer, Rational};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mp::bernoulli::bernoulli;
use crate::mp::{pi, CNum, PrecisionContext};

/// Triangular table of S_n^{(r)}, 1 ≤ r ≤ n ≤ `max_n`, built by the standard recurrence.
#[derive(Debug, Clone)]
pub struct Stirling2Table {
    rows: Vec<Vec<Integer>>,
}

impl Stirling2Table {
    pub fn new(max_n: usize) -> Self {
        // rows[n][r] for 0 ≤ r ≤ n, with S_0^{(0)} = 1
        let mut rows: Vec<Vec<Integer>> = Vec::with_capacity(max_n + 1);
        rows.push(vec![Integer::from(1)]);
        for n in 1..=max_n {
            let prev = &rows[n - 1];
            let mut row = vec![Integer::new(); n + 1];
            for r in 1..=n {
                let keep = if r < n { Integer::from(&prev[r] * r as u64) } else { Integer::new() };
                row[r] = keep + &prev[r - 1];
            }
            rows.push(row);
        }
        Stirling2Table { rows }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn get(&self, n: usize, r: usize) -> Result<&Integer> {
        if r < 1 || r > n {
            return Err(Error::domain(format!("S({n}, {r}) needs 1 ≤ r ≤ n")));
        }
        self.rows
            .get(n)
            .map(|row| &row[r])
            .ok_or_else(|| Error::domain(format!("S({n}, {r}) is beyond the table size {}", self.max_n())))
    }
}

/// Stirling number of the second kind S_n^{(r)}.
pub fn stirling2(n: usize, r: usize) -> Result<Integer> {
    if r < 1 || r > n {
        return Err(Error::domain(format!("S({n}, {r}) needs 1 ≤ r ≤ n")));
    }
    Stirling2Table::new(n).get(n, r).cloned()
}

/// P_n(x) = Σ_{r=1}^{n−1} r!·S_{n−1}^{(r)} x^{r−1} (1−x)^{n−r−1}, stored as its
/// expanded integer coefficients c_0..c_{n−2}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PPoly {
    pub n: usize,
    #[serde(serialize_with = "serialize_integers")]
    pub coefficients: Vec<Integer>,
}

fn serialize_integers<S: serde::Serializer>(v: &[Integer], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|c| c.to_string()))
}

impl PPoly {
    pub fn degree(&self) -> usize {
        self.n.saturating_sub(2)
    }

    pub fn is_palindromic(&self) -> bool {
        let c = &self.coefficients;
        c.iter().eq(c.iter().rev())
    }

    /// Σ c_j = P_n(1).
    pub fn coefficient_sum(&self) -> Integer {
        self.coefficients.iter().sum()
    }

    /// Horner evaluation at a complex point.
    pub fn eval(&self, x: &CNum) -> CNum {
        let prec = x.prec();
        if self.n == 1 {
            return CNum::one(prec);
        }
        let mut acc = CNum::zero(prec);
        for c in self.coefficients.iter().rev() {
            acc = (&acc * x).add_real(&Float::with_val(prec, c));
        }
        acc
    }
}

pub fn p_poly(n: usize) -> Result<PPoly> {
    if n == 0 {
        return Err(Error::domain("P_n is defined for n ≥ 1"));
    }
    if n == 1 {
        return Ok(PPoly { n, coefficients: Vec::new() });
    }
    let table = Stirling2Table::new(n - 1);
    let mut coeffs = vec![Integer::new(); n - 1];
    let mut factorial = Integer::from(1);
    for r in 1..n {
        factorial *= r as u64;
        let weight = Integer::from(&factorial * table.get(n - 1, r)?);
        // x^{r−1}(1−x)^{e}, e = n−r−1
        let e = (n - r - 1) as u32;
        for j in 0..=e {
            let b = Integer::from(Integer::binomial_u(e, j));
            let term = Integer::from(&weight * &b);
            let slot = &mut coeffs[r - 1 + j as usize];
            if j % 2 == 0 {
                *slot += term;
            } else {
                *slot -= term;
            }
        }
    }
    Ok(PPoly { n, coefficients: coeffs })
}

fn check_lambda(lambda: &Float) -> Result<()> {
    if !(lambda.is_finite() && *lambda > 0 && *lambda <= 1) {
        return Err(Error::domain(format!("λ must lie in (0, 1], got {}", lambda.to_f64())));
    }
    Ok(())
}

/// F(λ, −k) = x P_{k+1}(x) / (1−x)^{k+1} with x = e^{2πiλ}, for 0 < λ < 1.
pub fn periodic_zeta_neg(lambda: &Float, k: usize, ctx: &PrecisionContext) -> Result<CNum> {
    check_lambda(lambda)?;
    if *lambda == 1 {
        return Err(Error::domain(
            "F(λ, −k) has a pole of its closed form at λ = 1; use zeta_neg_int",
        ));
    }
    let prec = ctx.bits() + 16;
    let phase = Float::with_val(prec, pi(prec) * 2u32) * lambda;
    let x = CNum::cis(&phase);
    let p = p_poly(k + 1)?;
    let one_minus = CNum::one(prec) - &x;
    let value = &(&x * &p.eval(&x)) / &one_minus.powi(k as i64 + 1);
    Ok(value.with_prec(ctx.bits()))
}

/// ζ(−k) exactly: −1/2 at k = 0, and −B_{k+1}/(k+1) otherwise.
pub fn zeta_neg_int(k: usize) -> Rational {
    if k == 0 {
        return Rational::from((-1, 2));
    }
    -(bernoulli(k + 1) / Rational::from(k as u64 + 1))
}

/// F(λ, −k) including the λ = 1 bypass through ζ(−k).
pub fn f_neg(lambda: &Float, k: usize, ctx: &PrecisionContext) -> Result<CNum> {
    check_lambda(lambda)?;
    if *lambda == 1 {
        return Ok(CNum::real(Float::with_val(ctx.bits(), &zeta_neg_int(k))));
    }
    periodic_zeta_neg(lambda, k, ctx)
}
