use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mp::gamma::{gamma, is_nonpositive_integer};
use crate::mp::{CNum, PrecisionContext};
use crate::oracle::LerchParams;

/// Truncation indices N_k, N′_k for k = 0..=M of the two component series.
///
/// Both lists are strictly increasing with entries ≥ 1; N_{−1} = N′_{−1} = 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationSchedule {
    #[serde(rename = "N")]
    n: Vec<usize>,
    #[serde(rename = "Nprime")]
    n_prime: Vec<usize>,
    #[serde(rename = "mMax")]
    m_max: usize,
}

fn check_increasing(name: &str, v: &[usize]) -> Result<()> {
    if v.iter().any(|&x| x == 0) {
        return Err(Error::domain(format!("{name} entries must be positive: {v:?}")));
    }
    if v.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain(format!("{name} must be strictly increasing: {v:?}")));
    }
    Ok(())
}

impl TruncationSchedule {
    /// Explicit lists; M is their common length minus one.
    pub fn new(n: Vec<usize>, n_prime: Vec<usize>) -> Result<Self> {
        if n.is_empty() || n.len() != n_prime.len() {
            return Err(Error::domain(format!(
                "N and N′ need the same non-zero length, got {} and {}",
                n.len(),
                n_prime.len()
            )));
        }
        check_increasing("N", &n)?;
        check_increasing("N′", &n_prime)?;
        let m_max = n.len() - 1;
        Ok(TruncationSchedule { n, n_prime, m_max })
    }

    /// N_k = N′_k = base + k.
    pub fn linear(base: usize, m_max: usize) -> Result<Self> {
        let n: Vec<usize> = (0..=m_max).map(|k| base + k).collect();
        Self::new(n.clone(), n)
    }

    /// Least-term indices from [`optimal_truncation`] for k = 0..=M.
    pub fn optimal(p: &LerchParams, m_max: usize, ctx: &PrecisionContext) -> Result<Self> {
        Self::with_prefix(p, &[], &[], m_max, ctx)
    }

    /// The given leading entries, continued with least-term indices up to M.
    ///
    /// Continuation entries are raised where needed to keep the lists strictly
    /// increasing. At λ = 1 the entry N′_0 is never used and is set to 1.
    pub fn with_prefix(
        p: &LerchParams,
        n_prefix: &[usize],
        n_prime_prefix: &[usize],
        m_max: usize,
        ctx: &PrecisionContext,
    ) -> Result<Self> {
        let lam = p.lambda().to_f64();
        let a_mod = p.a_mod().to_f64();
        let s = p.s();
        let mut n = n_prefix.to_vec();
        let mut n_prime = n_prime_prefix.to_vec();
        for k in n.len()..=m_max {
            let v = optimal_truncation(k, lam, a_mod, s, ctx);
            let floor = n.last().map_or(1, |&x| x + 1);
            n.push(v.max(floor));
        }
        for k in n_prime.len()..=m_max {
            let v = if p.is_lambda_one() {
                // k + λ′ = (k − 1) + 1
                if k == 0 { 1 } else { optimal_truncation(k - 1, 1.0, a_mod, s, ctx) }
            } else {
                optimal_truncation(k, 1.0 - lam, a_mod, s, ctx)
            };
            let floor = n_prime.last().map_or(1, |&x| x + 1);
            n_prime.push(v.max(floor));
        }
        n.truncate(m_max + 1);
        n_prime.truncate(m_max + 1);
        Self::new(n, n_prime)
    }

    /// This schedule continued with least-term indices up to `m_max`.
    pub fn extended(&self, p: &LerchParams, m_max: usize, ctx: &PrecisionContext) -> Result<Self> {
        if m_max <= self.m_max {
            return Ok(self.clone());
        }
        Self::with_prefix(p, &self.n, &self.n_prime, m_max, ctx)
    }

    pub fn m_max(&self) -> usize {
        self.m_max
    }

    pub fn n(&self) -> &[usize] {
        &self.n
    }

    pub fn n_prime(&self) -> &[usize] {
        &self.n_prime
    }

    /// N_k, frozen at N_M for k > M.
    pub fn n_at(&self, k: usize) -> usize {
        self.n[k.min(self.m_max)]
    }

    /// N′_k, frozen at N′_M for k > M.
    pub fn n_prime_at(&self, k: usize) -> usize {
        self.n_prime[k.min(self.m_max)]
    }

    /// N_{k−1} with N_{−1} = 1.
    pub fn n_before(&self, k: usize) -> usize {
        if k == 0 { 1 } else { self.n_at(k - 1) }
    }

    /// N′_{k−1} with N′_{−1} = 1.
    pub fn n_prime_before(&self, k: usize) -> usize {
        if k == 0 { 1 } else { self.n_prime_at(k - 1) }
    }
}

/// The index N minimising |Γ(N+s)| / (2π|a|)^{N+Re s} / (k+ξ)^{N+1} over
/// N ∈ [1, ⌈4π(k+ξ)|a|⌉ + 10], ties going to the smaller N.
pub fn optimal_truncation(k: usize, xi: f64, a_mod: f64, s: &CNum, ctx: &PrecisionContext) -> usize {
    let scale = k as f64 + xi;
    let upper = (4.0 * std::f64::consts::PI * scale * a_mod).ceil() as usize + 10;
    let ln_two_pi_a = (2.0 * std::f64::consts::PI * a_mod).ln();
    let ln_scale = scale.ln();
    let s_re = s.re.to_f64();
    let s_im = s.im.to_f64();

    // ln|Γ(N+s)| by the upward recurrence from the first N where Γ is finite.
    let mut start = 1usize;
    while is_nonpositive_integer(&s.add_i64(start as i64)) {
        start += 1;
    }
    let base = gamma(&s.add_i64(start as i64), ctx)
        .map(|g| g.abs().ln().to_f64())
        .unwrap_or(f64::INFINITY);
    let mut ln_g = base;
    let mut best = (start, f64::INFINITY);
    for n in start..=upper.max(start) {
        if n > start {
            let m = n as f64 - 1.0;
            ln_g += ((m + s_re).powi(2) + s_im * s_im).sqrt().ln();
        }
        let value = ln_g - (n as f64 + s_re) * ln_two_pi_a - (n as f64 + 1.0) * ln_scale;
        if !best.1.is_finite() || value < best.1 - 1e-12 * best.1.abs().max(1.0) {
            best = (n, value);
        }
    }
    best.0
}
