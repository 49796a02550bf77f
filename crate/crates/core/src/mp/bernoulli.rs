//! Exact Bernoulli numbers from tangent numbers.

use std::sync::OnceLock;

use rug::{Integer, Rational};

const CACHED: usize = 320;

/// Tangent numbers T_1..T_n (Brent–Harvey in-place recurrence, integers only).
fn tangent_numbers(n: usize) -> Vec<Integer> {
    let mut t: Vec<Integer> = vec![Integer::new(); n + 1];
    if n == 0 {
        return t;
    }
    t[1] = Integer::from(1);
    for k in 2..=n {
        t[k] = Integer::from(&t[k - 1] * (k as u64 - 1));
    }
    for k in 2..=n {
        for j in k..=n {
            let a = Integer::from(&t[j - 1] * (j - k) as u64);
            let b = Integer::from(&t[j] * (j - k + 2) as u64);
            t[j] = a + b;
        }
    }
    t
}

fn even_bernoulli_from_tangent(n: usize) -> Vec<Rational> {
    let t = tangent_numbers(n);
    let mut out = Vec::with_capacity(n + 1);
    out.push(Rational::from(1));
    for k in 1..=n {
        // B_{2k} = (−1)^{k−1} · 2k · T_k / (2^{2k} (2^{2k} − 1))
        let p = Integer::from(1) << (2 * k as u32);
        let den = Integer::from(&p * Integer::from(&p - 1u32));
        let num = Integer::from(&t[k] * (2 * k) as u64);
        let mut b = Rational::from((num, den));
        if k % 2 == 0 {
            b = -b;
        }
        out.push(b);
    }
    out
}

fn table() -> &'static [Rational] {
    static TABLE: OnceLock<Vec<Rational>> = OnceLock::new();
    TABLE.get_or_init(|| even_bernoulli_from_tangent(CACHED))
}

/// B_{2k} exactly; beyond the cached range the table is recomputed on demand.
pub fn bernoulli_even(k: usize) -> Rational {
    let t = table();
    if k < t.len() {
        t[k].clone()
    } else {
        even_bernoulli_from_tangent(k).swap_remove(k)
    }
}

/// B_n with the convention B_1 = −1/2.
pub fn bernoulli(n: usize) -> Rational {
    match n {
        0 => Rational::from(1),
        1 => Rational::from((-1, 2)),
        n if n % 2 == 1 => Rational::new(),
        n => bernoulli_even(n / 2),
    }
}
