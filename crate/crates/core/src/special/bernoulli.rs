//! Even-index Bernoulli numbers from the tangent-number recurrence.

use rug::{Complete, Float, Integer, Rational};
use std::sync::OnceLock;

/// Largest j for which B_{2j} is available.
pub const MAX_BERNOULLI_INDEX: usize = 400;

static CACHE: OnceLock<Vec<Rational>> = OnceLock::new();

fn build() -> Vec<Rational> {
    let n = MAX_BERNOULLI_INDEX;
    let mut t = vec![Integer::new(); n + 1];
    t[1] = Integer::from(1);
    for k in 2..=n {
        t[k] = Integer::from(&t[k - 1] * (k as u32 - 1));
    }
    for k in 2..=n {
        for j in k..=n {
            let a = Integer::from(&t[j - 1] * (j - k) as u32);
            let b = Integer::from(&t[j] * (j - k + 2) as u32);
            t[j] = a + b;
        }
    }
    let mut out = Vec::with_capacity(n + 1);
    out.push(Rational::from(1));
    for (k, tk) in t.iter().enumerate().skip(1) {
        let four_k = Integer::from(1) << (2 * k as u32);
        let den = Integer::from(&four_k * Integer::from(&four_k - 1u32));
        let num = Integer::from(tk * (2 * k as u32));
        let mut b = Rational::from((num, den));
        if k % 2 == 0 {
            b = -b;
        }
        out.push(b);
    }
    out
}

/// B_{2j} for 1 ≤ j ≤ `MAX_BERNOULLI_INDEX` (and B_0 = 1 at j = 0).
pub fn bernoulli_even(j: usize) -> &'static Rational {
    &CACHE.get_or_init(build)[j]
}

/// B_{2j} / (2j)! rounded to `bits`.
pub fn bernoulli_over_factorial(j: usize, bits: u32) -> Float {
    let fact = Integer::factorial(2 * j as u32).complete();
    Float::with_val(bits, bernoulli_even(j)) / fact
}
