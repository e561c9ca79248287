//! Associated Laguerre polynomials L¹ₙ by their explicit sum.

use crate::precision::{digits_to_bits, Precision};
use rug::{Float, Integer};

/// Bits needed so that L¹ₘ(x) keeps `prec` digits for every m ≤ n: the
/// explicit sum cancels down from its largest term C(n+1, j+1)|x|^j/j!, so
/// that many digits plus ten are added.
pub fn laguerre_working_bits(n: u32, x: &Float, prec: Precision) -> u32 {
    let ln_x = x.to_f64().abs().ln();
    let mut ln_term = ((n + 1) as f64).ln();
    let mut ln_max = ln_term;
    for j in 0..n {
        ln_term += ((n - j) as f64 / (j + 2) as f64).ln() + ln_x - ((j + 1) as f64).ln();
        ln_max = ln_max.max(ln_term);
    }
    let extra = (ln_max * std::f64::consts::LOG10_E + ((n + 2) as f64).log10())
        .ceil()
        .max(0.0) as u32
        + 10;
    digits_to_bits(prec.digits() + extra) + 16
}

/// L¹ₙ(x) = Σ_{j=0}^{n} (−1)^j C(n+1, j+1) x^j / j!.
pub fn laguerre_assoc1(n: u32, x: &Float, prec: Precision) -> Float {
    laguerre_assoc1_family(&[n], x, prec)
        .pop()
        .expect("one value")
}

/// L¹ₙ(x) for every n in `ns`, sharing the powers x^j/j!.
pub fn laguerre_assoc1_family(ns: &[u32], x: &Float, prec: Precision) -> Vec<Float> {
    let n_max = ns.iter().copied().max().unwrap_or(0);
    let bits = laguerre_working_bits(n_max, x, prec);
    let x = Float::with_val(bits, x);
    // q[j] = (−x)^j / j!
    let mut q = Vec::with_capacity(n_max as usize + 1);
    let mut cur = Float::with_val(bits, 1);
    for j in 0..=n_max {
        q.push(cur.clone());
        cur *= &x;
        cur /= j + 1;
        cur = -cur;
    }
    ns.iter()
        .map(|&n| {
            let mut sum = Float::new(bits);
            let mut binom = Integer::from(n + 1);
            for (j, qj) in q.iter().enumerate().take(n as usize + 1) {
                sum += Float::with_val(bits, qj * &binom);
                let j = j as u32;
                binom *= n - j;
                binom /= j + 2;
            }
            Float::with_val(prec.bits(), sum)
        })
        .collect()
}

/// L¹ₙ(x) for n = 0..=n_max by the three-term recurrence
/// (n+1) L¹_{n+1} = (2n + 2 − x) L¹ₙ − (n+1) L¹_{n−1}, at `bits`.
pub fn laguerre_assoc1_recurrence(n_max: u32, x: &Float, bits: u32) -> Vec<Float> {
    let x = Float::with_val(bits, x);
    let mut out = Vec::with_capacity(n_max as usize + 1);
    out.push(Float::with_val(bits, 1));
    if n_max == 0 {
        return out;
    }
    out.push(Float::with_val(bits, 2u32 - &x));
    for n in 1..n_max {
        let a = Float::with_val(bits, (2 * n + 2) - &x) * &out[n as usize];
        let b = Float::with_val(bits, &out[n as usize - 1] * (n + 1));
        out.push((a - b) / (n + 1));
    }
    out
}
