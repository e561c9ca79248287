//! Oracle checks for the special functions, shared with the acceptance run.

use rug::ops::Pow;
use rug::{Float, Integer};
use tauli::model::ZetaProductSpec;
use tauli::special::{
    dirichlet_coeff, laguerre_assoc1_family, laguerre_assoc1_recurrence, polygamma, von_mangoldt,
};
use tauli::Precision;

pub const BITS: u32 = 400;

fn f(x: &str) -> Float {
    Float::with_val(BITS, Float::parse(x).unwrap())
}

fn rel_err(a: &Float, b: &Float) -> f64 {
    let d = Float::with_val(BITS, a - b).abs();
    (d / Float::with_val(BITS, b.abs_ref()).max(&Float::with_val(BITS, 1e-300))).to_f64()
}

fn reference() -> Vec<(u32, String, Float)> {
    include_str!("../data/polygamma_reference.txt")
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let mut it = l.split_whitespace();
            let k = it.next().unwrap().parse().unwrap();
            let x = it.next().unwrap().to_string();
            let v = f(it.next().unwrap());
            (k, x, v)
        })
        .collect()
}

/// Largest relative error of ψ^(k)(x) against the mpmath table, k ≤ 20.
pub fn polygamma_reference_error() -> f64 {
    let rows = reference();
    assert_eq!(rows.len(), 84);
    rows.iter()
        .map(|(k, x, v)| {
            rel_err(
                &polygamma(*k, &f(x), Precision::new(40).unwrap()).unwrap(),
                v,
            )
        })
        .fold(0.0, f64::max)
}

/// Largest relative error of ψ^(k)(x), k ≤ 20, x ∈ {0.5, 1, 2.5, 7}, against
/// MPFR values: ψ^(k)(1) = (−1)^{k+1} k! ζ(k+1), ψ^(k)(1/2) = (2^{k+1} − 1)ψ^(k)(1),
/// ψ(1) = −γ, ψ(1/2) = −γ − 2 log 2, then ψ^(k)(x+1) = ψ^(k)(x) + (−1)^k k! x^{−k−1}.
pub fn polygamma_closed_form_error() -> f64 {
    let mut worst = 0f64;
    for k in 0u32..=20 {
        let fact = Float::with_val(BITS, Integer::from(Integer::factorial(k)));
        let (at_one, at_half) = if k == 0 {
            let gamma = Float::with_val(BITS, rug::float::Constant::Euler);
            let ln2 = Float::with_val(BITS, rug::float::Constant::Log2);
            (Float::with_val(BITS, -&gamma), -gamma - ln2 * 2u32)
        } else {
            let z = Float::with_val(BITS, Float::with_val(BITS, k + 1).zeta()) * &fact;
            let v = if k % 2 == 1 { z } else { -z };
            let scale = Float::with_val(BITS, Float::with_val(BITS, 2).pow(k + 1) - 1u32);
            (v.clone(), v * scale)
        };
        let step = |x: f64| {
            let t = Float::with_val(BITS, Float::with_val(BITS, x).pow(-(k as i32) - 1)) * &fact;
            if k % 2 == 0 {
                t
            } else {
                -t
            }
        };
        let mut two_half = at_half.clone();
        for x in [0.5, 1.5] {
            two_half += step(x);
        }
        let mut seven = at_one.clone();
        for x in 1..7 {
            seven += step(x as f64);
        }
        for (x, v) in [
            ("0.5", at_half),
            ("1", at_one),
            ("2.5", two_half),
            ("7", seven),
        ] {
            let got = polygamma(k, &f(x), Precision::new(40).unwrap()).unwrap();
            worst = worst.max(rel_err(&got, &v));
        }
    }
    worst
}

/// Checks ψ^(k)(x) for 8 ≤ k ≤ 20 against a bracketed Hurwitz series.
pub fn polygamma_hurwitz_check() -> Result<(), String> {
    // ψ^(k)(x) = (−1)^{k+1} k! Σ_{m≥0} (x+m)^{−k−1}. The terms are convex and
    // decreasing, so the tail from N lies between the trapezoid estimate
    // ∫_N^∞ + f(N)/2 and the midpoint estimate ∫_{N−1/2}^∞.
    let n_terms = 10_000u32;
    for x in ["0.5", "1", "2.5", "7"] {
        let xf = f(x);
        for k in 8u32..=20 {
            let e = -(k as i32 + 1);
            let mut head = Float::new(BITS);
            for m in 0..n_terms {
                head += Float::with_val(BITS, &xf + m).pow(e);
            }
            let base = Float::with_val(BITS, &xf + n_terms);
            let integral = |b: &Float| Float::with_val(BITS, b.pow(-(k as i32))) / k;
            let f_n = Float::with_val(BITS, (&base).pow(e));
            let lo = Float::with_val(BITS, &head + integral(&base)) + f_n / 2u32;
            let hi = Float::with_val(BITS, &head + integral(&Float::with_val(BITS, &base - 0.5)));
            let fact = Float::with_val(BITS, Integer::from(Integer::factorial(k)));
            let (lo, hi) = (lo * &fact, hi * &fact);
            let got = polygamma(k, &xf, Precision::new(40).unwrap()).unwrap();
            let mag = if k % 2 == 1 { got } else { -got };
            let slack = Float::with_val(BITS, hi.abs_ref()) * 1e-38;
            if !(mag >= Float::with_val(BITS, &lo - &slack)
                && mag <= Float::with_val(BITS, &hi + &slack))
            {
                return Err(format!("outside the bracket at k = {k}, x = {x}"));
            }
            if rel_err(&hi, &lo) >= 1e-30 {
                return Err(format!("bracket too wide at k = {k}, x = {x}"));
            }
        }
    }
    Ok(())
}

/// Largest |explicit − recurrence| / max(|L|, 1) over n ≤ 200, x ≤ 140.
pub fn laguerre_error() -> f64 {
    let mut worst = 0f64;
    let ns: Vec<u32> = (0..=200).collect();
    let prec = Precision::new(40).unwrap();
    for x in ["0.5", "3", "17.25", "60", "99.9", "140"] {
        let xf = f(x);
        let explicit = laguerre_assoc1_family(&ns, &xf, prec);
        let recurrence = laguerre_assoc1_recurrence(200, &xf, 3000);
        for (a, b) in explicit.iter().zip(&recurrence) {
            let d = Float::with_val(3000, a - b).abs().to_f64();
            let scale = b.to_f64().abs().max(1.0);
            worst = worst.max(d / scale);
        }
    }
    worst
}

pub fn spec() -> ZetaProductSpec {
    ZetaProductSpec::from_integers(&[1, 2, 3, 4]).unwrap()
}

/// −log of the local factor at p: Σᵢ [−log(1 − p^{αᵢ−s}) − log(1 − p^{−αᵢ−s})].
fn log_local_factor(p: u64, s: &Float) -> Float {
    let mut out = Float::new(BITS);
    for a in [1i32, 2, 3, 4] {
        for e in [a, -a] {
            let t = Float::with_val(
                BITS,
                Float::with_val(BITS, p).pow(Float::with_val(BITS, e) - s),
            );
            out -= Float::with_val(BITS, 1 - t).ln();
        }
    }
    out
}

pub fn central_derivative(g: impl Fn(&Float) -> Float, s: &Float) -> Float {
    // Richardson-extrapolated central difference, error O(h⁴).
    let d = |h: &Float| {
        let plus = g(&Float::with_val(BITS, s + h));
        let minus = g(&Float::with_val(BITS, s - h));
        (plus - minus) / Float::with_val(BITS, h * 2u32)
    };
    let h = Float::with_val(BITS, 1e-12);
    let h2 = Float::with_val(BITS, &h / 2u32);
    let (a, b) = (d(&h), d(&h2));
    (b * 4u32 - a) / 3u32
}

/// Largest relative error of Σ_k c_F(p^k) p^{−ks} against −(d/ds) log F_p
/// at s = σ₀ + 3 = 8 over primes p ≤ 100.
pub fn dirichlet_local_factor_error() -> f64 {
    let mut worst = 0f64;
    // −(d/ds) log F_p(s) = Σ_k c_F(p^k) p^{−ks}; s = σ₀ + 3 = 8.
    let s = Float::with_val(BITS, 8);
    let prec = Precision::new(40).unwrap();
    for p in (2u64..=100).filter(|&m| von_mangoldt(m) == Some(m)) {
        let derivative = -central_derivative(|x| log_local_factor(p, x), &s);
        let mut series = Float::new(BITS);
        let mut m = p;
        loop {
            let term = Float::with_val(
                BITS,
                dirichlet_coeff(&spec(), m, prec) * Float::with_val(BITS, m).pow(-8),
            );
            let small = term.to_f64() < 1e-30 * series.to_f64().max(1e-300);
            series += term;
            if small || m > u64::MAX / p {
                break;
            }
            m *= p;
        }
        worst = worst.max(rel_err(&series, &derivative));
    }
    worst
}
