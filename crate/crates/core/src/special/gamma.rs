//! Hurwitz zeta, polygamma and digamma.

use super::bernoulli::{bernoulli_over_factorial, MAX_BERNOULLI_INDEX};
use crate::error::{Error, Result};
use crate::precision::Precision;
use rug::ops::Pow;
use rug::{Complete, Complex, Float, Integer};

/// Truncation controls for Euler–Maclaurin summation.
///
/// `cutoff` fixes the number of directly summed terms (chosen from the
/// target precision when `None`); `max_terms` caps the Bernoulli depth.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EulerMaclaurinConfig {
    pub cutoff: Option<u64>,
    pub max_terms: usize,
}

impl Default for EulerMaclaurinConfig {
    fn default() -> Self {
        EulerMaclaurinConfig {
            cutoff: None,
            max_terms: MAX_BERNOULLI_INDEX,
        }
    }
}

fn pow10_neg(bits: u32, digits: u32) -> Float {
    Float::with_val(bits, 10).pow(-(digits as i32))
}

/// ζ_H(s, a) = Σ_{m≥0} (a + m)^{−s} for real s > 1 and a > 0.
pub fn hurwitz_zeta(s: &Float, a: &Float, prec: Precision) -> Result<Float> {
    hurwitz_zeta_with(s, a, prec, EulerMaclaurinConfig::default())
}

pub fn hurwitz_zeta_with(
    s: &Float,
    a: &Float,
    prec: Precision,
    cfg: EulerMaclaurinConfig,
) -> Result<Float> {
    if *s <= 1 {
        return Err(Error::Domain(format!(
            "hurwitz zeta needs s > 1, got {}",
            s.to_f64()
        )));
    }
    if *a <= 0 {
        return Err(Error::Domain(format!(
            "hurwitz zeta needs a > 0, got {}",
            a.to_f64()
        )));
    }
    let digits = prec.digits() + 5;
    let bits = prec.bits() + 32;
    let eps = pow10_neg(bits, digits);
    let s = Float::with_val(bits, s);
    let a = Float::with_val(bits, a);
    let target = 0.4 * digits as f64 + s.to_f64() / 3.0 + 5.0;
    let mut n = cfg
        .cutoff
        .unwrap_or_else(|| (target - a.to_f64()).ceil().max(0.0) as u64);
    loop {
        let neg_s = Float::with_val(bits, -&s);
        let mut sum = Float::new(bits);
        for m in 0..n {
            let base = Float::with_val(bits, &a + m);
            sum += base.pow(&neg_s);
        }
        let x = Float::with_val(bits, &a + n);
        let x_neg_s = Float::with_val(bits, (&x).pow(&neg_s));
        let s_minus_1 = Float::with_val(bits, &s - 1u32);
        sum += Float::with_val(bits, &x_neg_s * &x) / &s_minus_1;
        sum += Float::with_val(bits, &x_neg_s / 2u32);
        let x2 = Float::with_val(bits, x.square_ref());
        let mut xpow = Float::with_val(bits, &x_neg_s / &x);
        let mut rising = s.clone();
        let mut prev = Float::with_val(bits, rug::float::Special::Infinity);
        let mut converged = false;
        for j in 1..=cfg.max_terms {
            let term = bernoulli_over_factorial(j, bits) * &rising * &xpow;
            let mag = Float::with_val(bits, term.abs_ref());
            sum += &term;
            if mag < Float::with_val(bits, sum.abs_ref()) * &eps {
                converged = true;
                break;
            }
            if mag > prev {
                break;
            }
            prev = mag;
            let k = 2 * j as u32;
            rising *= Float::with_val(bits, &s + (k - 1));
            rising *= Float::with_val(bits, &s + k);
            xpow /= &x2;
        }
        if converged {
            return Ok(Float::with_val(prec.bits(), sum));
        }
        if cfg.cutoff.is_some() {
            return Err(Error::Precision(format!(
                "Euler–Maclaurin for hurwitz zeta did not converge with cutoff {n}"
            )));
        }
        n = 2 * n + 10;
    }
}

/// Ψ^{(k)}(x) for real x > 0.
///
/// k ≥ 1 uses Ψ^{(k)}(x) = (−1)^{k+1} k! ζ_H(k+1, x); k = 0 uses the
/// recurrence to move x above a precision-dependent threshold followed by
/// the asymptotic series.
pub fn polygamma(k: u32, x: &Float, prec: Precision) -> Result<Float> {
    if *x <= 0 {
        return Err(Error::Domain(format!(
            "polygamma needs x > 0, got {}",
            x.to_f64()
        )));
    }
    if k == 0 {
        return Ok(digamma_with_shifts(x, prec)?.0);
    }
    let bits = prec.bits() + 16;
    let s = Float::with_val(bits, k + 1);
    let z = hurwitz_zeta(&s, x, prec.with_extra_digits(3))?;
    let fact = Integer::factorial(k).complete();
    let mut v = Float::with_val(bits, z * fact);
    if k % 2 == 0 {
        v = -v;
    }
    Ok(Float::with_val(prec.bits(), v))
}

fn digamma_threshold(digits: u32) -> f64 {
    (0.4 * digits as f64 + 5.0).max(20.0)
}

/// Digamma ψ(x) for real x > 0, together with the number of recurrence
/// steps taken before the asymptotic series.
pub fn digamma_with_shifts(x: &Float, prec: Precision) -> Result<(Float, u32)> {
    if *x <= 0 {
        return Err(Error::Domain(format!(
            "digamma needs x > 0, got {}",
            x.to_f64()
        )));
    }
    let digits = prec.digits() + 5;
    let bits = prec.bits() + 32;
    let threshold = digamma_threshold(digits);
    let shifts = (threshold - x.to_f64()).ceil().max(0.0) as u32;
    let mut correction = Float::new(bits);
    let mut y = Float::with_val(bits, x);
    for _ in 0..shifts {
        correction += Float::with_val(bits, y.recip_ref());
        y += 1u32;
    }
    let eps = pow10_neg(bits, digits);
    let mut value = Float::with_val(bits, y.ln_ref()) - Float::with_val(bits, 2u32 * &y).recip();
    let y2 = Float::with_val(bits, y.square_ref());
    let mut ypow = y2.clone();
    for j in 1..=MAX_BERNOULLI_INDEX {
        let b = Float::with_val(bits, super::bernoulli::bernoulli_even(j));
        let term = b / (2 * j as u32) / &ypow;
        value -= &term;
        if Float::with_val(bits, term.abs_ref()) < eps {
            return Ok((Float::with_val(prec.bits(), value - correction), shifts));
        }
        ypow *= &y2;
    }
    Err(Error::Precision(
        "digamma asymptotic series did not converge".into(),
    ))
}

/// Digamma at a complex point that is not a non-positive integer.
pub(crate) fn digamma_complex(w: &Complex, bits: u32, digits: u32) -> Result<Complex> {
    let re = w.real().to_f64();
    if w.imag().is_zero() && re <= 0.0 && w.real().is_integer() {
        return Err(Error::Domain(format!("digamma pole at {re}")));
    }
    let threshold = digamma_threshold(digits);
    let shifts = (threshold - re).ceil().max(0.0) as u32;
    let mut correction = Complex::new(bits);
    let mut y = Complex::with_val(bits, w);
    for _ in 0..shifts {
        correction += Complex::with_val(bits, y.recip_ref());
        y += 1u32;
    }
    let eps = pow10_neg(bits, digits);
    let mut value = Complex::with_val(bits, y.ln_ref())
        - Complex::with_val(bits, Complex::with_val(bits, &y * 2u32).recip_ref());
    let y2 = Complex::with_val(bits, y.square_ref());
    let mut ypow = y2.clone();
    for j in 1..=MAX_BERNOULLI_INDEX {
        let b = Float::with_val(bits, super::bernoulli::bernoulli_even(j)) / (2 * j as u32);
        let term = Complex::with_val(bits, &ypow).recip() * b;
        value -= &term;
        if Float::with_val(bits, term.abs_ref()) < eps {
            return Ok(value - correction);
        }
        ypow *= &y2;
    }
    Err(Error::Precision(
        "complex digamma asymptotic series did not converge".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::float::Constant;

    const P: u32 = 60;

    fn prec() -> Precision {
        Precision::new(P).unwrap()
    }

    fn close(a: &Float, b: &Float, digits: i32) -> bool {
        let diff = Float::with_val(400, a - b).abs();
        let scale = Float::with_val(400, b.abs_ref()).max(&Float::with_val(400, 1e-300));
        diff <= scale * Float::with_val(400, 10).pow(-digits)
    }

    fn f(v: f64) -> Float {
        Float::with_val(400, v)
    }

    #[test]
    fn zeta_two() {
        let bits = prec().bits();
        let pi2_6 = Float::with_val(bits, Constant::Pi).square() / 6u32;
        let z = hurwitz_zeta(&f(2.0), &f(1.0), prec()).unwrap();
        assert!(close(&z, &pi2_6, 58));
        let z2 = hurwitz_zeta(&f(2.0), &f(2.0), prec()).unwrap();
        assert!(close(&z2, &Float::with_val(bits, &pi2_6 - 1u32), 58));
    }

    #[test]
    fn hurwitz_matches_brute_force() {
        // Σ (2.5+m)^{-4} summed to m = 10^5 plus the integral tail bound.
        let bits = 300;
        let mut s = Float::new(bits);
        let m_max = 100_000u32;
        for m in 0..m_max {
            s += Float::with_val(bits, Float::with_val(bits, 2.5) + m).pow(-4);
        }
        // Tail between ∫_{M+2.5}^∞ and ∫_{M+1.5}^∞ of x^{-4}.
        let lo = Float::with_val(bits, Float::with_val(bits, m_max as f64 + 2.5).pow(-3)) / 3u32;
        let hi = Float::with_val(bits, Float::with_val(bits, m_max as f64 + 1.5).pow(-3)) / 3u32;
        let z = hurwitz_zeta(&f(4.0), &f(2.5), prec()).unwrap();
        assert!(z > Float::with_val(bits, &s + &lo) && z < Float::with_val(bits, &s + &hi));
    }

    #[test]
    fn digamma_at_one_is_minus_gamma() {
        let bits = prec().bits();
        let g = -Float::with_val(bits, Constant::Euler);
        let (v, shifts) = digamma_with_shifts(&f(1.0), prec()).unwrap();
        assert!(close(&v, &g, 58));
        assert!(shifts > 0);
    }

    #[test]
    fn digamma_matches_mpfr() {
        for x in [0.1, 0.5, 1.4616321449683623, 3.0, 17.25, 250.0] {
            let ours = polygamma(0, &f(x), prec()).unwrap();
            let reference = Float::with_val(prec().bits() + 64, x).digamma();
            // Near the positive root ψ is small, so compare absolutely there.
            let diff = Float::with_val(400, &ours - &reference).abs();
            assert!(diff < Float::with_val(400, 10).pow(-57), "x = {x}");
        }
    }

    #[test]
    fn trigamma_at_one() {
        let bits = prec().bits();
        let pi2_6 = Float::with_val(bits, Constant::Pi).square() / 6u32;
        assert!(close(&polygamma(1, &f(1.0), prec()).unwrap(), &pi2_6, 58));
    }

    #[test]
    fn polygamma_three_at_two_and_a_half() {
        let bits = 300;
        let mut s = Float::new(bits);
        let m_max = 100_000u32;
        for m in 0..m_max {
            s += Float::with_val(bits, Float::with_val(bits, 2.5) + m).pow(-4) * 6u32;
        }
        let lo = Float::with_val(bits, Float::with_val(bits, m_max as f64 + 2.5).pow(-3)) * 2u32;
        let hi = Float::with_val(bits, Float::with_val(bits, m_max as f64 + 1.5).pow(-3)) * 2u32;
        let v = polygamma(3, &f(2.5), prec()).unwrap();
        assert!(v > Float::with_val(bits, &s + &lo) && v < Float::with_val(bits, &s + &hi));
    }

    #[test]
    fn domain_errors() {
        assert!(polygamma(0, &f(0.0), prec()).is_err());
        assert!(polygamma(2, &f(-1.0), prec()).is_err());
        assert!(hurwitz_zeta(&f(1.0), &f(1.0), prec()).is_err());
    }

    #[test]
    fn fixed_cutoff_is_respected() {
        let cfg = EulerMaclaurinConfig {
            cutoff: Some(40),
            max_terms: 200,
        };
        let a = hurwitz_zeta_with(&f(3.0), &f(1.0), prec(), cfg).unwrap();
        let b = hurwitz_zeta(&f(3.0), &f(1.0), prec()).unwrap();
        assert!(close(&a, &b, 58));
        let tiny = EulerMaclaurinConfig {
            cutoff: Some(0),
            max_terms: 3,
        };
        assert!(hurwitz_zeta_with(&f(3.0), &f(1.0), prec(), tiny).is_err());
    }

    #[test]
    fn complex_digamma_on_real_axis_matches_real() {
        let bits = prec().bits() + 32;
        let w = Complex::with_val(bits, (3.25, 0));
        let c = digamma_complex(&w, bits, P + 5).unwrap();
        let r = polygamma(0, &f(3.25), prec()).unwrap();
        assert!(close(&Float::with_val(bits, c.real()), &r, 57));
        // ψ(1 + i) has imaginary part (π coth π − 1) / 2 ... check via recurrence instead:
        // ψ(w + 1) − ψ(w) = 1/w.
        let w = Complex::with_val(bits, (0.3, 2.0));
        let lhs = digamma_complex(&Complex::with_val(bits, &w + 1u32), bits, P + 5).unwrap()
            - digamma_complex(&w, bits, P + 5).unwrap();
        let rhs = Complex::with_val(bits, w.recip_ref());
        let d = Complex::with_val(bits, lhs - rhs).abs();
        assert!(Float::with_val(bits, d.real()) < Float::with_val(bits, 10).pow(-55));
    }
}
