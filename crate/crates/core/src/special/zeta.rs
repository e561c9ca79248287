//! ζ and ζ′ by Euler–Maclaurin summation, and log-derivatives of ξ and of
//! the zeta product.

use super::bernoulli::{bernoulli_over_factorial, MAX_BERNOULLI_INDEX};
use super::gamma::digamma_complex;
use crate::error::{Error, Result};
use crate::model::ZetaProductSpec;
use crate::precision::Precision;
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float};

/// Truncation controls for ζ: `cutoff` is the Euler–Maclaurin split point N
/// (automatic when `None`), `max_terms` the Bernoulli depth.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZetaConfig {
    pub cutoff: Option<u64>,
    pub max_terms: usize,
}

impl Default for ZetaConfig {
    fn default() -> Self {
        ZetaConfig {
            cutoff: None,
            max_terms: MAX_BERNOULLI_INDEX,
        }
    }
}

fn abs_f(z: &Complex, bits: u32) -> Float {
    Float::with_val(bits, z.abs_ref())
}

fn to_f64(z: &Complex) -> (f64, f64) {
    (z.real().to_f64(), z.imag().to_f64())
}

/// ζ(s) and ζ′(s) at `bits`, accurate to about `digits` significant digits.
pub(crate) fn zeta_and_derivative(
    s: &Complex,
    bits: u32,
    digits: u32,
    cfg: ZetaConfig,
) -> Result<(Complex, Complex)> {
    let (sr, si) = to_f64(s);
    let dist1 = ((sr - 1.0).powi(2) + si * si).sqrt();
    if dist1 < 10f64.powf(-(digits as f64) / 2.0) {
        return Err(Error::IllConditioned {
            what: "zeta pole at s = 1".into(),
            distance: dist1,
        });
    }
    if sr <= -6.0 {
        return Err(Error::Domain(format!(
            "zeta evaluation needs Re s > -6, got {sr}"
        )));
    }
    let modulus = (sr * sr + si * si).sqrt();
    let mut n = cfg.cutoff.unwrap_or_else(|| {
        (0.4 * digits as f64 + modulus / std::f64::consts::PI + 10.0).ceil() as u64
    });
    loop {
        // Cancellation in the direct sum costs about (1 − σ) log10 N digits.
        let loss = if sr < 1.0 {
            (1.0 - sr) * (n as f64).log10()
        } else {
            0.0
        };
        let wbits = bits + (loss * std::f64::consts::LOG2_10).ceil() as u32 + 32;
        let s = Complex::with_val(wbits, s);
        let mut zeta = Complex::new(wbits);
        let mut dzeta = Complex::new(wbits);
        for k in 1..n {
            let ln_k = Float::with_val(wbits, k).ln();
            let e = (-Complex::with_val(wbits, &s * &ln_k)).exp();
            dzeta -= Complex::with_val(wbits, &e * &ln_k);
            zeta += e;
        }
        let ln_n = Float::with_val(wbits, n).ln();
        let n_neg_s = (-Complex::with_val(wbits, &s * &ln_n)).exp();
        let s_minus_1 = Complex::with_val(wbits, &s - 1u32);
        let inv_sm1 = Complex::with_val(wbits, s_minus_1.recip_ref());
        // N^{1−s}/(s−1) and its derivative.
        let head = Complex::with_val(wbits, &n_neg_s * n) * &inv_sm1;
        let dhead = Complex::with_val(
            wbits,
            -Complex::with_val(wbits, &head * &ln_n) - Complex::with_val(wbits, &head * &inv_sm1),
        );
        zeta += &head;
        dzeta += dhead;
        let half = Complex::with_val(wbits, &n_neg_s / 2u32);
        dzeta -= Complex::with_val(wbits, &half * &ln_n);
        zeta += half;

        let eps = Float::with_val(wbits, 10).pow(-(digits as i32) - 3);
        let inv_n2 = Float::with_val(wbits, n).square().recip();
        let mut npow = Complex::with_val(wbits, &n_neg_s / n);
        // Rising factorial (s)_{2j−1} and its s-derivative.
        let mut p = s.clone();
        let mut dp = Complex::with_val(wbits, (1, 0));
        let mut converged = false;
        let mut prev = f64::INFINITY;
        for j in 1..=cfg.max_terms {
            let c = bernoulli_over_factorial(j, wbits);
            let term = Complex::with_val(wbits, &p * &npow) * &c;
            let inner = Complex::with_val(wbits, &dp - Complex::with_val(wbits, &p * &ln_n));
            let dterm = Complex::with_val(wbits, &inner * &npow) * &c;
            zeta += &term;
            dzeta += &dterm;
            let k = 2.0 * j as f64;
            let factor = (modulus + k + 1.0) / (sr + k + 1.0).max(1.0);
            let mag = abs_f(&term, wbits) * factor;
            let dmag = abs_f(&dterm, wbits) * factor;
            let scale = abs_f(&zeta, wbits);
            let dscale = abs_f(&dzeta, wbits).max(&scale);
            if mag < Float::with_val(wbits, &eps * &scale)
                && dmag < Float::with_val(wbits, &eps * &dscale)
            {
                converged = true;
                break;
            }
            let m = mag.to_f64();
            if j > 2 && m > prev {
                break;
            }
            prev = m;
            for shift in [2 * j as u32 - 1, 2 * j as u32] {
                let sh = Complex::with_val(wbits, &s + shift);
                dp = Complex::with_val(wbits, &dp * &sh) + &p;
                p *= sh;
            }
            npow *= &inv_n2;
        }
        if converged {
            let zeta = Complex::with_val(bits, zeta);
            let dzeta = Complex::with_val(bits, dzeta);
            return Ok((zeta, dzeta));
        }
        if cfg.cutoff.is_some() {
            return Err(Error::Precision(format!(
                "Euler–Maclaurin for zeta did not converge with cutoff {n}"
            )));
        }
        n = 2 * n + 10;
    }
}

/// ζ′/ζ(s) for Re s > −6 away from zeros and the pole.
pub fn zeta_logderiv(s: &Complex, prec: Precision) -> Result<Complex> {
    zeta_logderiv_with(s, prec, ZetaConfig::default())
}

pub fn zeta_logderiv_with(s: &Complex, prec: Precision, cfg: ZetaConfig) -> Result<Complex> {
    let digits = prec.digits() + 10;
    let bits = prec.bits() + 40;
    let (z, dz) = zeta_and_derivative(s, bits, digits, cfg)?;
    let zabs = abs_f(&z, bits).to_f64();
    let dzabs = abs_f(&dz, bits).to_f64();
    let distance = if dzabs > 0.0 {
        zabs / dzabs
    } else {
        f64::INFINITY
    };
    let limit = 10f64.powf(-(prec.digits() as f64) / 2.0);
    if z.real().is_zero() && z.imag().is_zero() || distance < limit {
        return Err(Error::IllConditioned {
            what: "zeta zero".into(),
            distance,
        });
    }
    Ok(Complex::with_val(prec.bits(), dz / z))
}

/// F′/F(s) = Σᵢ [ζ′/ζ(s − αᵢ) + ζ′/ζ(s + αᵢ)].
pub fn product_logderiv(spec: &ZetaProductSpec, s: &Complex, prec: Precision) -> Result<Complex> {
    let bits = prec.bits() + 16;
    let inner = prec.with_extra_digits(5);
    let mut total = Complex::new(bits);
    for a in spec.shifts() {
        let a = Float::with_val(bits, a);
        total += zeta_logderiv(&Complex::with_val(bits, s - &a), inner)?;
        total += zeta_logderiv(&Complex::with_val(bits, s + &a), inner)?;
    }
    Ok(Complex::with_val(prec.bits(), total))
}

/// ξ′/ξ(w) for the completed Riemann zeta function
/// ξ(w) = w(w − 1) π^{−w/2} Γ(w/2) ζ(w).
pub(crate) fn xi_logderiv(w: &Complex, bits: u32, digits: u32) -> Result<Complex> {
    let half = Float::with_val(bits, 0.5);
    if *w.real() < half {
        let reflected = Complex::with_val(bits, 1u32 - w);
        return Ok(-xi_logderiv(&reflected, bits, digits)?);
    }
    let w_minus_1 = Complex::with_val(bits, w - 1u32);
    let pi = Float::with_val(bits, Constant::Pi);
    if w_minus_1.real().is_zero() && w_minus_1.imag().is_zero() {
        // Limit at w = 1: 1 + γ/2 − ½ log 4π.
        let gamma = Float::with_val(bits, Constant::Euler);
        let v = Float::with_val(bits, 1u32) + gamma / 2u32
            - Float::with_val(bits, &pi * 4u32).ln() / 2u32;
        return Ok(Complex::with_val(bits, v));
    }
    let dist = abs_f(&w_minus_1, bits).to_f64();
    if dist < 10f64.powf(-(digits as f64) / 3.0) {
        return Err(Error::IllConditioned {
            what: "removable singularity of xi'/xi at w = 1".into(),
            distance: dist,
        });
    }
    // 1/(w − 1) and ζ′/ζ(w) cancel near w = 1; widen the precision by that loss.
    let guard = if dist < 1.0 {
        (-dist.log2()).ceil() as u32
    } else {
        0
    };
    let wb = bits + guard + 16;
    let w = Complex::with_val(wb, w);
    let mut v = Complex::with_val(wb, w.recip_ref());
    v += Complex::with_val(wb, Complex::with_val(wb, &w - 1u32).recip_ref());
    v -= Float::with_val(wb, Constant::Pi).ln() / 2u32;
    let half_w = Complex::with_val(wb, &w / 2u32);
    v += digamma_complex(&half_w, wb, digits + 10)? / 2u32;
    let (z, dz) = zeta_and_derivative(&w, wb, digits + guard / 3 + 5, ZetaConfig::default())?;
    let zabs = abs_f(&z, wb).to_f64();
    let dzabs = abs_f(&dz, wb).to_f64();
    let distance = if dzabs > 0.0 {
        zabs / dzabs
    } else {
        f64::INFINITY
    };
    if distance < 10f64.powf(-(digits as f64) / 2.0) {
        return Err(Error::IllConditioned {
            what: "zero of xi_F".into(),
            distance,
        });
    }
    v += dz / z;
    Ok(Complex::with_val(bits, v))
}

/// ξ′_F/ξ_F(s) = Σᵢ [ξ′/ξ(s − αᵢ) + ξ′/ξ(s + αᵢ)] for ξ_F = ∏ ξ(s − αᵢ) ξ(s + αᵢ).
pub fn completed_xi_logderiv(
    spec: &ZetaProductSpec,
    s: &Complex,
    prec: Precision,
) -> Result<Complex> {
    let digits = prec.digits() + 10;
    let bits = prec.bits() + 40;
    let mut total = Complex::new(bits);
    for a in spec.shifts() {
        let a = Float::with_val(bits, a);
        total += xi_logderiv(&Complex::with_val(bits, s - &a), bits, digits)?;
        total += xi_logderiv(&Complex::with_val(bits, s + &a), bits, digits)?;
    }
    Ok(Complex::with_val(prec.bits(), total))
}
