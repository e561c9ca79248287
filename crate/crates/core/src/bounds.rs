//! Rigorous error bounds for truncated zero sums: the tail above height T,
//! and the effect of errors in the tabulated ordinates.

use crate::error::{Error, Result};
use crate::model::{Route, ZetaProductSpec};
use crate::precision::{format_rational, Precision};
use crate::zeros::Theta;
use crate::zerosum::LiPartial;
use rug::{Float, Rational};
use serde::Serialize;
use std::f64::consts::{LN_2, PI};
use std::fmt;

/// Smallest height at which the truncation bound holds.
pub const MIN_TRUNCATION_HEIGHT: f64 = 319.0;

/// Lower bound on the first zeta ordinate, used as t₀.
pub const FIRST_ORDINATE_LOWER: f64 = 14.13;

/// How the radius of an estimate was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundRule {
    /// Truncation bound only, exact ordinates.
    TruncationOnly,
    /// Generic perturbation bound 4·C_F·ϑ·n·τ(1 + log t₀)/(t₀(1 − ϑ)).
    Generic,
    /// Zeta-product perturbation bound 1.30·K·ϑ·n·τ/(1 − ϑ).
    ZetaProduct,
    /// Two-tier bound for shifts (1,2,3,4) at τ = 1.
    TabulatedTau1,
    /// Two-tier bound for shifts (1,2,3,4) at τ = 5.
    TabulatedTau5,
    /// Two-tier bound for shifts (1,2,3,4) at τ = 10.
    TabulatedTau10,
    /// Arithmetic route: Dirichlet-series tail plus evaluation slack.
    DirichletTail,
    /// Arithmetic route: Laurent-coefficient quadrature uncertainty.
    Laurent,
}

impl BoundRule {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundRule::TruncationOnly => "truncation_only",
            BoundRule::Generic => "generic",
            BoundRule::ZetaProduct => "zeta_product",
            BoundRule::TabulatedTau1 => "tabulated_tau1",
            BoundRule::TabulatedTau5 => "tabulated_tau5",
            BoundRule::TabulatedTau10 => "tabulated_tau10",
            BoundRule::DirichletTail => "dirichlet_tail",
            BoundRule::Laurent => "laurent",
        }
    }

    pub fn parse(s: &str) -> Option<BoundRule> {
        [
            BoundRule::TruncationOnly,
            BoundRule::Generic,
            BoundRule::ZetaProduct,
            BoundRule::TabulatedTau1,
            BoundRule::TabulatedTau5,
            BoundRule::TabulatedTau10,
            BoundRule::DirichletTail,
            BoundRule::Laurent,
        ]
        .into_iter()
        .find(|r| r.as_str() == s)
    }
}

impl fmt::Display for BoundRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Inputs and results of the bounds behind one zero-sum estimate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub truncation: f64,
    pub perturbation: f64,
    pub rule: BoundRule,
    pub k: usize,
    pub tau: String,
    pub n: u32,
    pub height: f64,
    pub amplitude_a: f64,
    /// Declared bulk and head ordinate errors.
    pub theta0: String,
    pub theta1: String,
    /// Ordinate errors used in the formulas, including rounding of the
    /// ordinates to the working precision.
    pub theta0_effective: f64,
    pub theta1_effective: f64,
    pub c_f: f64,
    pub t0: f64,
}

/// A value of λ_F(n, τ) with an error radius.
#[derive(Debug, Clone)]
pub struct LiEstimate {
    pub n: u32,
    pub tau: Rational,
    pub center: Float,
    pub radius: f64,
    pub method: Route,
    pub rule: BoundRule,
    /// Zero sums: tail above T. Arithmetic route: Dirichlet tail or
    /// Laurent uncertainty.
    pub truncation: f64,
    /// Zero sums: ordinate-error bound. Arithmetic route: evaluation slack.
    pub perturbation: f64,
    /// Truncation height T (zero sums only).
    pub height: Option<f64>,
    pub prec: Precision,
    /// Whether the radius comes from a rigorous bound.
    pub certified: bool,
    pub report: Option<BoundReport>,
}

impl LiEstimate {
    pub fn lower(&self) -> f64 {
        self.center.to_f64() - self.radius
    }

    pub fn upper(&self) -> f64 {
        self.center.to_f64() + self.radius
    }
}

/// A = max |a ± αᵢ − τ| over a ∈ [0, 1]; affine in a, so the endpoints suffice.
pub fn shift_amplitude_a(spec: &ZetaProductSpec, tau: &Rational) -> Rational {
    let mut best = Rational::new();
    for alpha in spec.shifts() {
        for a in [Rational::new(), Rational::from(1)] {
            for v in [
                Rational::from(&a + alpha) - tau,
                Rational::from(&a - alpha) - tau,
            ] {
                let v = v.abs();
                if v > best {
                    best = v;
                }
            }
        }
    }
    best
}

/// Σ_{j=2}^{n} C(n, j) x^j = (1 + x)^n − 1 − n x, summed termwise (all
/// terms positive, no cancellation).
fn binomial_excess(n: u32, x: f64) -> f64 {
    let mut term = n as f64 * x;
    let mut sum = 0.0;
    for j in 2..=n {
        term *= (n - j + 1) as f64 / j as f64 * x;
        sum += term;
        if term < sum * 1e-18 && j as f64 > n as f64 * x {
            break;
        }
    }
    sum
}

/// Bound on |λ_F(n,τ) − λ*_F(n,τ,T)|:
/// (1/π)·K·(4 log T + 8 log 2)·[T((1 + τ/T)ⁿ − 1) − nτ] + (15/2)·K·n·τ·A·log T / T.
///
/// The bracket is evaluated as T·Σ_{j≥2} C(n,j)(τ/T)^j, so at n = 1 the
/// first part vanishes exactly.
pub fn truncation_bound(k: usize, tau: f64, n: u32, height: f64, a: f64) -> Result<f64> {
    if !(height >= MIN_TRUNCATION_HEIGHT) {
        return Err(Error::Precondition(format!(
            "truncation bound needs T >= {MIN_TRUNCATION_HEIGHT}, got T = {height}"
        )));
    }
    let k = k as f64;
    let log_t = height.ln();
    let first = k * (4.0 * log_t + 8.0 * LN_2) * height * binomial_excess(n, tau / height) / PI;
    let second = 7.5 * k * n as f64 * tau * a * log_t / height;
    let bound = first + second;
    if !bound.is_finite() {
        return Err(Error::Precondition(format!(
            "truncation bound overflows for n = {n}, tau = {tau}, T = {height}"
        )));
    }
    Ok(bound)
}

fn check_theta(theta: f64) -> Result<()> {
    if !(0.0..1.0).contains(&theta) {
        return Err(Error::Precondition(format!(
            "ordinate error must lie in [0, 1), got {theta}"
        )));
    }
    Ok(())
}

/// 4·C_F·ϑ·n·τ·(1 + log t₀) / (t₀(1 − ϑ)), for zeros symmetric about the
/// real axis and τ ≥ 2·max Re ρ.
pub fn perturbation_bound_generic(c_f: f64, t0: f64, theta: f64, n: u32, tau: f64) -> Result<f64> {
    check_theta(theta)?;
    if t0 < 1.0 {
        return Err(Error::Precondition(format!(
            "t0 must be at least 1, got {t0}"
        )));
    }
    Ok(4.0 * c_f * theta * n as f64 * tau * (1.0 + t0.ln()) / (t0 * (1.0 - theta)))
}

/// 1.30·K·ϑ·n·τ / (1 − ϑ), valid for τ ≥ 1 + 2·max αᵢ.
pub fn perturbation_bound_zeta_product(
    spec: &ZetaProductSpec,
    theta: f64,
    n: u32,
    tau: &Rational,
) -> Result<f64> {
    let threshold = Rational::from(spec.max_shift() * 2u32) + 1u32;
    if *tau < threshold {
        return Err(Error::RuleInapplicable(format!(
            "the zeta-product perturbation bound needs tau >= 1 + 2 max alpha = {}, got {}; \
             use the tabulated rules for shifts 1,2,3,4 at tau in {{1, 5}}",
            format_rational(&threshold),
            format_rational(tau)
        )));
    }
    zeta_product_formula(spec.k(), theta, n, tau)
}

/// The coefficient 1.30·K·τ of the zeta-product bound, exactly.
pub fn zeta_product_coefficient(k: usize, tau: &Rational) -> Rational {
    Rational::from((13, 10)) * k as u64 * tau
}

fn zeta_product_formula(k: usize, theta: f64, n: u32, tau: &Rational) -> Result<f64> {
    check_theta(theta)?;
    let coeff = zeta_product_coefficient(k, tau).to_f64();
    Ok(coeff * n as f64 * theta / (1.0 - theta))
}

/// The two-tier bounds for shifts (1,2,3,4), first nine ordinates with error
/// ϑ₁ and the rest with ϑ₀:
/// τ = 1, n ≤ 500: 6.7e14·nϑ₁/(1−ϑ₁) + 7.2e6·nϑ₀/(1−ϑ₀);
/// τ = 5, n ≤ 200: (19.5 + 9e6)·nϑ₀/(1−ϑ₀) + 4.9e21·nϑ₁/(1−ϑ₁);
/// τ = 10, n ≤ 300: 52·nϑ₀/(1−ϑ₀).
pub fn perturbation_bound_example(
    tau: &Rational,
    n: u32,
    theta0: f64,
    theta1: f64,
) -> Result<(BoundRule, f64)> {
    check_theta(theta0)?;
    check_theta(theta1)?;
    let nf = n as f64;
    let q0 = nf * theta0 / (1.0 - theta0);
    let q1 = nf * theta1 / (1.0 - theta1);
    let window = |max: u32, rule: BoundRule| -> Result<BoundRule> {
        if n >= 1 && n <= max {
            Ok(rule)
        } else {
            Err(Error::RuleInapplicable(format!(
                "tabulated bound at tau = {} covers 1 <= n <= {max}, got n = {n}",
                format_rational(tau)
            )))
        }
    };
    if *tau == 1 {
        let rule = window(500, BoundRule::TabulatedTau1)?;
        Ok((rule, 6.7e14 * q1 + 7.2e6 * q0))
    } else if *tau == 5 {
        let rule = window(200, BoundRule::TabulatedTau5)?;
        Ok((rule, (19.5 + 9e6) * q0 + 4.9e21 * q1))
    } else if *tau == 10 {
        let rule = window(300, BoundRule::TabulatedTau10)?;
        Ok((rule, zeta_product_formula(4, theta0, n, tau)?))
    } else {
        Err(Error::RuleInapplicable(format!(
            "tabulated bounds exist only for tau in {{1, 5, 10}}, got {}",
            format_rational(tau)
        )))
    }
}

/// Upper bound (5/8)·T·log T on the number of zeta ordinates in (0, T];
/// zero below 14.
pub fn zero_count_bound(height: f64) -> f64 {
    if height < 14.0 {
        0.0
    } else {
        0.625 * height * height.ln()
    }
}

/// Picks the perturbation rule for (spec, τ, n): the tabulated bounds when
/// they apply and the declared ordinate errors meet their hypotheses
/// (ϑ₀ ≤ 4e-9, ϑ₁ ≤ 1e-997), else the zeta-product bound when
/// τ ≥ 1 + 2·max αᵢ.
pub fn select_rule(
    spec: &ZetaProductSpec,
    tau: &Rational,
    n: u32,
    theta0: &Theta,
    theta1: &Theta,
) -> Result<BoundRule> {
    let tabulated = spec.is_shift_set(&[1, 2, 3, 4])
        && theta0.log10() <= 4e-9f64.log10() + 1e-12
        && theta1.at_most_pow10(-997.0);
    if tabulated {
        if let Ok((rule, _)) = perturbation_bound_example(tau, n, 0.0, 0.0) {
            return Ok(rule);
        }
    }
    let threshold = Rational::from(spec.max_shift() * 2u32) + 1u32;
    if *tau >= threshold {
        return Ok(BoundRule::ZetaProduct);
    }
    Err(Error::RuleInapplicable(format!(
        "no perturbation bound for shifts {spec} at tau = {}, n = {n}: \
         tau >= {} is required outside the tabulated cases",
        format_rational(tau),
        format_rational(&threshold)
    )))
}

/// Center and radius for a truncated zero sum: the radius adds the
/// truncation bound, the perturbation bound of the selected rule and the
/// rounding slack of the summation.
///
/// Ordinates are rounded to the working precision before use, so the
/// perturbation formulas see ϑ + T·2^(−bits) rather than the declared ϑ.
pub fn combined_interval(
    partial: &LiPartial,
    spec: &ZetaProductSpec,
    theta0: &Theta,
    theta1: &Theta,
) -> Result<LiEstimate> {
    let rule = select_rule(spec, &partial.tau, partial.n, theta0, theta1)?;
    let tau = partial.tau.to_f64();
    let a = shift_amplitude_a(spec, &partial.tau).to_f64();
    let truncation = truncation_bound(spec.k(), tau, partial.n, partial.height, a)?;
    let rounding = partial.height * 2f64.powi(-(partial.ordinate_bits as i32));
    let theta0_eff = theta0.upper() + rounding;
    let theta1_eff = theta1.upper() + rounding;
    let perturbation = match rule {
        BoundRule::ZetaProduct => {
            perturbation_bound_zeta_product(spec, theta0_eff, partial.n, &partial.tau)?
        }
        _ => perturbation_bound_example(&partial.tau, partial.n, theta0_eff, theta1_eff)?.1,
    };
    let radius = truncation + perturbation + partial.rounding_slack;
    let report = BoundReport {
        truncation,
        perturbation,
        rule,
        k: spec.k(),
        tau: format_rational(&partial.tau),
        n: partial.n,
        height: partial.height,
        amplitude_a: a,
        theta0: theta0.text().to_string(),
        theta1: theta1.text().to_string(),
        theta0_effective: theta0_eff,
        theta1_effective: theta1_eff,
        c_f: spec.k() as f64,
        t0: FIRST_ORDINATE_LOWER,
    };
    Ok(LiEstimate {
        n: partial.n,
        tau: partial.tau.clone(),
        center: partial.value.clone(),
        radius,
        method: Route::ZeroSum,
        rule,
        truncation,
        perturbation,
        height: Some(partial.height),
        prec: partial.prec,
        certified: true,
        report: Some(report),
    })
}
