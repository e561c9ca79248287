//! λ_F(n, τ) from closed arithmetic formulas.
//!
//! Both formulas expand λ_F(n, τ) = Σ_{k=1}^{n} C(n,k) τ^k c_{k−1}, where
//! c_j are the Taylor coefficients at τ of
//! ξ′_F/ξ_F(s) = Σ mᵢ/(s − sᵢ) + Σ_{unpaired} mᵢ/(s − σ₁ + conj sᵢ)
//!             + log Q_F + Σⱼ λⱼ Ψ(λⱼ s + μⱼ) + F′/F(s).
//! The pole part sums in closed form to the pole terms. For τ > σ₀ the
//! F′/F part comes from the Dirichlet series and yields Laguerre
//! polynomials; for general τ it comes from Laurent coefficients of F′/F
//! computed by contour quadrature.

use crate::bounds::{BoundRule, LiEstimate};
use crate::error::{Error, Result};
use crate::model::{
    tau_domain, zeta_product_descriptor, LFunctionDescriptor, Route, ZetaProductSpec,
};
use crate::precision::{format_rational, Precision};
use crate::special::{laguerre_assoc1_family, polygamma, prime_powers_up_to, product_logderiv};
use rayon::prelude::*;
use rug::ops::Pow;
use rug::{Complex, Float, Integer, Rational};

/// Default Dirichlet-series cutoff.
pub const DEFAULT_M_TRUNC: u64 = 100_000;

/// Most Laurent coefficients the contour route will produce.
pub const MAX_LAURENT_COUNT: usize = 64;

const GUARD_BITS: u32 = 32;

/// Which pole terms to include.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoleTermVariant {
    /// Every pole; τ must not be a pole.
    AllPoles,
    /// Poles sᵢ = τ are skipped; their residue is carried by b₋₁ of F′/F.
    SkipTau,
}

/// Replaces c_F(m) by factor·c_F(m) for one m. Used to check that the
/// cross-check between routes detects a wrong coefficient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientFault {
    pub m: u64,
    pub factor: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArithmeticConfig {
    pub m_trunc: u64,
    pub fault: Option<CoefficientFault>,
}

impl Default for ArithmeticConfig {
    fn default() -> Self {
        ArithmeticConfig {
            m_trunc: DEFAULT_M_TRUNC,
            fault: None,
        }
    }
}

/// Σᵢ mᵢ(1 − (sᵢ/(sᵢ − τ))ⁿ) + Σ_{unpaired} mᵢ(1 − (wᵢ/(wᵢ − τ))ⁿ) with
/// wᵢ = σ₁ − conj(sᵢ), in exact rational arithmetic (real poles only).
pub fn pole_terms(
    desc: &LFunctionDescriptor,
    n: u32,
    tau: &Rational,
    variant: PoleTermVariant,
) -> Result<Rational> {
    let term = |at: &Rational, order: u32| -> Rational {
        let ratio = Rational::from(at / Rational::from(at - tau));
        let power = ratio.pow(n);
        (Rational::from(1) - power) * order
    };
    let mut total = Rational::new();
    for pole in &desc.poles {
        if !pole.at.is_real() {
            return Err(Error::InvalidSpec("pole terms need real poles".into()));
        }
        if pole.at.re == *tau {
            match variant {
                PoleTermVariant::SkipTau => continue,
                PoleTermVariant::AllPoles => {
                    return Err(Error::DegenerateTau(format!(
                        "tau = {} is a pole of F",
                        format_rational(tau)
                    )))
                }
            }
        }
        total += term(&pole.at.re, pole.order);
    }
    for pole in desc.unpaired_poles() {
        let w = Rational::from(&desc.sigma1 - &pole.at.re);
        if w == *tau {
            return Err(Error::DegenerateTau(format!(
                "tau = {} equals sigma1 - s for the unpaired pole s = {}",
                format_rational(tau),
                format_rational(&pole.at.re)
            )));
        }
        total += term(&w, pole.order);
    }
    Ok(total)
}

/// Σ_{k=1}^{n} C(n,k) τ^k c_{k−1} and the matching sum of absolute values.
fn binomial_combination(n: u32, tau: &Float, coeffs: &[Float], bits: u32) -> (Float, f64) {
    let mut sum = Float::new(bits);
    let mut abs = 0.0;
    let mut weight = Float::with_val(bits, 1);
    let mut binom = Integer::from(1);
    for k in 1..=n {
        binom *= n - k + 1;
        binom /= k;
        weight *= tau;
        let t = Float::with_val(bits, &weight * &binom) * &coeffs[k as usize - 1];
        abs += t.to_f64().abs();
        sum += t;
    }
    (sum, abs)
}

fn gamma_arguments(
    desc: &LFunctionDescriptor,
    tau: &Rational,
) -> Result<Vec<(Rational, Rational)>> {
    let mut out = Vec::with_capacity(desc.gamma_factors.len());
    for g in &desc.gamma_factors {
        if !g.mu.is_real() {
            return Err(Error::InvalidSpec("gamma terms need real mu".into()));
        }
        let x = Rational::from(&g.lambda * tau) + &g.mu.re;
        if x <= 0 {
            return Err(Error::Domain(format!(
                "lambda*tau + mu = {} is not positive for the gamma factor with mu = {}",
                format_rational(&x),
                format_rational(&g.mu.re)
            )));
        }
        out.push((g.lambda.clone(), x));
    }
    Ok(out)
}

/// Taylor coefficients gₖ₋₁ = Σⱼ λⱼᵏ Ψ^{(k−1)}(λⱼτ + μⱼ)/(k − 1)! for
/// k = 1..=k_max, with |gₖ₋₁| scale for error estimates.
fn gamma_coefficients(
    args: &[(Rational, Rational)],
    k_max: u32,
    prec: Precision,
) -> Result<Vec<Float>> {
    let bits = prec.bits() + GUARD_BITS;
    let mut distinct: Vec<(Rational, Vec<Rational>)> = Vec::new();
    for (lambda, x) in args {
        match distinct.iter_mut().find(|(y, _)| y == x) {
            Some(entry) => entry.1.push(lambda.clone()),
            None => distinct.push((x.clone(), vec![lambda.clone()])),
        }
    }
    let per_arg: Vec<Vec<Float>> = distinct
        .par_iter()
        .map(|(x, lambdas)| -> Result<Vec<Float>> {
            let xf = Float::with_val(bits, x);
            let lam: Vec<Float> = lambdas.iter().map(|l| Float::with_val(bits, l)).collect();
            let mut lam_pow: Vec<Float> = lam.clone();
            let mut fact = Float::with_val(bits, 1);
            let mut out = Vec::with_capacity(k_max as usize);
            for k in 1..=k_max {
                if k > 1 {
                    fact *= k - 1;
                    for (p, l) in lam_pow.iter_mut().zip(&lam) {
                        *p *= l;
                    }
                }
                let psi = polygamma(k - 1, &xf, prec.with_extra_digits(10))?;
                let mut weight = Float::new(bits);
                for p in &lam_pow {
                    weight += p;
                }
                out.push(Float::with_val(bits, psi * weight) / &fact);
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let mut total = vec![Float::new(bits); k_max as usize];
    for v in per_arg {
        for (t, x) in total.iter_mut().zip(v) {
            *t += x;
        }
    }
    Ok(total)
}

fn check_n_list(n_list: &[u32]) -> Result<u32> {
    if n_list.is_empty() || n_list[0] == 0 {
        return Err(Error::InvalidSpec(
            "n grid must be nonempty with n >= 1".into(),
        ));
    }
    if n_list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidSpec(
            "n grid must be strictly ascending".into(),
        ));
    }
    Ok(*n_list.last().expect("nonempty"))
}

fn ln_binomial(n: u32, k: u32) -> f64 {
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

fn ln_factorial(n: u32) -> f64 {
    (2..=n).map(|i| (i as f64).ln()).sum()
}

/// log(e^a + e^b)
fn log_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// Bound on Σ_{m>M} c_F(m) m^{−τ} |L¹ₙ₋₁(τ log m)|.
///
/// Uses c_F(m) ≤ 2K·log m·m^{α_max} and |L¹ₙ₋₁(y)| ≤ Σⱼ C(n, j+1) yʲ/j!, so
/// each j contributes 2K·C(n, j+1)·τʲ/j!·Σ_{m>M} f(m) with
/// f(x) = (log x)^{j+1} x^{−β}, β = τ − α_max > 1. With z = (β − 1) log M,
/// ∫_M^∞ f = Γ(j+2, z)/(β − 1)^{j+2} and Γ(j+2, z) = (j+1)!·e^{−z}·Σ_{i≤j+1} zⁱ/i!.
/// f rises up to log x = (j+1)/β and then falls, so Σ_{m>M} f(m) ≤ ∫_M^∞ f,
/// plus max f when M lies before the peak. Summed in log space.
pub fn dirichlet_tail_bound(spec: &ZetaProductSpec, n: u32, tau: &Rational, m: u64) -> Result<f64> {
    let beta = (Rational::from(tau - spec.max_shift())).to_f64();
    if beta <= 1.0 {
        return Err(Error::Domain(format!(
            "the Dirichlet series diverges for tau = {} <= 1 + max alpha",
            format_rational(tau)
        )));
    }
    if m < 2 {
        return Err(Error::Domain("Dirichlet cutoff must be at least 2".into()));
    }
    let k = spec.k() as f64;
    let tau_f = tau.to_f64();
    let log_m = (m as f64).ln();
    let z = (beta - 1.0) * log_m;
    let mut log_total = f64::NEG_INFINITY;
    for j in 0..n {
        let jf = j as f64;
        // log Σ_{i≤j+1} zⁱ/i!
        let mut log_series = f64::NEG_INFINITY;
        let mut log_term = 0.0;
        for i in 0..=j + 1 {
            if i > 0 {
                log_term += z.ln() - (i as f64).ln();
            }
            log_series = log_add(log_series, log_term);
        }
        let weight = (2.0 * k).ln() + ln_binomial(n, j + 1) + jf * tau_f.ln() - ln_factorial(j);
        let integral = ln_factorial(j + 1) - z + log_series - (jf + 2.0) * (beta - 1.0).ln();
        log_total = log_add(log_total, weight + integral);
        let peak = (jf + 1.0) / beta;
        if log_m < peak {
            let log_fmax = (jf + 1.0) * (peak.ln() - 1.0);
            log_total = log_add(log_total, weight + log_fmax);
        }
    }
    Ok(log_total.exp())
}

/// Dirichlet part −τ Σ_{m≤M} c_F(m) m^{−τ} L¹ₙ₋₁(τ log m) for each n, with
/// the absolute-value sums behind each.
fn dirichlet_terms(
    spec: &ZetaProductSpec,
    n_list: &[u32],
    tau: &Rational,
    config: ArithmeticConfig,
    prec: Precision,
) -> (Vec<Float>, Vec<f64>) {
    let bits = prec.bits() + GUARD_BITS;
    let work = prec.with_extra_digits(10);
    let tau_f = Float::with_val(bits, tau);
    let ns: Vec<u32> = n_list.iter().map(|n| n - 1).collect();
    let powers = prime_powers_up_to(config.m_trunc);
    let chunks: Vec<(Vec<Float>, Vec<f64>)> = powers
        .par_chunks(256)
        .map(|chunk| {
            let mut sums = vec![Float::new(bits); n_list.len()];
            let mut abs = vec![0.0f64; n_list.len()];
            for &(m, p) in chunk {
                let ln_m = Float::with_val(bits, m).ln();
                let mut coeff = Float::new(bits);
                for a in spec.shifts() {
                    let e = Float::with_val(bits, &ln_m * a).exp();
                    coeff += Float::with_val(bits, e.recip_ref());
                    coeff += e;
                }
                coeff *= Float::with_val(bits, p).ln();
                if let Some(f) = config.fault.filter(|f| f.m == m) {
                    coeff *= f.factor;
                }
                let x = Float::with_val(bits, &tau_f * &ln_m);
                // τ·c_F(m)·m^{−τ}
                let scale = Float::with_val(bits, -&x).exp() * coeff * &tau_f;
                let lag = laguerre_assoc1_family(&ns, &x, work);
                let xf = x.to_f64();
                for (i, l) in lag.iter().enumerate() {
                    sums[i] -= Float::with_val(bits, &scale * l);
                    abs[i] += scale.to_f64() * laguerre_abs_bound(ns[i], xf);
                }
            }
            (sums, abs)
        })
        .collect();
    let mut sums = vec![Float::new(bits); n_list.len()];
    let mut abs = vec![0.0f64; n_list.len()];
    for (s, a) in chunks {
        for i in 0..n_list.len() {
            sums[i] += &s[i];
            abs[i] += a[i];
        }
    }
    (sums, abs)
}

/// Σⱼ C(n+1, j+1) xʲ/j! ≥ |L¹ₙ(x)|.
fn laguerre_abs_bound(n: u32, x: f64) -> f64 {
    let mut term = (n + 1) as f64;
    let mut sum = term;
    for j in 0..n {
        term *= x * (n - j) as f64 / ((j + 2) as f64 * (j + 1) as f64);
        sum += term;
    }
    sum
}

fn slack(abs_sum: f64, prec: Precision) -> f64 {
    abs_sum * 10f64.powi(2 - prec.digits() as i32)
}

/// λ_F(n, τ) for τ ∈ (σ₀, 2σ₀] by the Dirichlet-series formula, for each n
/// of an ascending grid. Radius: Dirichlet tail bound plus an evaluation
/// slack proportional to the sum of absolute values of all terms.
pub fn li_arithmetic_high_tau_sweep(
    spec: &ZetaProductSpec,
    n_list: &[u32],
    tau: &Rational,
    config: ArithmeticConfig,
    prec: Precision,
) -> Result<Vec<LiEstimate>> {
    let n_max = check_n_list(n_list)?;
    let desc = zeta_product_descriptor(spec);
    tau_domain(&desc, Route::ArithmeticHighTau).check(tau)?;
    if config.m_trunc < 2 {
        return Err(Error::Domain("Dirichlet cutoff must be at least 2".into()));
    }
    let bits = prec.bits() + GUARD_BITS;
    let tau_f = Float::with_val(bits, tau);
    let args = gamma_arguments(&desc, tau)?;
    let gamma = gamma_coefficients(&args, n_max, prec)?;
    let (dirichlet, dirichlet_abs) = dirichlet_terms(spec, n_list, tau, config, prec);
    let log_q = desc.q_f.ln(bits);
    n_list
        .iter()
        .enumerate()
        .map(|(i, &n)| {
            let poles =
                Float::with_val(bits, pole_terms(&desc, n, tau, PoleTermVariant::AllPoles)?);
            let (gamma_sum, gamma_abs) = binomial_combination(n, &tau_f, &gamma, bits);
            let q_term = Float::with_val(bits, &log_q * &tau_f) * n;
            let center = poles + gamma_sum + q_term + &dirichlet[i];
            let tail = dirichlet_tail_bound(spec, n, tau, config.m_trunc)?;
            let eval = slack(gamma_abs + dirichlet_abs[i] + center.to_f64().abs(), prec);
            Ok(LiEstimate {
                n,
                tau: tau.clone(),
                center: Float::with_val(prec.bits(), center),
                radius: tail + eval,
                method: Route::ArithmeticHighTau,
                rule: BoundRule::DirichletTail,
                truncation: tail,
                perturbation: eval,
                height: None,
                prec,
                certified: false,
                report: None,
            })
        })
        .collect()
}

pub fn li_arithmetic_high_tau(
    spec: &ZetaProductSpec,
    n: u32,
    tau: &Rational,
    config: ArithmeticConfig,
    prec: Precision,
) -> Result<LiEstimate> {
    let mut v = li_arithmetic_high_tau_sweep(spec, &[n], tau, config, prec)?;
    Ok(v.pop().expect("one value"))
}

/// Laurent expansion of F′/F at τ: coefficients[0] = b₋₁, coefficients[j + 1] = bⱼ.
#[derive(Debug, Clone)]
pub struct LaurentExpansion {
    pub tau: Rational,
    pub coefficients: Vec<Float>,
    /// Estimated absolute error of each coefficient.
    pub uncertainty: Vec<f64>,
    pub radius_used: f64,
    /// Quadrature nodes of the two final resolutions.
    pub nodes: (usize, usize),
    /// Digits on which the final two resolutions agree, relative to the
    /// natural scale max|F′/F| on the contour times r^{−k}.
    pub certified_digits: u32,
}

impl LaurentExpansion {
    pub fn b(&self, k: i64) -> &Float {
        &self.coefficients[(k + 1) as usize]
    }
}

/// Distance from τ to the nearest singularity of F′/F other than τ itself:
/// poles 1 ± αᵢ, trivial zeros ±αᵢ − 2k, and nontrivial zeros, which lie at
/// height above 14.13.
fn singularity_distance(spec: &ZetaProductSpec, tau: &Rational) -> f64 {
    let mut best = 14.13f64;
    let mut consider = |p: Rational| {
        if p != *tau {
            let d = Rational::from(&p - tau).abs().to_f64();
            if d < best {
                best = d;
            }
        }
    };
    for a in spec.shifts() {
        consider(Rational::from(a + 1u32));
        consider(Rational::from(1u32 - a.clone()));
        for k in 1..=20u32 {
            consider(Rational::from(a - 2 * k));
            consider(Rational::from(-a.clone() - 2 * k));
        }
    }
    best
}

/// Laurent coefficients b₋₁..b_{count−1} of F′/F at τ by the trapezoidal
/// rule on the circle of radius r = d/2, d the distance to the nearest other
/// singularity. The node count doubles (reusing old nodes) until two
/// resolutions agree to the working precision. Nodes come in conjugate
/// pairs, so only the upper half is evaluated.
pub fn laurent_coefficients(
    spec: &ZetaProductSpec,
    tau: &Rational,
    count: usize,
    prec: Precision,
) -> Result<LaurentExpansion> {
    if count > MAX_LAURENT_COUNT {
        return Err(Error::Domain(format!(
            "at most {MAX_LAURENT_COUNT} Laurent coefficients are supported, {count} requested"
        )));
    }
    let desc = zeta_product_descriptor(spec);
    if !tau_domain(&desc, Route::ArithmeticGeneral).in_interval(tau) {
        return Err(Error::Domain(format!(
            "tau = {} is outside {}",
            format_rational(tau),
            tau_domain(&desc, Route::ArithmeticGeneral).describe()
        )));
    }
    let distance = singularity_distance(spec, tau);
    if distance < 1e-3 {
        return Err(Error::IllConditioned {
            what: "contour radius".into(),
            distance,
        });
    }
    let radius = distance / 2.0;
    let bits = prec.bits() + GUARD_BITS;
    let eval_prec = prec.with_extra_digits(5);
    let tau_f = Float::with_val(bits, tau);
    let r = Float::with_val(bits, Rational::from_f64(radius).expect("finite"));
    let pi = Float::with_val(bits, rug::float::Constant::Pi);

    // values[j] = F′/F(τ + r e^{iθⱼ}) for θⱼ = πj/half, j = 0..=half.
    let eval = |theta: &Float| -> Result<Complex> {
        let (s, c) = theta.clone().sin_cos(Float::new(bits));
        let z = Complex::with_val(
            bits,
            (
                Float::with_val(bits, &r * &c) + &tau_f,
                Float::with_val(bits, &r * &s),
            ),
        );
        product_logderiv(spec, &z, eval_prec)
    };
    let mut half = 16usize;
    let mut values: Vec<Complex> = (0..=half)
        .into_par_iter()
        .map(|j| eval(&(Float::with_val(bits, &pi * j as u32) / half as u32)))
        .collect::<Result<_>>()?;
    let mut previous = coefficients_from_nodes(&values, half, count, &r, bits);
    let tol_digits = prec.digits() as i32 - 5;
    loop {
        if half >= 4096 {
            return Err(Error::Precision(format!(
                "Laurent quadrature did not converge with {} nodes",
                2 * half
            )));
        }
        let new_half = 2 * half;
        let odd: Vec<Complex> = (0..half)
            .into_par_iter()
            .map(|j| eval(&(Float::with_val(bits, &pi * (2 * j + 1) as u32) / new_half as u32)))
            .collect::<Result<_>>()?;
        let mut merged = Vec::with_capacity(new_half + 1);
        for j in 0..half {
            merged.push(values[j].clone());
            merged.push(odd[j].clone());
        }
        merged.push(values[half].clone());
        values = merged;
        half = new_half;
        let current = coefficients_from_nodes(&values, half, count, &r, bits);
        let scale = values
            .iter()
            .map(|v| Float::with_val(64, v.abs_ref()).to_f64())
            .fold(0.0f64, f64::max)
            .max(1.0);
        let mut worst = f64::NEG_INFINITY;
        let mut uncertainty = Vec::with_capacity(count + 1);
        for (idx, (a, b)) in current.iter().zip(&previous).enumerate() {
            let k = idx as i32 - 1;
            let diff = Float::with_val(bits, a - b).abs().to_f64();
            // Natural size of bₖ is max|g|·r^{−k}.
            let natural = scale * radius.powi(-k);
            let floor = natural * 10f64.powi(-(prec.digits() as i32));
            uncertainty.push(diff + floor);
            let rel = if diff == 0.0 {
                -(prec.digits() as f64)
            } else {
                (diff / natural).log10()
            };
            worst = worst.max(rel);
        }
        if worst <= -(tol_digits as f64) {
            let m_tau: u32 = desc
                .poles
                .iter()
                .filter(|p| p.at.re == *tau && p.at.is_real())
                .map(|p| p.order)
                .sum();
            let residue = current[0].to_f64();
            if (residue + m_tau as f64).abs() > 0.5 {
                return Err(Error::Precision(format!(
                    "Laurent residue {residue} does not match the pole order {m_tau} at tau"
                )));
            }
            return Ok(LaurentExpansion {
                tau: tau.clone(),
                coefficients: current
                    .into_iter()
                    .map(|c| Float::with_val(prec.bits(), c))
                    .collect(),
                uncertainty,
                radius_used: radius,
                nodes: (half, 2 * half),
                certified_digits: (-worst).floor().max(0.0) as u32,
            });
        }
        previous = current;
    }
}

/// bₖ = (1/N) Σⱼ g(τ + r e^{iθⱼ}) r^{−k} e^{−ikθⱼ} with N = 2·half nodes,
/// folded over conjugate pairs.
fn coefficients_from_nodes(
    values: &[Complex],
    half: usize,
    count: usize,
    r: &Float,
    bits: u32,
) -> Vec<Float> {
    let n_nodes = 2 * half;
    let pi = Float::with_val(bits, rug::float::Constant::Pi);
    let mut out = Vec::with_capacity(count + 1);
    let r_inv = Float::with_val(bits, r.recip_ref());
    for idx in 0..=count {
        let k = idx as i64 - 1;
        let mut sum = Float::new(bits);
        for (j, v) in values.iter().enumerate() {
            let angle = Float::with_val(bits, &pi * (k * j as i64)) / half as u32;
            let (s, c) = angle.sin_cos(Float::new(bits));
            // Re(v·e^{−ikθ}) = Re v·cos + Im v·sin
            let re = Float::with_val(bits, v.real() * &c) + Float::with_val(bits, v.imag() * &s);
            let weight = if j == 0 || j == half { 1u32 } else { 2u32 };
            sum += re * weight;
        }
        sum /= n_nodes as u32;
        let scale = Float::with_val(bits, (&r_inv).pow(k as i32));
        out.push(sum * scale);
    }
    out
}

/// λ_F(n, τ) for τ ∈ [σ₁, 2σ₀] by the Laurent-coefficient formula, for each
/// n of an ascending grid (n ≤ 64).
pub fn li_arithmetic_general_tau_sweep(
    spec: &ZetaProductSpec,
    n_list: &[u32],
    tau: &Rational,
    prec: Precision,
) -> Result<Vec<LiEstimate>> {
    let n_max = check_n_list(n_list)?;
    let desc = zeta_product_descriptor(spec);
    tau_domain(&desc, Route::ArithmeticGeneral).check(tau)?;
    let args = gamma_arguments(&desc, tau)?;
    let laurent = laurent_coefficients(spec, tau, n_max as usize, prec)?;
    let bits = prec.bits() + GUARD_BITS;
    let tau_f = Float::with_val(bits, tau);
    let gamma = gamma_coefficients(&args, n_max, prec)?;
    let b: Vec<Float> = laurent.coefficients[1..]
        .iter()
        .map(|c| Float::with_val(bits, c))
        .collect();
    let log_q = desc.q_f.ln(bits);
    n_list
        .iter()
        .map(|&n| {
            let poles = Float::with_val(bits, pole_terms(&desc, n, tau, PoleTermVariant::SkipTau)?);
            let (gamma_sum, gamma_abs) = binomial_combination(n, &tau_f, &gamma, bits);
            let (laurent_sum, laurent_abs) = binomial_combination(n, &tau_f, &b, bits);
            let q_term = Float::with_val(bits, &log_q * &tau_f) * n;
            let center = poles + gamma_sum + laurent_sum + q_term;
            let mut quad = 0.0;
            let mut weight = 1.0f64;
            for k in 1..=n {
                weight *= (n - k + 1) as f64 / k as f64 * tau.to_f64();
                quad += weight * laurent.uncertainty[k as usize];
            }
            let eval = slack(gamma_abs + laurent_abs + center.to_f64().abs(), prec);
            Ok(LiEstimate {
                n,
                tau: tau.clone(),
                center: Float::with_val(prec.bits(), center),
                radius: quad + eval,
                method: Route::ArithmeticGeneral,
                rule: BoundRule::Laurent,
                truncation: quad,
                perturbation: eval,
                height: None,
                prec,
                certified: false,
                report: None,
            })
        })
        .collect()
}

pub fn li_arithmetic_general_tau(
    spec: &ZetaProductSpec,
    n: u32,
    tau: &Rational,
    prec: Precision,
) -> Result<LiEstimate> {
    let mut v = li_arithmetic_general_tau_sweep(spec, &[n], tau, prec)?;
    Ok(v.pop().expect("one value"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec1234() -> ZetaProductSpec {
        ZetaProductSpec::from_integers(&[1, 2, 3, 4]).unwrap()
    }

    #[test]
    fn pole_terms_n1_tau10() {
        let desc = zeta_product_descriptor(&spec1234());
        let v = pole_terms(&desc, 1, &Rational::from(10), PoleTermVariant::AllPoles).unwrap();
        // 10·Σ 1/(10 − s) over all poles, plus 10·(1/9 + 1/14) for w ∈ {1, −4}.
        let mut expected = Rational::new();
        for s in [0, -1, -2, -3, 2, 3, 4, 5] {
            expected += Rational::from((10, 10 - s));
        }
        let first = expected.clone();
        expected += Rational::from((10, 9)) + Rational::from((10, 14));
        assert_eq!(v, expected);
        assert!((first.to_f64() - 9.85689).abs() < 1e-5);
        assert!(((v - first).to_f64() - 1.8254).abs() < 1e-4);
    }

    #[test]
    fn pole_at_zero_contributes_one() {
        let spec = ZetaProductSpec::from_integers(&[1]).unwrap();
        let desc = zeta_product_descriptor(&spec);
        // Poles {2, 0}, none paired; unpaired images w ∈ {−1, 1}.
        for n in 1..6u32 {
            let v = pole_terms(&desc, n, &Rational::from(3), PoleTermVariant::AllPoles).unwrap();
            let t = |s: i64| Rational::from(1) - Rational::from((s, s - 3)).pow(n);
            assert_eq!(v, t(2) + 1u32 + t(-1) + t(1));
        }
    }

    #[test]
    fn pole_term_errors() {
        let desc = zeta_product_descriptor(&spec1234());
        assert!(matches!(
            pole_terms(&desc, 1, &Rational::from(5), PoleTermVariant::AllPoles),
            Err(Error::DegenerateTau(_))
        ));
        assert!(pole_terms(&desc, 1, &Rational::from(5), PoleTermVariant::SkipTau).is_ok());
        assert!(matches!(
            pole_terms(&desc, 1, &Rational::from(1), PoleTermVariant::SkipTau),
            Err(Error::DegenerateTau(_))
        ));
    }

    #[test]
    fn gamma_guard() {
        let desc = zeta_product_descriptor(&spec1234());
        assert!(gamma_arguments(&desc, &Rational::from(10)).is_ok());
        assert!(matches!(
            gamma_arguments(&desc, &Rational::from(2)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn tail_bound_shape() {
        let spec = spec1234();
        let tau = Rational::from(10);
        let mut prev = 0.0;
        for n in 1..30 {
            let b = dirichlet_tail_bound(&spec, n, &tau, 100_000).unwrap();
            assert!(b > prev);
            prev = b;
        }
        let mut prev = f64::INFINITY;
        for m in [10u64, 100, 1000, 10_000, 100_000, 1_000_000] {
            let b = dirichlet_tail_bound(&spec, 5, &tau, m).unwrap();
            assert!(b < prev);
            prev = b;
        }
        assert!(dirichlet_tail_bound(&spec, 1, &Rational::from(5), 100).is_err());
    }

    #[test]
    fn laguerre_abs_bound_dominates() {
        let p = Precision::new(40).unwrap();
        for n in [0u32, 1, 5, 30] {
            for x in [0.5, 10.0, 80.0] {
                let l = crate::special::laguerre_assoc1(n, &Float::with_val(200, x), p)
                    .to_f64()
                    .abs();
                assert!(l <= laguerre_abs_bound(n, x) * (1.0 + 1e-12));
            }
        }
    }

    #[test]
    fn singularity_distance_values() {
        assert_eq!(singularity_distance(&spec1234(), &Rational::from(10)), 5.0);
        assert_eq!(singularity_distance(&spec1234(), &Rational::from(5)), 1.0);
    }

    #[test]
    fn domain_errors() {
        let p = Precision::new(40).unwrap();
        let spec = spec1234();
        let e =
            li_arithmetic_high_tau(&spec, 1, &Rational::from(3), ArithmeticConfig::default(), p)
                .unwrap_err();
        assert!(e.to_string().contains("(5, 10]"), "{e}");
        assert!(laurent_coefficients(&spec, &Rational::from(10), 65, p).is_err());
        assert!(li_arithmetic_general_tau(&spec, 1, &Rational::from(2), p).is_err());
    }
}
