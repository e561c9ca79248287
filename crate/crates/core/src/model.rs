//! Descriptors for functions in the class S#♭(σ₀, σ₁), specialised to
//! products of shifted Riemann zeta functions
//! F(s) = ∏ ζ(s − αᵢ) ζ(s + αᵢ).

use crate::error::{Error, Result};
use crate::precision::{format_rational, parse_rational};
use crate::report::ValidationReport;
use rug::{Float, Rational};
use std::fmt;

/// A complex number with exact rational parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactComplex {
    pub re: Rational,
    pub im: Rational,
}

impl ExactComplex {
    pub fn real(re: Rational) -> Self {
        ExactComplex {
            re,
            im: Rational::new(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im == 0
    }

    pub fn conj(&self) -> Self {
        ExactComplex {
            re: self.re.clone(),
            im: Rational::from(-&self.im),
        }
    }
}

impl fmt::Display for ExactComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_real() {
            write!(f, "{}", format_rational(&self.re))
        } else {
            write!(
                f,
                "{}{}{}i",
                format_rational(&self.re),
                if self.im < 0 { "" } else { "+" },
                format_rational(&self.im)
            )
        }
    }
}

/// The constant Q_F of the completed function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QConstant {
    /// π raised to an integer power.
    PiPower(i32),
    /// An explicit rational value.
    Value(Rational),
}

impl QConstant {
    pub fn is_positive(&self) -> bool {
        match self {
            QConstant::PiPower(_) => true,
            QConstant::Value(v) => *v > 0,
        }
    }

    pub fn ln(&self, bits: u32) -> Float {
        match self {
            QConstant::PiPower(k) => {
                let pi = Float::with_val(bits, rug::float::Constant::Pi);
                pi.ln() * *k
            }
            QConstant::Value(v) => Float::with_val(bits, v).ln(),
        }
    }
}

/// One factor Γ(λ s + μ).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaFactor {
    pub lambda: Rational,
    pub mu: ExactComplex,
}

/// A pole of F with its order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pole {
    pub at: ExactComplex,
    pub order: u32,
}

/// Structural data of an L-function in S#♭(σ₀, σ₁).
///
/// Poles are ordered so that the first `paired_count_2m` entries form pairs
/// with s₂ⱼ₋₁ + conj(s₂ⱼ) = σ₁, followed by the self-paired pole σ₁/2 when
/// `delta_sigma1 == 1`, followed by the unpaired poles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LFunctionDescriptor {
    pub sigma0: Rational,
    pub sigma1: Rational,
    pub q_f: QConstant,
    pub omega: ExactComplex,
    pub gamma_factors: Vec<GammaFactor>,
    pub poles: Vec<Pole>,
    pub paired_count_2m: usize,
    pub delta_sigma1: u8,
}

impl LFunctionDescriptor {
    /// Index of the first unpaired pole.
    pub fn unpaired_start(&self) -> usize {
        self.paired_count_2m + self.delta_sigma1 as usize
    }

    pub fn unpaired_poles(&self) -> &[Pole] {
        &self.poles[self.unpaired_start().min(self.poles.len())..]
    }

    /// 𝒞_F = Σ λⱼ.
    pub fn c_f(&self) -> Rational {
        self.gamma_factors
            .iter()
            .fold(Rational::new(), |acc, g| acc + &g.lambda)
    }
}

/// The shift list α₁..α_K of F(s) = ∏ ζ(s − αᵢ) ζ(s + αᵢ).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaProductSpec {
    shifts: Vec<Rational>,
}

impl ZetaProductSpec {
    pub fn new(shifts: Vec<Rational>) -> Result<Self> {
        if shifts.is_empty() {
            return Err(Error::InvalidSpec("shift list is empty".into()));
        }
        if let Some(bad) = shifts.iter().find(|a| **a <= 0) {
            return Err(Error::InvalidSpec(format!(
                "shifts must be strictly positive, got {}",
                format_rational(bad)
            )));
        }
        Ok(ZetaProductSpec { shifts })
    }

    pub fn from_integers(shifts: &[i64]) -> Result<Self> {
        Self::new(shifts.iter().map(|&a| Rational::from(a)).collect())
    }

    /// Parses a comma-separated list of decimals or `p/q` rationals.
    pub fn parse_list(text: &str) -> Result<Self> {
        let shifts = text
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        Self::new(shifts)
    }

    /// Parses a `key = value` config file; the only key read is `shifts`.
    /// Blank lines and lines starting with `#` are ignored.
    pub fn from_config(text: &str) -> Result<Self> {
        let mut shifts = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
                line: i + 1,
                message: format!("expected key = value, got {line:?}"),
            })?;
            if key.trim() == "shifts" {
                shifts = Some(Self::parse_list(value).map_err(|e| Error::Parse {
                    line: i + 1,
                    message: e.to_string(),
                })?);
            }
        }
        shifts.ok_or_else(|| Error::InvalidSpec("config has no `shifts` entry".into()))
    }

    pub fn shifts(&self) -> &[Rational] {
        &self.shifts
    }

    pub fn k(&self) -> usize {
        self.shifts.len()
    }

    pub fn max_shift(&self) -> &Rational {
        self.shifts.iter().max().expect("non-empty")
    }

    pub fn max_shift_f64(&self) -> f64 {
        self.max_shift().to_f64()
    }

    pub fn shifts_f64(&self) -> Vec<f64> {
        self.shifts.iter().map(Rational::to_f64).collect()
    }

    /// σ₀ = 1 + max αᵢ.
    pub fn sigma0(&self) -> Rational {
        Rational::from(self.max_shift() + 1u32)
    }

    /// σ₁ = 1.
    pub fn sigma1(&self) -> Rational {
        Rational::from(1)
    }

    /// Largest real part of a zero of F: 1/2 + max αᵢ.
    pub fn max_zero_real_part(&self) -> Rational {
        Rational::from(self.max_shift() + Rational::from((1, 2)))
    }

    /// Whether the spec is literally the shift list given (order-insensitive).
    pub fn is_shift_set(&self, shifts: &[i64]) -> bool {
        let mut mine = self.shifts.clone();
        mine.sort();
        let mut theirs: Vec<Rational> = shifts.iter().map(|&a| Rational::from(a)).collect();
        theirs.sort();
        mine == theirs
    }
}

impl fmt::Display for ZetaProductSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.shifts.iter().map(format_rational).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Builds the descriptor of ∏ ζ(s − αᵢ) ζ(s + αᵢ).
///
/// Poles 1 ± αᵢ are merged by location (duplicate shifts raise the order).
/// Real poles z, w with z + w = 1 and equal orders are paired. For every
/// paired pole p the gamma factor whose leading pole sits at σ₁ − p gets
/// μ ↦ μ + 1, which absorbs the missing factor (σ₁ − s − p) through
/// x·Γ(x) = Γ(x + 1); the completed function is unchanged.
pub fn zeta_product_descriptor(spec: &ZetaProductSpec) -> LFunctionDescriptor {
    let one = Rational::from(1);
    let half = Rational::from((1, 2));

    // Gamma factors: for each shift, μ = +α/2 then μ = −α/2.
    let mut gamma_factors = Vec::with_capacity(2 * spec.k());
    for a in spec.shifts() {
        for sign in [1, -1] {
            gamma_factors.push(GammaFactor {
                lambda: half.clone(),
                mu: ExactComplex::real(Rational::from(a * sign) / 2),
            });
        }
    }

    // Poles 1 ± α, merged by location, in order of first appearance.
    let mut locations: Vec<(Rational, u32)> = Vec::new();
    for a in spec.shifts() {
        for p in [Rational::from(&one + a), Rational::from(&one - a)] {
            match locations.iter_mut().find(|(z, _)| *z == p) {
                Some(entry) => entry.1 += 1,
                None => locations.push((p, 1)),
            }
        }
    }

    // Pair z with w = 1 − z when both are poles of equal order.
    let mut used = vec![false; locations.len()];
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut self_paired = None;
    for i in 0..locations.len() {
        if used[i] {
            continue;
        }
        let partner = Rational::from(&one - &locations[i].0);
        if partner == locations[i].0 {
            self_paired = Some(i);
            used[i] = true;
            continue;
        }
        if let Some(j) = (i + 1..locations.len())
            .find(|&j| !used[j] && locations[j].0 == partner && locations[j].1 == locations[i].1)
        {
            used[i] = true;
            used[j] = true;
            pairs.push((i, j));
        }
    }

    let mut poles = Vec::with_capacity(locations.len());
    let mut paired_locations = Vec::new();
    for &(i, j) in &pairs {
        for k in [i, j] {
            poles.push(Pole {
                at: ExactComplex::real(locations[k].0.clone()),
                order: locations[k].1,
            });
            paired_locations.push(locations[k].0.clone());
        }
    }
    if let Some(i) = self_paired {
        poles.push(Pole {
            at: ExactComplex::real(locations[i].0.clone()),
            order: locations[i].1,
        });
        paired_locations.push(locations[i].0.clone());
    }
    for (k, (z, m)) in locations.iter().enumerate() {
        if !used[k] {
            poles.push(Pole {
                at: ExactComplex::real(z.clone()),
                order: *m,
            });
        }
    }

    // Shift gamma factors whose leading pole λ(σ₁ − p) + μ = 0 for paired p.
    let mut bump = vec![false; gamma_factors.len()];
    for p in &paired_locations {
        let target = Rational::from(&one - p);
        for (g, flag) in gamma_factors.iter().zip(bump.iter_mut()) {
            let v = Rational::from(&g.lambda * &target) + &g.mu.re;
            if v == 0 && g.mu.is_real() {
                *flag = true;
            }
        }
    }
    for (g, flag) in gamma_factors.iter_mut().zip(bump) {
        if flag {
            g.mu.re += 1;
        }
    }

    LFunctionDescriptor {
        sigma0: spec.sigma0(),
        sigma1: spec.sigma1(),
        q_f: QConstant::PiPower(-(spec.k() as i32)),
        omega: ExactComplex::real(one),
        gamma_factors,
        poles,
        paired_count_2m: 2 * pairs.len(),
        delta_sigma1: self_paired.is_some() as u8,
    }
}

/// Checks the structural invariants of a descriptor.
pub fn validate_descriptor(desc: &LFunctionDescriptor) -> ValidationReport {
    let mut report = ValidationReport::default();
    if desc.sigma1 <= 0 {
        report.push("sigma1 > 0 violated");
    }
    if desc.sigma0 < desc.sigma1 {
        report.push("sigma0 ≥ sigma1 violated");
    }
    if !desc.q_f.is_positive() {
        report.push("q_f > 0 violated");
    }
    let modulus =
        Rational::from(desc.omega.re.square_ref()) + Rational::from(desc.omega.im.square_ref());
    if modulus != 1 {
        report.push("|omega| = 1 violated");
    }
    for (j, g) in desc.gamma_factors.iter().enumerate() {
        if g.lambda <= 0 {
            report.push(format!("lambda_{} > 0 violated", j + 1));
        }
    }
    for (i, p) in desc.poles.iter().enumerate() {
        if p.order == 0 {
            report.push(format!("pole {} has order 0", i + 1));
        }
    }
    if desc.paired_count_2m % 2 != 0 {
        report.push("paired count 2M is odd");
    }
    if desc.delta_sigma1 > 1 {
        report.push("delta(sigma1) must be 0 or 1");
    }
    let n = desc.poles.len();
    if desc.paired_count_2m + desc.delta_sigma1 as usize > n {
        report.push("2M + delta(sigma1) exceeds the number of poles");
        return report;
    }
    for j in 0..desc.paired_count_2m / 2 {
        let a = &desc.poles[2 * j];
        let b = &desc.poles[2 * j + 1];
        let b_conj = b.at.conj();
        let re = Rational::from(&a.at.re + &b_conj.re);
        let im = Rational::from(&a.at.im + &b_conj.im);
        if re != desc.sigma1 || im != 0 {
            report.push(format!(
                "pairing law violated: s{} + conj(s{}) = {} + {}i ≠ sigma1",
                2 * j + 1,
                2 * j + 2,
                format_rational(&re),
                format_rational(&im)
            ));
        }
    }
    if desc.delta_sigma1 == 1 {
        let p = &desc.poles[desc.paired_count_2m];
        let half = Rational::from(&desc.sigma1 / 2u32);
        if p.at.re != half || p.at.im != 0 {
            report.push("pairing law violated: self-paired pole is not sigma1/2");
        }
    }
    report
}

/// Which computation route a τ-domain refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    ZeroSum,
    ArithmeticHighTau,
    ArithmeticGeneral,
}

/// Admissible τ for a route: an interval (left end open for the high-τ
/// route) minus finitely many excluded points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauValidity {
    pub route: Route,
    pub lower: Rational,
    pub upper: Rational,
    pub lower_open: bool,
    pub excluded: Vec<Rational>,
}

impl TauValidity {
    pub fn in_interval(&self, tau: &Rational) -> bool {
        let above = if self.lower_open {
            *tau > self.lower
        } else {
            *tau >= self.lower
        };
        above && *tau <= self.upper
    }

    pub fn contains(&self, tau: &Rational) -> bool {
        self.in_interval(tau) && !self.excluded.contains(tau)
    }

    /// Excluded points lying inside the interval.
    pub fn excluded_in_range(&self) -> Vec<Rational> {
        self.excluded
            .iter()
            .filter(|x| self.in_interval(x))
            .cloned()
            .collect()
    }

    pub fn describe(&self) -> String {
        let open = if self.lower_open { "(" } else { "[" };
        let mut s = format!(
            "{open}{}, {}]",
            format_rational(&self.lower),
            format_rational(&self.upper)
        );
        let ex = self.excluded_in_range();
        if !ex.is_empty() {
            let parts: Vec<String> = ex.iter().map(format_rational).collect();
            s.push_str(&format!(" \\ {{{}}}", parts.join(", ")));
        }
        s
    }

    /// Error unless τ is admissible.
    pub fn check(&self, tau: &Rational) -> Result<()> {
        if self.contains(tau) {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "tau = {} is outside the valid interval {} for the {:?} route",
                format_rational(tau),
                self.describe(),
                self.route
            )))
        }
    }
}

/// The admissible τ-range for a route.
pub fn tau_domain(desc: &LFunctionDescriptor, route: Route) -> TauValidity {
    let upper = Rational::from(&desc.sigma0 * 2u32);
    match route {
        Route::ZeroSum => TauValidity {
            route,
            lower: desc.sigma1.clone(),
            upper,
            lower_open: false,
            excluded: Vec::new(),
        },
        Route::ArithmeticHighTau => TauValidity {
            route,
            lower: desc.sigma0.clone(),
            upper,
            lower_open: true,
            excluded: Vec::new(),
        },
        Route::ArithmeticGeneral => {
            let mut excluded: Vec<Rational> = desc
                .unpaired_poles()
                .iter()
                .filter(|p| p.at.is_real())
                .map(|p| Rational::from(&desc.sigma1 - &p.at.re))
                .collect();
            excluded.dedup();
            TauValidity {
                route,
                lower: desc.sigma1.clone(),
                upper,
                lower_open: false,
                excluded,
            }
        }
    }
}
