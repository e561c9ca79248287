//! Criterion verdicts, the RH harness, asymptotic fits and the
//! log-derivative identity check.

use rayon::prelude::*;
use rug::{Complex, Float, Rational};
use serde::Serialize;

use crate::bounds::{combined_interval, LiEstimate};
use crate::model::ZetaProductSpec;
use crate::precision::format_rational;
use crate::special::completed_xi_logderiv;
use crate::zeros::ZeroTable;
use crate::zerosum::{li_series_sweep, SweepConfig};
use crate::{Error, Precision, Result};

/// Outcome of the τ-Li criterion over a finite range of n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status", content = "n")]
pub enum VerdictStatus {
    /// Every interval lies in [0, ∞).
    AllNonnegativeWithinRadius,
    /// A certified interval lies entirely below 0 at this n.
    NegativeCertified(u32),
    /// Neither; the smallest n whose interval reaches below 0.
    Inconclusive(u32),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionVerdict {
    pub tau: String,
    pub n_min: u32,
    pub n_max: u32,
    pub status: VerdictStatus,
}

impl std::fmt::Display for CriterionVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "tau = {}, n in [{}, {}]: ",
            self.tau, self.n_min, self.n_max
        )?;
        match self.status {
            VerdictStatus::AllNonnegativeWithinRadius => write!(f, "all_nonnegative_within_radius"),
            VerdictStatus::NegativeCertified(n) => write!(f, "negative_certified at n = {n}"),
            VerdictStatus::Inconclusive(n) => write!(f, "inconclusive at n = {n}"),
        }
    }
}

/// Applies the τ-Li criterion to a set of estimates sharing τ.
///
/// Negativity is certified only by estimates whose radius comes from a
/// certified bound; uncertified intervals below zero give `Inconclusive`.
pub fn criterion_check(estimates: &[LiEstimate]) -> Result<CriterionVerdict> {
    let first = estimates
        .first()
        .ok_or_else(|| Error::Precondition("criterion check needs at least one estimate".into()))?;
    if estimates.iter().any(|e| e.tau != first.tau) {
        return Err(Error::Precondition("estimates do not share tau".into()));
    }
    let mut sorted: Vec<&LiEstimate> = estimates.iter().collect();
    sorted.sort_by_key(|e| e.n);
    let negative = sorted.iter().find(|e| e.certified && e.upper() < 0.0);
    let undecided = sorted.iter().find(|e| !(e.lower() >= 0.0));
    let status = match (negative, undecided) {
        (Some(e), _) => VerdictStatus::NegativeCertified(e.n),
        (None, Some(e)) => VerdictStatus::Inconclusive(e.n),
        (None, None) => VerdictStatus::AllNonnegativeWithinRadius,
    };
    Ok(CriterionVerdict {
        tau: format_rational(&first.tau),
        n_min: sorted[0].n,
        n_max: sorted[sorted.len() - 1].n,
        status,
    })
}

/// Criterion check for G_a(s) = ζ(s − a) ζ(s + a) at τ = 2a + 1 over
/// n = 1..=n_max, using every ordinate in the table.
///
/// All zeros of G_a lie in the strip [−a + 1/2, a + 1/2] exactly when RH
/// holds for ζ, so a certified negative value would exhibit an off-line zero.
pub fn rh_harness(
    a: &Rational,
    table: &ZeroTable,
    n_max: u32,
    prec: Precision,
) -> Result<(CriterionVerdict, Vec<LiEstimate>)> {
    if *a <= 0 {
        return Err(Error::Precondition(format!(
            "shift a must be positive, got {}",
            format_rational(a)
        )));
    }
    if n_max == 0 {
        return Err(Error::Precondition("n_max must be at least 1".into()));
    }
    let spec = ZetaProductSpec::new(vec![a.clone()])?;
    let tau = Rational::from(a * 2u32) + 1u32;
    let grid: Vec<u32> = (1..=n_max).collect();
    let partials = li_series_sweep(
        &spec,
        table,
        &grid,
        &tau,
        table.max_height(),
        prec,
        SweepConfig::default(),
    )?;
    let estimates = partials
        .iter()
        .map(|p| combined_interval(p, &spec, table.theta0(), table.theta1()))
        .collect::<Result<Vec<_>>>()?;
    Ok((criterion_check(&estimates)?, estimates))
}

/// Comparison of λ(n, τ) with 𝒞_F·τ·n·log n.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitReport {
    pub c_f: f64,
    pub tau: f64,
    /// (n, center / (𝒞_F τ n log n)) for every n ≥ 2.
    pub ratios: Vec<(u32, f64)>,
    /// Mean ratio over n ≥ n_max / 2.
    pub tail_mean: f64,
    /// Largest deviation from the tail mean over the same range.
    pub tail_spread: f64,
    pub tail_from: u32,
    /// Sign changes of the centers in n order.
    pub sign_changes: usize,
    /// Largest d log|center| / dn between consecutive grid points.
    pub max_growth_rate: f64,
    /// n values dropped because log n = 0.
    pub skipped: Vec<u32>,
}

/// Fits centers against 𝒞_F·τ·n·log n and reports oscillation.
pub fn asymptotic_fit(estimates: &[LiEstimate], c_f: f64, tau: f64) -> Result<FitReport> {
    let points: Vec<(u32, f64)> = estimates.iter().map(|e| (e.n, e.center.to_f64())).collect();
    fit_points(&points, c_f, tau)
}

/// [`asymptotic_fit`] on bare (n, center) pairs.
pub fn fit_points(points: &[(u32, f64)], c_f: f64, tau: f64) -> Result<FitReport> {
    if !(c_f > 0.0 && tau > 0.0) {
        return Err(Error::Precondition("C_F and tau must be positive".into()));
    }
    let mut points = points.to_vec();
    points.sort_by_key(|p| p.0);
    let skipped: Vec<u32> = points.iter().filter(|p| p.0 < 2).map(|p| p.0).collect();
    let used: Vec<(u32, f64)> = points.into_iter().filter(|p| p.0 >= 2).collect();
    let n_max = used
        .last()
        .ok_or_else(|| Error::Precondition("asymptotic fit needs some n >= 2".into()))?
        .0;
    let ratios: Vec<(u32, f64)> = used
        .iter()
        .map(|&(n, c)| {
            let n_f = n as f64;
            (n, c / (c_f * tau * n_f * n_f.ln()))
        })
        .collect();
    let tail_from = n_max / 2;
    let tail: Vec<f64> = ratios
        .iter()
        .filter(|r| r.0 >= tail_from)
        .map(|r| r.1)
        .collect();
    let tail_mean = tail.iter().sum::<f64>() / tail.len() as f64;
    let tail_spread = tail
        .iter()
        .map(|r| (r - tail_mean).abs())
        .fold(0.0, f64::max);

    let signs: Vec<f64> = used.iter().map(|p| p.1).filter(|c| *c != 0.0).collect();
    let sign_changes = signs
        .windows(2)
        .filter(|w| (w[0] < 0.0) != (w[1] < 0.0))
        .count();
    let max_growth_rate = used
        .windows(2)
        .filter(|w| w[0].1 != 0.0 && w[1].1 != 0.0)
        .map(|w| (w[1].1.abs().ln() - w[0].1.abs().ln()) / (w[1].0 - w[0].0) as f64)
        .fold(0.0, f64::max);

    Ok(FitReport {
        c_f,
        tau,
        ratios,
        tail_mean,
        tail_spread,
        tail_from,
        sign_changes,
        max_growth_rate,
        skipped,
    })
}

/// Both sides of ξ′_F/ξ_F(s) = Σ* 1/(s − ρ) at one point.
#[derive(Debug, Clone)]
pub struct LogDerivReport {
    pub direct: Complex,
    pub zero_sum: Complex,
    pub residual: f64,
    /// K log T / T · (1 + |s|), for scale only; not a bound.
    pub tail_scale: f64,
    pub height: f64,
    pub zero_count: usize,
}

/// Compares ξ′_F/ξ_F(s) with the zero sum over |Im ρ| ≤ T, each zero taken
/// together with its conjugate.
pub fn verify_logderiv_identity(
    spec: &ZetaProductSpec,
    table: &ZeroTable,
    s: &Complex,
    height: f64,
    prec: Precision,
) -> Result<LogDerivReport> {
    if height > table.max_height() {
        return Err(Error::Coverage {
            requested: height,
            available: table.max_height_text().to_string(),
        });
    }
    if s.imag().to_f64().abs() > height / 2.0 {
        return Err(Error::Precondition(format!(
            "|Im s| must be at most T/2 = {}",
            height / 2.0
        )));
    }
    let bits = prec.bits() + 16;
    let guard = 10f64.powf(-(prec.digits() as f64) / 2.0);
    let count = table.count_up_to(height);
    let half = Rational::from((1, 2));
    let betas: Vec<Float> = spec
        .shifts()
        .iter()
        .flat_map(|a| [Rational::from(&half + a), Rational::from(&half - a)])
        .map(|b| Float::with_val(bits, b))
        .collect();

    // 1/(s − β − iγ) + 1/(s − β + iγ) = 2(s − β) / ((s − β)² + γ²)
    let chunk_sums: Vec<Result<Complex>> = (0..count)
        .collect::<Vec<_>>()
        .par_chunks(1024)
        .map(|idx| {
            let mut acc = Complex::new(bits);
            for &i in idx {
                let g2 = Float::with_val(bits, table.ordinate_float(i, bits).square_ref());
                for b in &betas {
                    let d = Complex::with_val(bits, s - b);
                    let den = Complex::with_val(bits, d.square_ref()) + &g2;
                    let den_abs = Float::with_val(bits, den.abs_ref()).to_f64();
                    if den_abs < guard * guard {
                        return Err(Error::IllConditioned {
                            what: "s is too close to a zero of F".into(),
                            distance: den_abs.sqrt(),
                        });
                    }
                    acc += Complex::with_val(bits, d * 2u32) / den;
                }
            }
            Ok(acc)
        })
        .collect();
    let mut zero_sum = Complex::new(bits);
    for c in chunk_sums {
        zero_sum += c?;
    }
    let direct = completed_xi_logderiv(spec, s, prec)?;
    let diff = Complex::with_val(bits, &direct - &zero_sum);
    let residual = Float::with_val(bits, diff.abs_ref()).to_f64();
    let s_abs = Float::with_val(bits, s.abs_ref()).to_f64();
    let tail_scale = spec.k() as f64 * height.ln() / height * (1.0 + s_abs);
    Ok(LogDerivReport {
        direct,
        zero_sum: Complex::with_val(prec.bits(), zero_sum),
        residual,
        tail_scale,
        height,
        zero_count: 4 * spec.k() * count,
    })
}
