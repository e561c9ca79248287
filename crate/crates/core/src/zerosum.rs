//! Truncated zero sums λ*_F(n, τ, T) = Σ_{|Im ρ| ≤ T} (1 − (ρ/(ρ − τ))ⁿ).
//!
//! Zeros come in conjugate pairs, so each pair contributes 2·Re(1 − rⁿ) with
//! r = ρ/(ρ − τ) taken at the zero in the upper half plane. Ordinates are
//! split into fixed chunks; each chunk is summed sequentially with Neumaier
//! compensation and chunk results are combined by an ordered pairwise tree,
//! so the result does not depend on the number of worker threads.

use crate::error::{Error, Result};
use crate::model::ZetaProductSpec;
use crate::precision::{format_rational, Precision};
use crate::special::completed_xi_logderiv;
use crate::zeros::{enumerate_f_zeros, FZeroStream, ZeroTable};
use rayon::prelude::*;
use rug::ops::NegAssign;
use rug::{Assign, Complex, Float, Integer, Rational};

/// Default chunk size, in conjugate pairs.
pub const DEFAULT_CHUNK_PAIRS: usize = 4096;

/// Guard bits on top of the requested precision.
const GUARD_BITS: u32 = 32;

/// One truncated zero sum.
#[derive(Debug, Clone)]
pub struct LiPartial {
    pub n: u32,
    pub tau: Rational,
    pub height: f64,
    pub value: Float,
    pub prec: Precision,
    /// Number of zeros of F summed (both halves of each conjugate pair).
    pub zero_count_used: usize,
    /// Bound on the floating-point error of the summation.
    pub rounding_slack: f64,
    /// Precision at which ordinates were rounded before use.
    pub ordinate_bits: u32,
}

/// Parallelism and chunking of a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepConfig {
    /// Worker threads; 0 lets the pool choose.
    pub workers: usize,
    /// Conjugate pairs per chunk.
    pub chunk_pairs: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            workers: 0,
            chunk_pairs: DEFAULT_CHUNK_PAIRS,
        }
    }
}

#[derive(Clone)]
struct Neumaier {
    sum: Float,
    comp: Float,
    scratch: Float,
    diff: Float,
}

impl Neumaier {
    fn new(bits: u32) -> Self {
        Neumaier {
            sum: Float::new(bits),
            comp: Float::new(bits),
            scratch: Float::new(bits),
            diff: Float::new(bits),
        }
    }

    fn add(&mut self, x: &Float) {
        self.scratch.assign(&self.sum + x);
        if self.sum.cmp_abs(x).map_or(true, |o| o.is_ge()) {
            self.diff.assign(&self.sum - &self.scratch);
            self.diff += x;
        } else {
            self.diff.assign(x - &self.scratch);
            self.diff += &self.sum;
        }
        self.comp += &self.diff;
        std::mem::swap(&mut self.sum, &mut self.scratch);
    }

    fn total(self) -> Float {
        self.sum + self.comp
    }
}

fn check_grid(n_list: &[u32]) -> Result<()> {
    if n_list.is_empty() {
        return Err(Error::InvalidSpec("empty n grid".into()));
    }
    if n_list[0] == 0 {
        return Err(Error::InvalidSpec("n must be at least 1".into()));
    }
    if n_list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidSpec(
            "n grid must be strictly ascending".into(),
        ));
    }
    Ok(())
}

/// Only τ ∈ Z(F) is excluded here; the natural interval [σ₁, 2σ₀] is a
/// caller-side policy (see `model::tau_domain`).
fn check_inputs(spec: &ZetaProductSpec, table: &ZeroTable, height: f64) -> Result<FZeroStream> {
    enumerate_f_zeros(table, spec, height)
}

/// Degenerate-τ guard: τ may not be a zero of F (within 10^(−digits/2)).
struct DistanceGuard {
    limit: f64,
}

impl DistanceGuard {
    fn new(prec: Precision) -> Self {
        DistanceGuard {
            limit: 10f64.powf(-(prec.digits() as f64) / 2.0),
        }
    }

    fn check(&self, diff: &Complex, tau: &Rational) -> Result<()> {
        let d = diff.real().to_f64().hypot(diff.imag().to_f64());
        if d < self.limit {
            return Err(Error::DegenerateTau(format!(
                "tau = {} lies within {d:e} of a zero of F",
                format_rational(tau)
            )));
        }
        Ok(())
    }
}

/// Yields ρ for each zero of a stream, parsing every ordinate once.
struct ZeroValues<'a> {
    stream: FZeroStream,
    table: &'a ZeroTable,
    bits: u32,
    cached: Option<(usize, Float)>,
}

impl<'a> ZeroValues<'a> {
    fn new(stream: FZeroStream, table: &'a ZeroTable, bits: u32) -> Self {
        ZeroValues {
            stream,
            table,
            bits,
            cached: None,
        }
    }
}

impl Iterator for ZeroValues<'_> {
    type Item = (bool, Complex);

    fn next(&mut self) -> Option<(bool, Complex)> {
        let zero = self.stream.next()?;
        if self
            .cached
            .as_ref()
            .map_or(true, |(i, _)| *i != zero.ordinate)
        {
            self.cached = Some((
                zero.ordinate,
                self.table.ordinate_float(zero.ordinate, self.bits),
            ));
        }
        let t = &self.cached.as_ref().expect("just set").1;
        let im = if zero.upper {
            t.clone()
        } else {
            Float::with_val(self.bits, -t)
        };
        let rho = Complex::with_val(self.bits, (Float::with_val(self.bits, &zero.re), im));
        Some((zero.upper, rho))
    }
}

/// z^e by binary powering.
fn pow_u32(z: &Complex, e: u32) -> Complex {
    let bits = z.prec().0;
    let mut result = Complex::with_val(bits, 1);
    let mut base = z.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result *= &base;
        }
        e >>= 1;
        if e > 0 {
            base.square_mut();
        }
    }
    result
}

struct ChunkSums {
    sums: Vec<Float>,
    abs_sums: Vec<f64>,
}

fn sum_chunk(
    stream: FZeroStream,
    table: &ZeroTable,
    tau: &Rational,
    n_list: &[u32],
    bits: u32,
    prec: Precision,
) -> Result<ChunkSums> {
    let tau_f = Float::with_val(bits, tau);
    let mut acc: Vec<Neumaier> = vec![Neumaier::new(bits); n_list.len()];
    let mut abs_sums = vec![0.0f64; n_list.len()];
    let mut step_cache: Vec<(u32, Complex)> = Vec::new();
    let mut term = Float::new(bits);
    let guard = DistanceGuard::new(prec);
    for (_, rho) in ZeroValues::new(stream, table, bits).filter(|z| z.0) {
        let diff = Complex::with_val(bits, &rho - &tau_f);
        guard.check(&diff, tau)?;
        let r = Complex::with_val(bits, &rho / &diff);
        step_cache.clear();
        let mut power = pow_u32(&r, n_list[0]);
        for (i, &n) in n_list.iter().enumerate() {
            if i > 0 {
                let delta = n - n_list[i - 1];
                let step = match step_cache.iter().find(|(d, _)| *d == delta) {
                    Some((_, s)) => s,
                    None => {
                        step_cache.push((delta, pow_u32(&r, delta)));
                        &step_cache.last().expect("just pushed").1
                    }
                };
                power *= step;
            }
            // 2·Re(1 − rⁿ)
            term.assign(power.real() * 2u32);
            term.neg_assign();
            term += 2u32;
            abs_sums[i] += term.to_f64().abs();
            acc[i].add(&term);
        }
    }
    Ok(ChunkSums {
        sums: acc.into_iter().map(Neumaier::total).collect(),
        abs_sums,
    })
}

fn tree_reduce(mut parts: Vec<ChunkSums>, len: usize, bits: u32) -> ChunkSums {
    if parts.is_empty() {
        return ChunkSums {
            sums: vec![Float::new(bits); len],
            abs_sums: vec![0.0; len],
        };
    }
    while parts.len() > 1 {
        let mut next = Vec::with_capacity(parts.len().div_ceil(2));
        let mut it = parts.into_iter();
        while let Some(mut a) = it.next() {
            if let Some(b) = it.next() {
                for (x, y) in a.sums.iter_mut().zip(b.sums) {
                    *x += y;
                }
                for (x, y) in a.abs_sums.iter_mut().zip(b.abs_sums) {
                    *x += y;
                }
            }
            next.push(a);
        }
        parts = next;
    }
    parts.pop().expect("one part")
}

fn build_pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidSpec(format!("cannot start worker pool: {e}")))
}

/// λ*_F(n, τ, T) for every n in an ascending grid. Each ratio r is computed
/// once per zero and its powers advanced by multiplication along the grid.
pub fn li_series_sweep(
    spec: &ZetaProductSpec,
    table: &ZeroTable,
    n_list: &[u32],
    tau: &Rational,
    height: f64,
    prec: Precision,
    config: SweepConfig,
) -> Result<Vec<LiPartial>> {
    check_grid(n_list)?;
    let stream = check_inputs(spec, table, height)?;
    let bits = prec.bits() + GUARD_BITS;
    let per_chunk = (config.chunk_pairs / (2 * spec.k())).max(1);
    let chunks = stream.chunks(per_chunk);
    let zero_count = stream.total();
    let pool = build_pool(config.workers)?;
    let parts: Vec<ChunkSums> = pool.install(|| {
        chunks
            .into_par_iter()
            .map(|c| sum_chunk(c, table, tau, n_list, bits, prec))
            .collect::<Result<Vec<_>>>()
    })?;
    let total = tree_reduce(parts, n_list.len(), bits);
    let unit = 2f64.powi(-(bits as i32) + 2);
    Ok(n_list
        .iter()
        .zip(total.sums)
        .zip(total.abs_sums)
        .map(|((&n, value), abs_sum)| LiPartial {
            n,
            tau: tau.clone(),
            height,
            value: Float::with_val(prec.bits(), value),
            prec,
            zero_count_used: zero_count,
            rounding_slack: abs_sum * (n as f64 + 10.0) * unit,
            ordinate_bits: bits,
        })
        .collect())
}

/// λ*_F(n, τ, T) for a single n.
pub fn li_partial_sum(
    spec: &ZetaProductSpec,
    table: &ZeroTable,
    n: u32,
    tau: &Rational,
    height: f64,
    prec: Precision,
) -> Result<LiPartial> {
    let mut v = li_series_sweep(spec, table, &[n], tau, height, prec, SweepConfig::default())?;
    Ok(v.pop().expect("one value"))
}

/// Reference sum over every zero separately, without conjugate pairing,
/// powers and ratios computed afresh for each zero. Returns the sum and the
/// accumulated imaginary part, which cancels only through the conjugate
/// symmetry of the zero set.
pub fn li_partial_sum_unpaired(
    spec: &ZetaProductSpec,
    table: &ZeroTable,
    n: u32,
    tau: &Rational,
    height: f64,
    prec: Precision,
) -> Result<(Float, Float)> {
    let stream = check_inputs(spec, table, height)?;
    let bits = prec.bits() + GUARD_BITS;
    let tau_f = Float::with_val(bits, tau);
    let mut sum = Complex::new(bits);
    let guard = DistanceGuard::new(prec);
    for (_, rho) in ZeroValues::new(stream, table, bits) {
        let diff = Complex::with_val(bits, &rho - &tau_f);
        guard.check(&diff, tau)?;
        let r = Complex::with_val(bits, &rho / &diff);
        sum += Complex::with_val(bits, 1) - pow_u32(&r, n);
    }
    let (re, im) = sum.into_real_imag();
    Ok((re, im))
}

/// Value used for ξ′_F/ξ_F(0) in the binomial expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XiAtZero {
    /// Direct evaluation of the completed log-derivative.
    Exact,
    /// −Σ_{|Im ρ| ≤ T} 1/ρ over the same truncated zero set, which makes the
    /// expansion an algebraic identity with the direct sum.
    TruncatedSurrogate,
}

/// λ_F(n, τ) by the expansion
/// nτ·ξ′_F/ξ_F(0) + nτ²·Σ 1/(ρ(τ − ρ)) − Σ_{k=2}^{n} C(n,k) Σ (τ/(ρ − τ))^k,
/// each zero sum truncated at T. Not error-certified; a validator for the
/// direct route. Evaluated at 20 extra digits.
pub fn li_partial_sum_binomial(
    spec: &ZetaProductSpec,
    table: &ZeroTable,
    n: u32,
    tau: &Rational,
    height: f64,
    prec: Precision,
    xi_at_zero: XiAtZero,
) -> Result<LiPartial> {
    if n == 0 {
        return Err(Error::InvalidSpec("n must be at least 1".into()));
    }
    let stream = check_inputs(spec, table, height)?;
    let zero_count = stream.total();
    let work = prec.with_extra_digits(20);
    let bits = work.bits() + GUARD_BITS;
    let tau_f = Float::with_val(bits, tau);
    // power_sums[k] = Σ (τ/(ρ − τ))^k for k = 2..n, both halves of each pair.
    let mut power_sums = vec![Float::new(bits); n as usize + 1];
    let mut inv_rho = Float::new(bits);
    let mut mixed = Float::new(bits);
    let guard = DistanceGuard::new(prec);
    for (_, rho) in ZeroValues::new(stream, table, bits).filter(|z| z.0) {
        let diff = Complex::with_val(bits, &rho - &tau_f);
        guard.check(&diff, tau)?;
        let u = Complex::with_val(bits, &tau_f / &diff);
        let mut p = u.clone();
        for k in 2..=n as usize {
            p *= &u;
            power_sums[k] += Float::with_val(bits, p.real() * 2u32);
        }
        let recip = Complex::with_val(bits, rho.recip_ref());
        inv_rho += Float::with_val(bits, recip.real() * 2u32);
        // 1/(ρ(τ − ρ)) = −1/(ρ·diff)
        let m = Complex::with_val(bits, &rho * &diff).recip();
        mixed -= Float::with_val(bits, m.real() * 2u32);
    }
    let xi0 = match xi_at_zero {
        XiAtZero::Exact => {
            let v = completed_xi_logderiv(spec, &Complex::with_val(bits, 0), work)?;
            Float::with_val(bits, v.real())
        }
        XiAtZero::TruncatedSurrogate => -inv_rho,
    };
    let n_tau = Float::with_val(bits, &tau_f * n);
    let mut value = Float::with_val(bits, &n_tau * &xi0);
    value += Float::with_val(bits, &n_tau * &tau_f) * &mixed;
    let mut binom = Integer::from(n);
    for (k, s) in power_sums.iter().enumerate().skip(2) {
        let k = k as u32;
        binom *= n - k + 1;
        binom /= k;
        value -= Float::with_val(bits, s * &binom);
    }
    Ok(LiPartial {
        n,
        tau: tau.clone(),
        height,
        value: Float::with_val(prec.bits(), value),
        prec,
        zero_count_used: zero_count,
        rounding_slack: 0.0,
        ordinate_bits: bits,
    })
}
