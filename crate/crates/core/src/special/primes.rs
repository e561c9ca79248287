//! von Mangoldt function, prime-power sieve and the coefficients c_F(m).

use crate::model::ZetaProductSpec;
use crate::precision::Precision;
use rug::Float;

/// The prime p when m = p^k (k ≥ 1), else `None`.
pub fn von_mangoldt(m: u64) -> Option<u64> {
    if m < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            let mut r = m;
            while r % p == 0 {
                r /= p;
            }
            return (r == 1).then_some(p);
        }
        p += 1;
    }
    Some(m)
}

/// Λ(m) at `prec`.
pub fn von_mangoldt_value(m: u64, prec: Precision) -> Float {
    match von_mangoldt(m) {
        Some(p) => Float::with_val(prec.bits(), p).ln(),
        None => Float::new(prec.bits()),
    }
}

/// All prime powers m ≤ limit in ascending order, as (m, p).
pub fn prime_powers_up_to(limit: u64) -> Vec<(u64, u64)> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for p in 2..=n {
        if composite[p] {
            continue;
        }
        let mut q = p * p;
        while q <= n {
            composite[q] = true;
            q += p;
        }
        let mut pk = p as u64;
        while pk <= limit {
            out.push((pk, p as u64));
            match pk.checked_mul(p as u64) {
                Some(v) => pk = v,
                None => break,
            }
        }
    }
    out.sort_unstable();
    out
}

/// c_F(m) = Λ(m) Σᵢ (m^{αᵢ} + m^{−αᵢ}), the coefficients of −F′/F.
pub fn dirichlet_coeff(spec: &ZetaProductSpec, m: u64, prec: Precision) -> Float {
    let bits = prec.bits() + 16;
    let Some(p) = von_mangoldt(m) else {
        return Float::new(prec.bits());
    };
    let ln_m = Float::with_val(bits, m).ln();
    let mut sum = Float::new(bits);
    for a in spec.shifts() {
        let e = Float::with_val(bits, &ln_m * a).exp();
        sum += Float::with_val(bits, e.recip_ref());
        sum += e;
    }
    Float::with_val(prec.bits(), sum * Float::with_val(bits, p).ln())
}

/// The sequence c_F(2), c_F(3), …
#[derive(Debug, Clone)]
pub struct DirichletCoefficients {
    spec: ZetaProductSpec,
    prec: Precision,
    next: u64,
}

impl DirichletCoefficients {
    pub fn new(spec: &ZetaProductSpec, prec: Precision) -> Self {
        DirichletCoefficients {
            spec: spec.clone(),
            prec,
            next: 2,
        }
    }
}

impl Iterator for DirichletCoefficients {
    type Item = (u64, Float);

    fn next(&mut self) -> Option<(u64, Float)> {
        let m = self.next;
        self.next += 1;
        Some((m, dirichlet_coeff(&self.spec, m, self.prec)))
    }
}
