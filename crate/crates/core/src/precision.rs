//! Working precision and exact parsing of user-supplied numbers.

use crate::error::{Error, Result};
use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use std::fmt;

const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Decimal working precision. At least 30 digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Precision {
    digits: u32,
}

impl Precision {
    pub const MIN_DIGITS: u32 = 30;
    /// Default for zero-sum consumers.
    pub const ZERO_SUM: Precision = Precision { digits: 50 };
    /// Default for arithmetic-formula consumers.
    pub const ARITHMETIC: Precision = Precision { digits: 160 };

    pub fn new(digits: u32) -> Result<Self> {
        if digits < Self::MIN_DIGITS {
            return Err(Error::Precision(format!(
                "precision of {digits} digits is below the minimum of {}",
                Self::MIN_DIGITS
            )));
        }
        Ok(Precision { digits })
    }

    pub fn digits(self) -> u32 {
        self.digits
    }

    /// Binary precision carrying `digits` decimal digits plus a few guard bits.
    pub fn bits(self) -> u32 {
        digits_to_bits(self.digits) + 8
    }

    pub fn with_extra_digits(self, extra: u32) -> Self {
        Precision {
            digits: self.digits + extra,
        }
    }

    /// 10^(-digits) as f64 (0 when it underflows).
    pub fn epsilon(self) -> f64 {
        10f64.powi(-(self.digits as i32))
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.digits)
    }
}

pub fn digits_to_bits(digits: u32) -> u32 {
    (digits as f64 * LOG2_10).ceil() as u32
}

/// Parses a decimal (`1.25`, `-3e-2`) or fraction (`5/4`) into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::InvalidSpec(format!("not a decimal or p/q rational: {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: Integer = p.trim().parse().map_err(|_| bad())?;
        let q: Integer = q.trim().parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(bad());
        }
        return Ok(Rational::from((p, q)));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = s[i + 1..].parse().map_err(|_| bad())?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (negative, body) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..]),
        Some(b'+') => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part
        .bytes()
        .chain(frac_part.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let mut value = Rational::from(digits.parse::<Integer>().map_err(|_| bad())?);
    let scale = exponent - frac_part.len() as i32;
    let ten = Integer::from(10);
    if scale >= 0 {
        value *= ten.pow(scale as u32);
    } else {
        value /= ten.pow((-scale) as u32);
    }
    if negative {
        value = -value;
    }
    Ok(value)
}

/// Formats a rational compactly: integers plainly, terminating decimals as
/// decimals, others as `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if *r.denom() == 1 {
        return r.numer().to_string();
    }
    let mut den = r.denom().clone();
    let mut twos = 0u32;
    let mut fives = 0u32;
    while den.is_divisible_u(2) {
        den /= 2;
        twos += 1;
    }
    while den.is_divisible_u(5) {
        den /= 5;
        fives += 1;
    }
    if den != 1 {
        return format!("{}/{}", r.numer(), r.denom());
    }
    let places = twos.max(fives);
    let scaled = Rational::from(r * Integer::from(10).pow(places));
    let n = scaled.numer().clone().abs();
    let mut s = n.to_string();
    while s.len() <= places as usize {
        s.insert(0, '0');
    }
    let split = s.len() - places as usize;
    let sign = if *r < 0 { "-" } else { "" };
    format!("{sign}{}.{}", &s[..split], &s[split..])
}

/// Formats a float with `digits` significant decimal digits.
pub fn format_float(x: &Float, digits: u32) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    x.to_string_radix(10, Some(digits as usize))
}
