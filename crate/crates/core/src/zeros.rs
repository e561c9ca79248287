//! Tables of Riemann zeta zero ordinates and the zeros of F derived from them.

use crate::error::{Error, Result};
use crate::model::ZetaProductSpec;
use crate::report::ValidationReport;
use rug::float::Round;
use rug::{Complex, Float, Rational};
use std::io::BufRead;
use std::ops::Range;

/// An error bound on ordinates, kept as the decimal text it was given in.
///
/// Values below the f64 range (such as 1e-1000) stay meaningful: `upper()`
/// rounds upward so bounds built from it remain valid, and `log10()` keeps
/// the magnitude for precondition checks.
#[derive(Debug, Clone, PartialEq)]
pub struct Theta {
    text: String,
    upper: f64,
    log10: f64,
}

impl Theta {
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        let v = Float::parse(t)
            .map(|p| Float::with_val(64, p))
            .map_err(|_| Error::InvalidSpec(format!("theta is not a number: {text:?}")))?;
        if v <= 0 || v >= 1 {
            return Err(Error::InvalidSpec(format!(
                "theta must lie in (0, 1), got {t}"
            )));
        }
        let upper = v.to_f64_round(Round::Up);
        let log10 = Float::with_val(64, v.log10_ref()).to_f64();
        Ok(Theta {
            text: t.to_string(),
            upper,
            log10,
        })
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    /// The bound as f64, rounded up.
    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub fn log10(&self) -> f64 {
        self.log10
    }

    /// Whether this bound is at most 10^e.
    pub fn at_most_pow10(&self, e: f64) -> bool {
        self.log10 <= e + 1e-12
    }
}

/// Default bulk ordinate error bound.
pub const DEFAULT_THETA0: &str = "4e-9";
/// Default error bound for the high-precision head.
pub const DEFAULT_THETA1: &str = "1e-1000";
/// Default number of head entries carrying the head error bound.
pub const DEFAULT_TIER_BOUNDARY: usize = 9;

/// Ascending positive ordinates of zeta zeros 1/2 + it, kept as exact decimal
/// text with an f64 shadow for indexing.
#[derive(Debug, Clone)]
pub struct ZeroTable {
    text: String,
    ends: Vec<u32>,
    values: Vec<f64>,
    tier_boundary: usize,
    theta0: Theta,
    theta1: Theta,
}

fn valid_decimal(token: &str) -> bool {
    let (mantissa, exponent) = match token.find(['e', 'E']) {
        Some(i) => (&token[..i], Some(&token[i + 1..])),
        None => (token, None),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let digits_ok = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
    let exp_ok = exponent.map_or(true, |e| {
        let e = e.strip_prefix(['+', '-']).unwrap_or(e);
        !e.is_empty() && digits_ok(e)
    });
    !(int_part.is_empty() && frac_part.is_empty())
        && digits_ok(int_part)
        && digits_ok(frac_part)
        && exp_ok
}

/// Parses whitespace-separated ascending decimal ordinates.
pub fn parse_zero_table<R: BufRead>(
    reader: R,
    theta0: Theta,
    theta1: Theta,
    tier_boundary: usize,
) -> Result<ZeroTable> {
    if theta1.log10() > theta0.log10() {
        return Err(Error::InvalidSpec(format!(
            "theta1 = {} exceeds theta0 = {}",
            theta1.text(),
            theta0.text()
        )));
    }
    let mut text = String::new();
    let mut ends = Vec::new();
    let mut values: Vec<f64> = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        for token in line.split_whitespace() {
            if !valid_decimal(token) {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("not a decimal ordinate: {token:?}"),
                });
            }
            let v: f64 = token.parse().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("not a decimal ordinate: {token:?}"),
            })?;
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("ordinate must be positive: {token}"),
                });
            }
            if let Some(&prev) = values.last() {
                if v <= prev {
                    return Err(Error::Parse {
                        line: lineno,
                        message: format!("non-monotone sequence: {token} does not exceed {prev}"),
                    });
                }
            }
            text.push_str(token);
            ends.push(text.len() as u32);
            values.push(v);
        }
    }
    if values.is_empty() {
        return Err(Error::EmptyTable);
    }
    Ok(ZeroTable {
        text,
        ends,
        values,
        tier_boundary,
        theta0,
        theta1,
    })
}

/// Opens and parses a table file.
pub fn load_zero_table(
    path: &std::path::Path,
    theta0: Theta,
    theta1: Theta,
    tier_boundary: usize,
) -> Result<ZeroTable> {
    let file = std::fs::File::open(path)?;
    parse_zero_table(std::io::BufReader::new(file), theta0, theta1, tier_boundary)
}

impl ZeroTable {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn ordinate_text(&self, i: usize) -> &str {
        let start = if i == 0 { 0 } else { self.ends[i - 1] as usize };
        &self.text[start..self.ends[i] as usize]
    }

    pub fn ordinate_f64(&self, i: usize) -> f64 {
        self.values[i]
    }

    /// The i-th ordinate rounded once to `bits` of precision.
    pub fn ordinate_float(&self, i: usize, bits: u32) -> Float {
        Float::with_val(
            bits,
            Float::parse(self.ordinate_text(i)).expect("validated at parse"),
        )
    }

    /// Largest ordinate, as f64.
    pub fn max_height(&self) -> f64 {
        *self.values.last().expect("non-empty")
    }

    /// Largest ordinate, as its source text.
    pub fn max_height_text(&self) -> &str {
        self.ordinate_text(self.len() - 1)
    }

    pub fn tier_boundary(&self) -> usize {
        self.tier_boundary.min(self.len())
    }

    pub fn theta0(&self) -> &Theta {
        &self.theta0
    }

    pub fn theta1(&self) -> &Theta {
        &self.theta1
    }

    /// Number of ordinates t ≤ height.
    pub fn count_up_to(&self, height: f64) -> usize {
        self.values.partition_point(|&v| v <= height)
    }

    /// The first `count` ordinates as a table of their own.
    pub fn prefix(&self, count: usize) -> Result<ZeroTable> {
        if count == 0 {
            return Err(Error::EmptyTable);
        }
        let count = count.min(self.len());
        let end = self.ends[count - 1] as usize;
        Ok(ZeroTable {
            text: self.text[..end].to_string(),
            ends: self.ends[..count].to_vec(),
            values: self.values[..count].to_vec(),
            tier_boundary: self.tier_boundary,
            theta0: self.theta0.clone(),
            theta1: self.theta1.clone(),
        })
    }

    /// Replaces the leading entries by a more precise head table. Each head
    /// ordinate must agree with the entry it replaces to within θ₀; the tier
    /// boundary becomes the head length.
    pub fn with_head(&self, head: &ZeroTable) -> Result<ZeroTable> {
        if head.len() > self.len() {
            return Err(Error::InvalidSpec(format!(
                "head table has {} entries but the bulk table only {}",
                head.len(),
                self.len()
            )));
        }
        let theta0 = Float::with_val(64, Float::parse(self.theta0.text()).expect("validated"));
        let mut text = String::with_capacity(self.text.len() + head.text.len());
        let mut ends = Vec::with_capacity(self.len());
        let mut values = Vec::with_capacity(self.len());
        for i in 0..self.len() {
            let token = if i < head.len() {
                let bits = 64 + 4 * head.ordinate_text(i).len() as u32;
                let diff = Float::with_val(
                    bits,
                    head.ordinate_float(i, bits) - self.ordinate_float(i, bits),
                );
                if diff.abs() > theta0 {
                    return Err(Error::InvalidSpec(format!(
                        "head ordinate {} ({}) disagrees with bulk entry {} beyond theta0",
                        i + 1,
                        head.ordinate_f64(i),
                        self.ordinate_text(i)
                    )));
                }
                values.push(head.values[i]);
                head.ordinate_text(i)
            } else {
                values.push(self.values[i]);
                self.ordinate_text(i)
            };
            text.push_str(token);
            ends.push(text.len() as u32);
        }
        Ok(ZeroTable {
            text,
            ends,
            values,
            tier_boundary: head.len(),
            theta0: self.theta0.clone(),
            theta1: self.theta1.clone(),
        })
    }

    /// Writes the table back out, one ordinate per line, digits as ingested.
    pub fn write_to<W: std::io::Write>(&self, mut w: W) -> std::io::Result<()> {
        for i in 0..self.len() {
            writeln!(w, "{}", self.ordinate_text(i))?;
        }
        Ok(())
    }
}

/// Main term of the Riemann–von Mangoldt formula, t/2π·log(t/2π) − t/2π.
pub fn riemann_von_mangoldt_main(t: f64) -> f64 {
    let x = t / (2.0 * std::f64::consts::PI);
    x * x.ln() - x
}

/// Checks monotonicity, the zero count against the Riemann–von Mangoldt
/// formula at every ordinate t ≥ 319, and the first-ordinate window.
pub fn validate_table(table: &ZeroTable) -> ValidationReport {
    let mut report = ValidationReport::default();
    if table.is_empty() {
        report.push("table is empty");
        return report;
    }
    for i in 1..table.len() {
        if table.values[i] <= table.values[i - 1] {
            report.push(format!("not strictly increasing at entry {}", i + 1));
            break;
        }
    }
    for (i, &t) in table.values.iter().enumerate() {
        if t < 319.0 {
            continue;
        }
        let main = riemann_von_mangoldt_main(t);
        let allowed = 8.9 * t.ln();
        // Count just below t is i, at t it is i + 1.
        let worst = ((i + 1) as f64 - main).abs().max((i as f64 - main).abs());
        if worst > allowed {
            report.push(format!(
                "zero count {} at t = {} deviates from the Riemann–von Mangoldt main term {:.3} by more than 8.9 log t = {:.3}",
                i + 1,
                table.ordinate_text(i),
                main,
                allowed
            ));
            break;
        }
    }
    let first = table.values[0];
    if !(first > 14.13 && first < 14.14) {
        report.push(format!(
            "first ordinate {} outside the window (14.13, 14.14)",
            table.ordinate_text(0)
        ));
    }
    report
}

/// A zero of F: real part 1/2 ± αᵢ and ordinate ±t.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FZero {
    pub re: Rational,
    /// Index into the zero table.
    pub ordinate: usize,
    /// Whether the imaginary part is +t (else −t).
    pub upper: bool,
}

impl FZero {
    pub fn to_complex(&self, table: &ZeroTable, bits: u32) -> Complex {
        let t = table.ordinate_float(self.ordinate, bits);
        let im = if self.upper { t } else { -t };
        Complex::with_val(bits, (Float::with_val(bits, &self.re), im))
    }
}

/// The zeros of F with |Im ρ| ≤ T in order: ascending t, then shift index,
/// then (1/2 + α) + it, (1/2 + α) − it, (1/2 − α) + it, (1/2 − α) − it.
#[derive(Debug, Clone)]
pub struct FZeroStream {
    real_parts: Vec<[Rational; 2]>,
    ordinates: Range<usize>,
    next: usize,
}

/// Enumerates the zeros of F(s) = ∏ ζ(s − αᵢ) ζ(s + αᵢ) up to height T.
pub fn enumerate_f_zeros(
    table: &ZeroTable,
    spec: &ZetaProductSpec,
    height: f64,
) -> Result<FZeroStream> {
    if height > table.max_height() {
        return Err(Error::Coverage {
            requested: height,
            available: table.max_height_text().to_string(),
        });
    }
    let count = table.count_up_to(height);
    Ok(FZeroStream::new(spec, 0..count))
}

impl FZeroStream {
    pub fn new(spec: &ZetaProductSpec, ordinates: Range<usize>) -> Self {
        let half = Rational::from((1, 2));
        let real_parts = spec
            .shifts()
            .iter()
            .map(|a| [Rational::from(&half + a), Rational::from(&half - a)])
            .collect();
        FZeroStream {
            real_parts,
            ordinates,
            next: 0,
        }
    }

    /// Ordinate indices covered.
    pub fn ordinates(&self) -> Range<usize> {
        self.ordinates.clone()
    }

    fn per_ordinate(&self) -> usize {
        4 * self.real_parts.len()
    }

    /// Total zeros in the stream: 4K per ordinate.
    pub fn total(&self) -> usize {
        self.per_ordinate() * self.ordinates.len()
    }

    /// Splits into disjoint ordinate ranges of at most `chunk` ordinates.
    pub fn chunks(&self, chunk: usize) -> Vec<FZeroStream> {
        let chunk = chunk.max(1);
        let mut out = Vec::new();
        let mut start = self.ordinates.start;
        while start < self.ordinates.end {
            let end = (start + chunk).min(self.ordinates.end);
            out.push(FZeroStream {
                real_parts: self.real_parts.clone(),
                ordinates: start..end,
                next: 0,
            });
            start = end;
        }
        out
    }
}

impl Iterator for FZeroStream {
    type Item = FZero;

    fn next(&mut self) -> Option<FZero> {
        if self.next >= self.total() {
            return None;
        }
        let k = self.next;
        self.next += 1;
        let per = self.per_ordinate();
        let ordinate = self.ordinates.start + k / per;
        let within = k % per;
        let shift = within / 4;
        let which = within % 4;
        Some(FZero {
            re: self.real_parts[shift][which / 2].clone(),
            ordinate,
            upper: which % 2 == 0,
        })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = self.total() - self.next;
        (left, Some(left))
    }
}

impl ExactSizeIterator for FZeroStream {}

#[cfg(test)]
mod tests {
    use super::*;

    fn thetas() -> (Theta, Theta) {
        (
            Theta::parse(DEFAULT_THETA0).unwrap(),
            Theta::parse(DEFAULT_THETA1).unwrap(),
        )
    }

    fn parse(text: &str) -> Result<ZeroTable> {
        let (a, b) = thetas();
        parse_zero_table(text.as_bytes(), a, b, DEFAULT_TIER_BOUNDARY)
    }

    #[test]
    fn parses_two_lines() {
        let t = parse("14.134725141734693\n21.022039638771554\n").unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.ordinate_text(1), "21.022039638771554");
        assert!((t.max_height() - 21.022).abs() < 1e-3);
    }

    #[test]
    fn keeps_all_digits() {
        let long = "14.1347251417346937904572519835624702707842571156992431756855674601499634298092567649490103931715610127792029715487974367661426914698822545825053632394471377804133812372059705496219558658602005555667258365";
        let t = parse(long).unwrap();
        assert_eq!(t.ordinate_text(0), long);
        let f = t.ordinate_float(0, 700);
        let back = f.to_string_radix(10, Some(long.len() - 1));
        assert!(back.starts_with(
            "14.1347251417346937904572519835624702707842571156992431756855674601499634298"
        ));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        match parse("abc") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("{other:?}"),
        }
        match parse("14.13\n21.02\n20.0\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("\n\n"), Err(Error::EmptyTable)));
        assert!(parse("1e5 2e5").is_ok());
        assert!(parse("1.2.3").is_err());
    }

    #[test]
    fn theta_handles_tiny_values() {
        let t = Theta::parse("1e-1000").unwrap();
        assert!(t.upper() > 0.0);
        assert!((t.log10() + 1000.0).abs() < 1e-9);
        assert!(t.at_most_pow10(-997.0));
        assert!(Theta::parse("2").is_err());
    }

    #[test]
    fn first_ordinate_window() {
        let t = parse("13.9\n21.0").unwrap();
        let r = validate_table(&t);
        assert!(r.violations().iter().any(|v| v.contains("first ordinate")));
    }

    #[test]
    fn enumerates_f_zeros() {
        let t = parse("14.134725\n21.022039").unwrap();
        let spec = ZetaProductSpec::from_integers(&[1]).unwrap();
        let zs: Vec<FZero> = enumerate_f_zeros(&t, &spec, 20.0).unwrap().collect();
        assert_eq!(zs.len(), 4);
        assert_eq!(zs[0].re, Rational::from((3, 2)));
        assert!(zs[0].upper && !zs[1].upper);
        assert_eq!(zs[2].re, Rational::from((-1, 2)));
        let spec4 = ZetaProductSpec::from_integers(&[1, 2, 3, 4]).unwrap();
        assert_eq!(enumerate_f_zeros(&t, &spec4, 20.0).unwrap().count(), 16);
        assert_eq!(enumerate_f_zeros(&t, &spec4, 10.0).unwrap().count(), 0);
        match enumerate_f_zeros(&t, &spec4, 30.0) {
            Err(Error::Coverage { available, .. }) => assert_eq!(available, "21.022039"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn chunks_partition_the_stream() {
        let t = parse("14.1 21.0 25.0 30.4 32.9").unwrap();
        let spec = ZetaProductSpec::from_integers(&[1, 2]).unwrap();
        let s = enumerate_f_zeros(&t, &spec, 32.9).unwrap();
        let whole: Vec<FZero> = s.clone().collect();
        let pieces: Vec<FZero> = s.chunks(2).into_iter().flatten().collect();
        assert_eq!(whole, pieces);
    }
}
