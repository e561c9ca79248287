//! CSV tables of estimates and SVG plots.

use std::fmt::Write as _;
use std::io::{Read, Write};

use rug::{Float, Rational};
use serde::{Deserialize, Serialize};

use crate::bounds::{BoundRule, LiEstimate};
use crate::model::Route;
use crate::precision::{format_float, format_rational};
use crate::{Error, Precision, Result};

/// One CSV row. Numbers are kept as the decimal strings that were written.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CsvRow {
    pub n: u32,
    pub method: String,
    pub center: String,
    pub radius: String,
    pub truncation_bound: String,
    pub perturbation_bound: String,
    pub rule: String,
    #[serde(rename = "T")]
    pub height: String,
    pub prec: u32,
}

impl CsvRow {
    pub fn from_estimate(e: &LiEstimate) -> Self {
        CsvRow {
            n: e.n,
            method: method_name(e.method).to_string(),
            center: format_float(&e.center, e.prec.digits()),
            radius: e.radius.to_string(),
            truncation_bound: e.truncation.to_string(),
            perturbation_bound: e.perturbation.to_string(),
            rule: e.rule.as_str().to_string(),
            height: e.height.map(|h| h.to_string()).unwrap_or_default(),
            prec: e.prec.digits(),
        }
    }

    pub fn center_f64(&self) -> Result<f64> {
        parse_number(&self.center, "center")
    }

    pub fn radius_f64(&self) -> Result<f64> {
        parse_number(&self.radius, "radius")
    }

    /// Rebuilds the estimate at τ. Only zero-sum rows count as certified.
    pub fn to_estimate(&self, tau: &Rational) -> Result<LiEstimate> {
        let method = match self.method.as_str() {
            "zero_sum" => Route::ZeroSum,
            "arithmetic_high_tau" => Route::ArithmeticHighTau,
            "arithmetic_general" => Route::ArithmeticGeneral,
            other => return Err(Error::Csv(format!("unknown method {other:?}"))),
        };
        let rule = BoundRule::parse(&self.rule)
            .ok_or_else(|| Error::Csv(format!("unknown rule {:?}", self.rule)))?;
        let prec = Precision::new(self.prec).map_err(|e| Error::Csv(e.to_string()))?;
        let center = Float::parse(&self.center)
            .map(|c| Float::with_val(prec.bits() + 16, c))
            .map_err(|_| Error::Csv(format!("bad center value {:?}", self.center)))?;
        let height = if self.height.is_empty() {
            None
        } else {
            Some(parse_number(&self.height, "T")?)
        };
        Ok(LiEstimate {
            n: self.n,
            tau: tau.clone(),
            center,
            radius: self.radius_f64()?,
            method,
            rule,
            truncation: parse_number(&self.truncation_bound, "truncation_bound")?,
            perturbation: parse_number(&self.perturbation_bound, "perturbation_bound")?,
            height,
            prec,
            certified: method == Route::ZeroSum,
            report: None,
        })
    }
}

fn parse_number(s: &str, what: &str) -> Result<f64> {
    s.parse::<f64>()
        .map_err(|_| Error::Csv(format!("bad {what} value {s:?}")))
}

pub fn method_name(route: Route) -> &'static str {
    match route {
        Route::ZeroSum => "zero_sum",
        Route::ArithmeticHighTau => "arithmetic_high_tau",
        Route::ArithmeticGeneral => "arithmetic_general",
    }
}

/// `li_tau<τ>.csv`, with `/` in fractional τ written as `_`.
pub fn csv_file_name(tau: &Rational) -> String {
    format!("li_tau{}.csv", format_rational(tau).replace('/', "_"))
}

pub fn write_csv<W: Write>(w: W, rows: &[CsvRow]) -> Result<()> {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w);
    for row in rows {
        writer
            .serialize(row)
            .map_err(|e| Error::Csv(e.to_string()))?;
    }
    if rows.is_empty() {
        writer
            .write_record([
                "n",
                "method",
                "center",
                "radius",
                "truncation_bound",
                "perturbation_bound",
                "rule",
                "T",
                "prec",
            ])
            .map_err(|e| Error::Csv(e.to_string()))?;
    }
    writer.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(r: R) -> Result<Vec<CsvRow>> {
    let mut reader = csv::Reader::from_reader(r);
    let rows = reader
        .deserialize()
        .collect::<std::result::Result<Vec<CsvRow>, _>>()
        .map_err(|e| Error::Csv(e.to_string()))?;
    for row in &rows {
        row.center_f64()?;
        row.radius_f64()?;
    }
    Ok(rows)
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const MARGIN: f64 = 60.0;
const COLORS: [&str; 3] = ["#1f5fa8", "#c0392b", "#2e8b57"];

/// SVG plot of the centers with a shaded band [center − radius, center +
/// radius] per method, and optionally the curve y = coef·n·log n.
pub fn render_svg(rows: &[CsvRow], overlay_nlogn: Option<f64>, title: &str) -> Result<String> {
    if rows.is_empty() {
        return Err(Error::Csv("no rows to plot".into()));
    }
    let mut methods: Vec<&str> = Vec::new();
    for r in rows {
        if !methods.contains(&r.method.as_str()) {
            methods.push(&r.method);
        }
    }
    let mut series = Vec::new();
    for m in &methods {
        let mut pts = Vec::new();
        for r in rows.iter().filter(|r| r.method == *m) {
            pts.push((r.n as f64, r.center_f64()?, r.radius_f64()?));
        }
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        series.push((*m, pts));
    }

    let all = series.iter().flat_map(|s| s.1.iter());
    let (mut x0, mut x1, mut y0, mut y1) = (
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
    );
    for &(x, c, r) in all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(c - r);
        y1 = y1.max(c + r);
    }
    let curve: Vec<(f64, f64)> = match overlay_nlogn {
        Some(coef) => {
            let steps = 200;
            (0..=steps)
                .map(|i| x0 + (x1 - x0) * i as f64 / steps as f64)
                .filter(|x| *x >= 1.0)
                .map(|x| (x, coef * x * x.ln()))
                .collect()
        }
        None => Vec::new(),
    };
    for &(_, y) in &curve {
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    y0 = y0.min(0.0);
    y1 = y1.max(0.0);
    if x1 == x0 {
        x0 -= 1.0;
        x1 += 1.0;
    }
    if y1 == y0 {
        y1 += 1.0;
    }
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let sy = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{}" y="30" font-family="sans-serif" font-size="16" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );
    let (bx0, by0, bx1, by1) = (MARGIN, MARGIN, WIDTH - MARGIN, HEIGHT - MARGIN);
    let _ = writeln!(
        out,
        r#"<rect x="{bx0}" y="{by0}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        bx1 - bx0,
        by1 - by0
    );
    let _ = writeln!(
        out,
        r##"<line x1="{bx0}" y1="{:.2}" x2="{bx1}" y2="{:.2}" stroke="#888" stroke-dasharray="4 3"/>"##,
        sy(0.0),
        sy(0.0)
    );
    for (v, anchor, x, y) in [(x0, "start", bx0, by1 + 18.0), (x1, "end", bx1, by1 + 18.0)] {
        let _ = writeln!(
            out,
            r#"<text x="{x}" y="{y}" font-family="sans-serif" font-size="12" text-anchor="{anchor}">n = {}</text>"#,
            tick(v)
        );
    }
    for (v, y) in [(y0, by1), (y1, by0 + 12.0)] {
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{y}" font-family="sans-serif" font-size="12" text-anchor="end">{}</text>"#,
            bx0 - 6.0,
            tick(v)
        );
    }

    for (i, (name, pts)) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let mut band = String::new();
        for &(x, c, r) in pts {
            let _ = write!(band, "{:.2},{:.2} ", sx(x), sy(c + r));
        }
        for &(x, c, r) in pts.iter().rev() {
            let _ = write!(band, "{:.2},{:.2} ", sx(x), sy(c - r));
        }
        let _ = writeln!(
            out,
            r#"<polygon points="{}" fill="{color}" fill-opacity="0.2" stroke="none"/>"#,
            band.trim_end()
        );
        for &(x, c, _) in pts {
            let _ = writeln!(
                out,
                r#"<circle cx="{:.2}" cy="{:.2}" r="2.5" fill="{color}"/>"#,
                sx(x),
                sy(c)
            );
        }
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12" fill="{color}">{}</text>"#,
            bx0 + 10.0,
            by0 + 16.0 + 16.0 * i as f64,
            escape(name)
        );
    }
    if let Some(coef) = overlay_nlogn {
        let mut path = String::new();
        for (j, &(x, y)) in curve.iter().enumerate() {
            let _ = write!(
                path,
                "{}{:.2},{:.2} ",
                if j == 0 { "M" } else { "L" },
                sx(x),
                sy(y)
            );
        }
        let _ = writeln!(
            out,
            r#"<path d="{}" fill="none" stroke="black" stroke-width="1.5"/>"#,
            path.trim_end()
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12">y = {} n log n</text>"#,
            bx0 + 10.0,
            by0 + 16.0 + 16.0 * series.len() as f64,
            tick(coef)
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn tick(v: f64) -> String {
    if v.abs() >= 1e6 || (v != 0.0 && v.abs() < 1e-3) {
        format!("{v:.3e}")
    } else {
        let s = format!("{v:.3}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
