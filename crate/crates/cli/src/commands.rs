use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use rug::{Float, Rational};
use tauli::analysis::{criterion_check, fit_points, rh_harness, VerdictStatus};
use tauli::arithmetic::{
    li_arithmetic_general_tau_sweep, li_arithmetic_high_tau_sweep, ArithmeticConfig,
    CoefficientFault,
};
use tauli::bounds::{combined_interval, LiEstimate};
use tauli::model::{tau_domain, zeta_product_descriptor, Route, ZetaProductSpec};
use tauli::output::{csv_file_name, read_csv, render_svg, write_csv, CsvRow};
use tauli::precision::{format_float, format_rational, parse_rational};
use tauli::zeros::{load_zero_table, validate_table, Theta, ZeroTable};
use tauli::zerosum::{li_series_sweep, SweepConfig};
use tauli::{Error, Precision};

use crate::{
    ArithRoute, ComputeArgs, CriterionArgs, CrosscheckArgs, FitArgs, Method, PlotArgs, RhArgs,
    RunArgs, ZeroArgs,
};

/// A failed command and its exit code.
pub enum Failure {
    /// Exit 1: IO and computation errors.
    Runtime(String),
    /// Exit 2: bad arguments, domain violations, malformed input files.
    Usage(String),
    /// Exit 3: the routes disagree.
    Mismatch(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Runtime(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Mismatch(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Runtime(m) | Failure::Usage(m) | Failure::Mismatch(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(_) | Error::IllConditioned { .. } | Error::Precision(_) => {
                Failure::Runtime(e.to_string())
            }
            Error::Coverage { .. } | Error::RuleInapplicable(_) => Failure::Runtime(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn io_context(path: &Path, e: Error) -> Failure {
    match e {
        Error::Io(io) => Failure::Runtime(format!("{}: {io}", path.display())),
        other => {
            let f = Failure::from(other);
            match f {
                Failure::Usage(m) => Failure::Usage(format!("{}: {m}", path.display())),
                f => f,
            }
        }
    }
}

fn load_table(z: &ZeroArgs) -> Result<ZeroTable, Failure> {
    let path = z
        .zeros
        .as_ref()
        .ok_or_else(|| Failure::Usage("--zeros <path> is required for zero sums".into()))?;
    let theta0 = Theta::parse(&z.theta0)?;
    let table = match &z.zeros_head {
        Some(head_path) => {
            let theta1 = Theta::parse(&z.theta1)?;
            let bulk = load_zero_table(path, theta0.clone(), theta1.clone(), 0)
                .map_err(|e| io_context(path, e))?;
            let head = load_zero_table(head_path, theta0, theta1, 0)
                .map_err(|e| io_context(head_path, e))?;
            bulk.with_head(&head)?
        }
        // Without a head file every ordinate carries the bulk error.
        None => {
            load_zero_table(path, theta0.clone(), theta0, 0).map_err(|e| io_context(path, e))?
        }
    };
    match z.count {
        Some(c) => Ok(table.prefix(c)?),
        None => Ok(table),
    }
}

fn parse_grid(text: &str) -> Result<Vec<u32>, Failure> {
    let bad = || {
        Failure::Usage(format!(
            "bad n-grid {text:?}: expected start:stop[:step] with 1 <= start <= stop"
        ))
    };
    let parts: Vec<&str> = text.split(':').collect();
    let num = |s: &str| s.trim().parse::<u32>().map_err(|_| bad());
    let (start, stop, step) = match parts.as_slice() {
        [a] => (num(a)?, num(a)?, 1),
        [a, b] => (num(a)?, num(b)?, 1),
        [a, b, c] => (num(a)?, num(b)?, num(c)?),
        _ => return Err(bad()),
    };
    if start == 0 || stop < start || step == 0 {
        return Err(bad());
    }
    Ok((start..=stop).step_by(step as usize).collect())
}

fn precision(digits: u32) -> Result<Precision, Failure> {
    Ok(Precision::new(digits)?)
}

struct Run {
    spec: ZetaProductSpec,
    tau: Rational,
    grid: Vec<u32>,
    prec: Precision,
    arith_route: Route,
    arith_prec: Precision,
    sweep: SweepConfig,
    m_trunc: u64,
}

fn prepare(r: &RunArgs) -> Result<Run, Failure> {
    let spec = ZetaProductSpec::parse_list(&r.shifts)?;
    let tau = parse_rational(&r.tau)?;
    let grid = parse_grid(&r.n)?;
    let (arith_route, default_digits) = match r.arith_route {
        ArithRoute::HighTau => (Route::ArithmeticHighTau, Precision::ARITHMETIC.digits()),
        ArithRoute::General => (Route::ArithmeticGeneral, 60),
    };
    Ok(Run {
        spec,
        tau,
        grid,
        prec: precision(r.prec)?,
        arith_route,
        arith_prec: precision(r.arith_prec.unwrap_or(default_digits))?,
        sweep: SweepConfig {
            workers: r.workers,
            chunk_pairs: r.chunk,
        },
        m_trunc: r.m_trunc,
    })
}

fn check_domain(run: &Run, route: Route) -> Outcome {
    let desc = zeta_product_descriptor(&run.spec);
    tau_domain(&desc, route)
        .check(&run.tau)
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn zero_sum_estimates(run: &Run, table: &ZeroTable) -> Result<Vec<LiEstimate>, Failure> {
    let partials = li_series_sweep(
        &run.spec,
        table,
        &run.grid,
        &run.tau,
        table.max_height(),
        run.prec,
        run.sweep,
    )?;
    Ok(partials
        .iter()
        .map(|p| combined_interval(p, &run.spec, table.theta0(), table.theta1()))
        .collect::<tauli::Result<Vec<_>>>()?)
}

fn arithmetic_estimates(
    run: &Run,
    fault: Option<CoefficientFault>,
) -> Result<Vec<LiEstimate>, Failure> {
    let est = match run.arith_route {
        Route::ArithmeticGeneral => {
            li_arithmetic_general_tau_sweep(&run.spec, &run.grid, &run.tau, run.arith_prec)?
        }
        _ => {
            let config = ArithmeticConfig {
                m_trunc: run.m_trunc,
                fault,
            };
            li_arithmetic_high_tau_sweep(&run.spec, &run.grid, &run.tau, config, run.arith_prec)?
        }
    };
    Ok(est)
}

pub fn zeros_validate(z: &ZeroArgs) -> Outcome {
    let table = load_table(z)?;
    let report = validate_table(&table);
    println!(
        "{} ordinates, T = {}, tier boundary {}",
        table.len(),
        table.max_height_text(),
        table.tier_boundary()
    );
    if report.is_empty() {
        println!("ok");
        Ok(())
    } else {
        Err(Failure::Usage(report.to_string()))
    }
}

pub fn compute(a: &ComputeArgs) -> Outcome {
    let run = prepare(&a.run)?;
    let zero_sum = a.method != Method::Arithmetic;
    let arithmetic = a.method != Method::ZeroSum;
    if zero_sum {
        check_domain(&run, Route::ZeroSum)?;
    }
    if arithmetic {
        check_domain(&run, run.arith_route)?;
    }
    let mut rows = Vec::new();
    if zero_sum {
        let table = load_table(&a.zeros)?;
        rows.extend(
            zero_sum_estimates(&run, &table)?
                .iter()
                .map(CsvRow::from_estimate),
        );
    }
    if arithmetic {
        rows.extend(
            arithmetic_estimates(&run, None)?
                .iter()
                .map(CsvRow::from_estimate),
        );
    }
    std::fs::create_dir_all(&a.out)?;
    let path = a.out.join(csv_file_name(&run.tau));
    write_csv(BufWriter::new(File::create(&path)?), &rows)?;
    println!("wrote {} rows to {}", rows.len(), path.display());
    Ok(())
}

fn load_rows(path: &Path) -> Result<Vec<CsvRow>, Failure> {
    let file =
        File::open(path).map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))?;
    let rows = read_csv(file).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    if rows.is_empty() {
        return Err(Failure::Usage(format!("{}: no data rows", path.display())));
    }
    Ok(rows)
}

fn select_method(rows: Vec<CsvRow>, method: Option<&str>) -> Result<Vec<CsvRow>, Failure> {
    let wanted = match method {
        Some(m) => m.to_string(),
        None if rows.iter().any(|r| r.method == "zero_sum") => "zero_sum".to_string(),
        None => rows[0].method.clone(),
    };
    let picked: Vec<CsvRow> = rows.into_iter().filter(|r| r.method == wanted).collect();
    if picked.is_empty() {
        return Err(Failure::Usage(format!("no rows with method {wanted}")));
    }
    Ok(picked)
}

pub fn plot(a: &PlotArgs) -> Outcome {
    let rows = load_rows(&a.csv)?;
    let title = a
        .csv
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let svg = render_svg(&rows, a.overlay_nlogn, &title)?;
    let out = a.out.clone().unwrap_or_else(|| a.csv.with_extension("svg"));
    std::fs::write(&out, svg)?;
    println!("wrote {}", out.display());
    Ok(())
}

fn parse_fault(text: &str) -> Result<CoefficientFault, Failure> {
    let bad = || {
        Failure::Usage(format!(
            "bad --corrupt-coefficient {text:?}: expected m:factor"
        ))
    };
    let (m, f) = text.split_once(':').ok_or_else(bad)?;
    Ok(CoefficientFault {
        m: m.parse().map_err(|_| bad())?,
        factor: f.parse().map_err(|_| bad())?,
    })
}

pub fn crosscheck(a: &CrosscheckArgs) -> Outcome {
    let run = prepare(&a.run)?;
    check_domain(&run, Route::ZeroSum)?;
    check_domain(&run, run.arith_route)?;
    let fault = a
        .corrupt_coefficient
        .as_deref()
        .map(parse_fault)
        .transpose()?;
    let table = load_table(&a.zeros)?;
    let zs = zero_sum_estimates(&run, &table)?;
    let ar = arithmetic_estimates(&run, fault)?;
    println!(
        "{:>5} {:>26} {:>26} {:>12} {:>12}  ok",
        "n", "zero_sum", "arithmetic", "|diff|", "radii"
    );
    let mut failing = Vec::new();
    for (z, r) in zs.iter().zip(&ar) {
        let bits = z.center.prec().max(r.center.prec());
        let diff = Float::with_val(bits, &z.center - &r.center).abs().to_f64();
        let allowed = z.radius + r.radius;
        let ok = diff <= allowed;
        if !ok {
            failing.push(z.n);
        }
        println!(
            "{:>5} {:>26} {:>26} {:>12.4e} {:>12.4e}  {}",
            z.n,
            format_float(&z.center, 20),
            format_float(&r.center, 20),
            diff,
            allowed,
            if ok { "yes" } else { "NO" }
        );
    }
    if failing.is_empty() {
        Ok(())
    } else {
        let list: Vec<String> = failing.iter().map(|n| n.to_string()).collect();
        Err(Failure::Mismatch(format!(
            "routes disagree beyond the combined radii at n = {}",
            list.join(", ")
        )))
    }
}

fn tau_from_name(path: &Path) -> Option<Rational> {
    let stem = path.file_stem()?.to_str()?;
    let tau = stem.strip_prefix("li_tau")?.replace('_', "/");
    parse_rational(&tau).ok()
}

pub fn criterion(a: &CriterionArgs) -> Outcome {
    let tau = match &a.tau {
        Some(t) => parse_rational(t)?,
        None => tau_from_name(&a.csv).ok_or_else(|| {
            Failure::Usage("cannot read tau from the file name; pass --tau".into())
        })?,
    };
    let rows = select_method(load_rows(&a.csv)?, a.method.as_deref())?;
    let estimates = rows
        .iter()
        .map(|r| r.to_estimate(&tau))
        .collect::<tauli::Result<Vec<_>>>()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let verdict = criterion_check(&estimates)?;
    println!("{verdict}");
    println!("{}", serde_json::to_string(&verdict).expect("serializable"));
    Ok(())
}

pub fn fit(a: &FitArgs) -> Outcome {
    let tau = parse_rational(&a.tau)?;
    let rows = select_method(load_rows(&a.csv)?, a.method.as_deref())?;
    let points = rows
        .iter()
        .map(|r| Ok((r.n, r.center_f64()?)))
        .collect::<tauli::Result<Vec<_>>>()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let report = fit_points(&points, a.cf, tau.to_f64())?;
    if !report.skipped.is_empty() {
        eprintln!("note: skipped n = 1 (log n = 0)");
    }
    println!(
        "tail mean ratio {:.6} over n >= {} (spread {:.6}), sign changes {}, max growth rate {:.6}",
        report.tail_mean,
        report.tail_from,
        report.tail_spread,
        report.sign_changes,
        report.max_growth_rate
    );
    println!("{}", serde_json::to_string(&report).expect("serializable"));
    Ok(())
}

pub fn rh(a: &RhArgs) -> Outcome {
    let shift = parse_rational(&a.a)?;
    let table = load_table(&a.zeros)?;
    let (verdict, _) = rh_harness(&shift, &table, a.nmax, precision(a.prec)?)?;
    println!("a = {}: {verdict}", format_rational(&shift));
    println!("{}", serde_json::to_string(&verdict).expect("serializable"));
    if let VerdictStatus::NegativeCertified(n) = verdict.status {
        eprintln!(
            "certified negative coefficient at n = {n}: an off-line zero lies in the table range"
        );
    }
    Ok(())
}
