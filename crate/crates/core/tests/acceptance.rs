//! Acceptance run: one line per criterion, nonzero exit if any fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::desk_table;
use common::special_checks::{
    dirichlet_local_factor_error, laguerre_error, polygamma_closed_form_error,
    polygamma_hurwitz_check,
};
use rug::{Complex, Float, Rational};
use tauli::analysis::{
    asymptotic_fit, criterion_check, rh_harness, verify_logderiv_identity, VerdictStatus,
};
use tauli::arithmetic::{
    li_arithmetic_general_tau_sweep, li_arithmetic_high_tau_sweep, ArithmeticConfig,
};
use tauli::bounds::{
    combined_interval, perturbation_bound_example, shift_amplitude_a, truncation_bound,
    zeta_product_coefficient, BoundRule, LiEstimate,
};
use tauli::model::ZetaProductSpec;
use tauli::output::{write_csv, CsvRow};
use tauli::special::{completed_xi_logderiv, dirichlet_coeff, von_mangoldt};
use tauli::zeros::ZeroTable;
use tauli::zerosum::{li_partial_sum, li_series_sweep, SweepConfig};
use tauli::Precision;

type Outcome = Result<String, String>;

fn spec() -> ZetaProductSpec {
    ZetaProductSpec::from_integers(&[1, 2, 3, 4]).unwrap()
}

fn digits(d: u32) -> Precision {
    Precision::new(d).unwrap()
}

fn diff(a: &Float, b: &Float) -> f64 {
    Float::with_val(a.prec().max(b.prec()), a - b)
        .abs()
        .to_f64()
}

fn run(
    table: &ZeroTable,
    tau: i64,
    grid: &[u32],
    workers: usize,
) -> Result<Vec<LiEstimate>, String> {
    let spec = spec();
    let tau = Rational::from(tau);
    let config = SweepConfig {
        workers,
        ..SweepConfig::default()
    };
    let partials = li_series_sweep(
        &spec,
        table,
        grid,
        &tau,
        table.max_height(),
        digits(50),
        config,
    )
    .map_err(|e| e.to_string())?;
    partials
        .iter()
        .map(|p| combined_interval(p, &spec, table.theta0(), table.theta1()))
        .collect::<tauli::Result<Vec<_>>>()
        .map_err(|e| e.to_string())
}

fn csv_bytes(estimates: &[LiEstimate]) -> Vec<u8> {
    let rows: Vec<CsvRow> = estimates.iter().map(CsvRow::from_estimate).collect();
    let mut out = Vec::new();
    write_csv(&mut out, &rows).unwrap();
    out
}

fn grid(start: u32, stop: u32, step: usize) -> Vec<u32> {
    (start..=stop).step_by(step).collect()
}

fn growth_at_tau10(tau10: &[LiEstimate]) -> Outcome {
    let negative: Vec<u32> = tau10.iter().filter(|e| e.center < 0).map(|e| e.n).collect();
    if !negative.is_empty() {
        return Err(format!("negative centers at n = {negative:?}"));
    }
    let fit = asymptotic_fit(tau10, 4.0, 10.0).map_err(|e| e.to_string())?;
    let detail = format!(
        "all {} centers >= 0, tail mean of center/(40 n log n) over n >= {} is {:.6}",
        tau10.len(),
        fit.tail_from,
        fit.tail_mean
    );
    if fit.tail_from != 150 || !(0.85..=1.15).contains(&fit.tail_mean) {
        return Err(detail);
    }
    Ok(detail)
}

fn sign_structure(table: &ZeroTable, tau10: &[LiEstimate]) -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for (tau, g) in [(1, grid(1, 500, 5)), (5, grid(5, 200, 5))] {
        let est = run(table, tau, &g, 0)?;
        let verdict = criterion_check(&est).map_err(|e| e.to_string())?;
        let count = est
            .iter()
            .filter(|e| e.certified && e.upper() < 0.0)
            .count();
        ok &= matches!(verdict.status, VerdictStatus::NegativeCertified(_));
        parts.push(format!("{verdict} ({count} certified negative)"));
    }
    let verdict = criterion_check(tau10).map_err(|e| e.to_string())?;
    ok &= !matches!(verdict.status, VerdictStatus::NegativeCertified(_));
    parts.push(verdict.to_string());
    let detail = parts.join("; ");
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn truncation_domination(table: &ZeroTable) -> Outcome {
    let spec = spec();
    let tau = Rational::from(10);
    let ns = [1u32, 50, 150, 300];
    let short = table.prefix(50_000).map_err(|e| e.to_string())?;
    let t1 = short.max_height();
    let sweep = |t: &ZeroTable| {
        li_series_sweep(
            &spec,
            t,
            &ns,
            &tau,
            t.max_height(),
            digits(50),
            SweepConfig::default(),
        )
        .map_err(|e| e.to_string())
    };
    let (a, b) = (sweep(&short)?, sweep(table)?);
    let mut worst = 0f64;
    for (x, y) in a.iter().zip(&b) {
        let bound = truncation_bound(4, 10.0, x.n, t1, 14.0).map_err(|e| e.to_string())?;
        let d = diff(&x.value, &y.value);
        if d > bound {
            return Err(format!(
                "n = {}: |difference| {d:.3e} exceeds bound {bound:.3e}",
                x.n
            ));
        }
        worst = worst.max(d / bound);
    }
    let at_one = truncation_bound(4, 10.0, 1, t1, 14.0).map_err(|e| e.to_string())?;
    let closed = 7.5 * 4.0 * 10.0 * 14.0 * t1.ln() / t1;
    let rel = (at_one - closed).abs() / closed;
    let detail = format!(
        "largest |difference|/bound {worst:.3e}; n = 1 bound {at_one:.12e} vs closed form (rel {rel:.1e}); A = {}",
        shift_amplitude_a(&spec, &tau)
    );
    if rel > 1e-10 || shift_amplitude_a(&spec, &tau) != 14 {
        return Err(detail);
    }
    Ok(detail)
}

fn route_equivalence(table: &ZeroTable) -> Outcome {
    let spec = spec();
    let tau = Rational::from(10);
    let g = grid(1, 20, 1);
    let zs = run(table, 10, &g, 0)?;
    let high =
        li_arithmetic_high_tau_sweep(&spec, &g, &tau, ArithmeticConfig::default(), digits(80))
            .map_err(|e| e.to_string())?;
    let general =
        li_arithmetic_general_tau_sweep(&spec, &g, &tau, digits(60)).map_err(|e| e.to_string())?;
    let (mut zs_worst, mut ar_worst) = (0f64, 0f64);
    for ((z, h), l) in zs.iter().zip(&high).zip(&general) {
        let allowed = h.radius + z.truncation + z.perturbation;
        let d = diff(&z.center, &h.center);
        if d > allowed {
            return Err(format!(
                "n = {}: zero sum vs arithmetic {d:.3e} > {allowed:.3e}",
                z.n
            ));
        }
        let allowed2 = h.radius + l.radius;
        let d2 = diff(&h.center, &l.center);
        if d2 > allowed2 {
            return Err(format!(
                "n = {}: Dirichlet vs Laurent formula {d2:.3e} > {allowed2:.3e}",
                z.n
            ));
        }
        zs_worst = zs_worst.max(d / allowed);
        ar_worst = ar_worst.max(d2 / allowed2);
    }
    Ok(format!(
        "n = 1..20: zero sum vs arithmetic at most {zs_worst:.3} of the allowance, \
         Dirichlet vs Laurent formula at most {ar_worst:.3e}"
    ))
}

fn first_coefficient(table: &ZeroTable) -> Outcome {
    let spec = spec();
    let tau = Rational::from(10);
    let partial = li_partial_sum(&spec, table, 1, &tau, table.max_height(), digits(50))
        .map_err(|e| e.to_string())?;
    let xi = completed_xi_logderiv(&spec, &Complex::with_val(300, 10), digits(60))
        .map_err(|e| e.to_string())?;
    let direct = Float::with_val(300, xi.real() * 10u32);
    let bound =
        truncation_bound(4, 10.0, 1, table.max_height(), 14.0).map_err(|e| e.to_string())?;
    let d = diff(&partial.value, &direct);
    let detail = format!(
        "zero sum {:.10}, 10 xi'/xi(10) = {:.10}, |difference| {d:.4e} <= {bound:.4e}",
        partial.value.to_f64(),
        direct.to_f64()
    );
    if d <= bound {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn logderiv_convergence(table: &ZeroTable) -> Outcome {
    let spec = spec();
    let s = Complex::with_val(200, 10);
    let mut residuals = Vec::new();
    for count in [1_000usize, 10_000, 100_000] {
        let t = table.prefix(count).map_err(|e| e.to_string())?;
        let r = verify_logderiv_identity(&spec, &t, &s, t.max_height(), digits(50))
            .map_err(|e| e.to_string())?;
        residuals.push(r.residual);
    }
    let detail = format!(
        "residuals {:.3e}, {:.3e}, {:.3e}",
        residuals[0], residuals[1], residuals[2]
    );
    if residuals.windows(2).all(|w| w[1] < w[0]) && residuals[2] <= 1e-2 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn bound_fidelity() -> Outcome {
    let (rule, value) = perturbation_bound_example(&Rational::from(10), 300, 4e-9, 0.0)
        .map_err(|e| e.to_string())?;
    let expected = 52.0 * 300.0 * 4e-9 / (1.0 - 4e-9);
    let rel = (value - expected).abs() / expected;
    let coeff = zeta_product_coefficient(4, &Rational::from(10));
    let detail = format!(
        "{} gives {value:.15e} (rel {rel:.1e}); 1.30 * 4 * 10 = {coeff}",
        rule.as_str()
    );
    if rule == BoundRule::TabulatedTau10 && rel <= 1e-12 && coeff == 52 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn special_functions() -> Outcome {
    let poly = polygamma_closed_form_error();
    polygamma_hurwitz_check()?;
    let lag = laguerre_error();
    let dir = dirichlet_local_factor_error();
    let spec = spec();
    let stray: Vec<u64> = (2..=100u64)
        .filter(|&m| von_mangoldt(m).is_none() && !dirichlet_coeff(&spec, m, digits(40)).is_zero())
        .collect();
    let detail = format!(
        "polygamma rel {poly:.1e} (Hurwitz bracket ok for k >= 8), Laguerre scaled {lag:.1e}, \
         Dirichlet coefficients rel {dir:.1e}"
    );
    if poly < 1e-30 && lag < 1e-30 && dir < 1e-20 && stray.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}; nonzero off prime powers at {stray:?}"))
    }
}

fn rh(table: &ZeroTable) -> Outcome {
    let (verdict, _) =
        rh_harness(&Rational::from(1), table, 100, digits(50)).map_err(|e| e.to_string())?;
    let detail = verdict.to_string();
    if verdict.status == VerdictStatus::AllNonnegativeWithinRadius {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn determinism(table: &ZeroTable, one_worker: &[LiEstimate]) -> Outcome {
    let eight = run(table, 10, &grid(10, 300, 10), 8)?;
    let (a, b) = (csv_bytes(one_worker), csv_bytes(&eight));
    if a == b {
        Ok(format!("{} bytes identical for 1 and 8 workers", a.len()))
    } else {
        Err("CSV output differs between 1 and 8 workers".into())
    }
}

fn main() -> ExitCode {
    let table = desk_table();
    println!(
        "desk table: {} ordinates, T = {}",
        table.len(),
        table.max_height_text()
    );
    let tau10 = run(table, 10, &grid(10, 300, 10), 1);
    let shared = |f: &dyn Fn(&[LiEstimate]) -> Outcome| match &tau10 {
        Ok(est) => f(est),
        Err(e) => Err(e.clone()),
    };
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("tau = 10 growth", Box::new(|| shared(&growth_at_tau10))),
        (
            "sign structure",
            Box::new(|| shared(&|e| sign_structure(table, e))),
        ),
        (
            "truncation bound",
            Box::new(|| truncation_domination(table)),
        ),
        ("route equivalence", Box::new(|| route_equivalence(table))),
        ("first coefficient", Box::new(|| first_coefficient(table))),
        (
            "log-derivative sum",
            Box::new(|| logderiv_convergence(table)),
        ),
        ("bound formulas", Box::new(bound_fidelity)),
        ("special functions", Box::new(special_functions)),
        ("shifted pair harness", Box::new(|| rh(table))),
        (
            "determinism",
            Box::new(|| shared(&|e| determinism(table, e))),
        ),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!(
                "criterion {:>2} PASS [{name}] {detail} ({secs:.1} s)",
                i + 1
            ),
            Err(detail) => {
                failed += 1;
                println!(
                    "criterion {:>2} FAIL [{name}] {detail} ({secs:.1} s)",
                    i + 1
                );
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
