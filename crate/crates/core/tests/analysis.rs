mod common;

use proptest::prelude::*;
use rug::{Complex, Float, Rational};
use tauli::analysis::{
    asymptotic_fit, criterion_check, fit_points, rh_harness, verify_logderiv_identity,
};
use tauli::arithmetic::{li_arithmetic_high_tau_sweep, ArithmeticConfig};
use tauli::bounds::combined_interval;
use tauli::model::ZetaProductSpec;
use tauli::zerosum::{li_series_sweep, SweepConfig};
use tauli::Precision;

fn p50() -> Precision {
    Precision::new(50).unwrap()
}

#[test]
fn rh_harness_equals_direct_run() {
    let table = common::desk_table().prefix(2000).unwrap();
    let a = Rational::from((3, 2));
    let (verdict, estimates) = rh_harness(&a, &table, 30, p50()).unwrap();

    let spec = ZetaProductSpec::new(vec![a]).unwrap();
    let tau = Rational::from(4);
    let grid: Vec<u32> = (1..=30).collect();
    let direct: Vec<_> = li_series_sweep(
        &spec,
        &table,
        &grid,
        &tau,
        table.max_height(),
        p50(),
        SweepConfig::default(),
    )
    .unwrap()
    .iter()
    .map(|p| combined_interval(p, &spec, table.theta0(), table.theta1()).unwrap())
    .collect();
    assert_eq!(criterion_check(&direct).unwrap(), verdict);
    for (x, y) in estimates.iter().zip(&direct) {
        assert_eq!(x.center, y.center);
        assert_eq!(x.radius, y.radius);
    }
}

#[test]
fn single_shift_harness_agrees_with_arithmetic_route() {
    let table = common::desk_table().prefix(2000).unwrap();
    let a = Rational::from((9, 2));
    let (_, estimates) = rh_harness(&a, &table, 8, p50()).unwrap();
    let spec = ZetaProductSpec::new(vec![a]).unwrap();
    let grid: Vec<u32> = (1..=8).collect();
    let arith = li_arithmetic_high_tau_sweep(
        &spec,
        &grid,
        &Rational::from(10),
        ArithmeticConfig::default(),
        Precision::new(80).unwrap(),
    )
    .unwrap();
    for (z, r) in estimates.iter().zip(&arith) {
        let d = Float::with_val(300, &z.center - &r.center).abs().to_f64();
        assert!(
            d <= z.radius + r.radius,
            "n = {}: {d} vs {}",
            z.n,
            z.radius + r.radius
        );
    }
}

#[test]
fn logderiv_vanishes_at_symmetry_point() {
    let table = common::desk_table().prefix(1000).unwrap();
    let spec = ZetaProductSpec::from_integers(&[1, 2, 3, 4]).unwrap();
    let r = verify_logderiv_identity(
        &spec,
        &table,
        &Complex::with_val(200, 0.5),
        table.max_height(),
        p50(),
    )
    .unwrap();
    assert!(r.residual <= r.tail_scale);
    assert!(r.direct.real().to_f64().abs() < 1e-40);
}

#[test]
fn logderiv_residual_shrinks_with_height() {
    let spec = ZetaProductSpec::from_integers(&[1, 2, 3, 4]).unwrap();
    for s in [10.0, 0.0] {
        let mut last = f64::INFINITY;
        for count in [300usize, 3000, 30000] {
            let table = common::desk_table().prefix(count).unwrap();
            let r = verify_logderiv_identity(
                &spec,
                &table,
                &Complex::with_val(200, s),
                table.max_height(),
                p50(),
            )
            .unwrap();
            assert!(r.residual < last, "s = {s}, {count} ordinates");
            assert!(r.residual <= r.tail_scale, "s = {s}, {count} ordinates");
            last = r.residual;
        }
    }
}

#[test]
fn logderiv_rejects_points_on_zeros_and_far_above() {
    let table = common::desk_table().prefix(100).unwrap();
    let spec = ZetaProductSpec::from_integers(&[1]).unwrap();
    let gamma = table.ordinate_float(0, 300);
    let on_zero = Complex::with_val(300, (1.5, gamma));
    assert!(verify_logderiv_identity(&spec, &table, &on_zero, table.max_height(), p50()).is_err());
    let high = Complex::with_val(300, (2.0, table.max_height()));
    assert!(verify_logderiv_identity(&spec, &table, &high, table.max_height(), p50()).is_err());
}

#[test]
fn fit_accepts_estimates() {
    let table = common::desk_table().prefix(500).unwrap();
    let spec = ZetaProductSpec::from_integers(&[1, 2, 3, 4]).unwrap();
    let grid = [1u32, 20, 40];
    let est: Vec<_> = li_series_sweep(
        &spec,
        &table,
        &grid,
        &Rational::from(10),
        table.max_height(),
        p50(),
        SweepConfig::default(),
    )
    .unwrap()
    .iter()
    .map(|p| combined_interval(p, &spec, table.theta0(), table.theta1()).unwrap())
    .collect();
    let r = asymptotic_fit(&est, 4.0, 10.0).unwrap();
    assert_eq!(r.skipped, vec![1]);
    assert_eq!(r.ratios.len(), 2);
    assert_eq!(r.tail_from, 20);
}

proptest! {
    #[test]
    fn fit_ratios_scale_with_centers(
        centers in prop::collection::vec(-1e6f64..1e6, 2..40),
        c in 0.01f64..100.0,
    ) {
        let pts: Vec<(u32, f64)> = centers.iter().enumerate().map(|(i, v)| (i as u32 + 2, *v)).collect();
        let scaled: Vec<(u32, f64)> = pts.iter().map(|&(n, v)| (n, v * c)).collect();
        let a = fit_points(&pts, 4.0, 10.0).unwrap();
        let b = fit_points(&scaled, 4.0, 10.0).unwrap();
        for (x, y) in a.ratios.iter().zip(&b.ratios) {
            prop_assert!((x.1 * c - y.1).abs() <= 1e-12 * y.1.abs().max(1e-300));
        }
        prop_assert_eq!(a.sign_changes, b.sign_changes);
        let same = fit_points(&pts, 4.0, 10.0).unwrap();
        prop_assert_eq!(a, same);
    }
}
