mod common;

use common::rng;
use hermlab_core::optimize::{
    find_critical_point, hermitian_ricci_residual, maximal_scalar, printed_gradient, scalar_functional,
    scalar_gradient, AscentOptions, Method, PointKind,
};
use hermlab_core::{MetricParams, SpaceParams};
use proptest::prelude::*;
use rand::Rng;

fn sp(n: usize, p: usize) -> SpaceParams {
    SpaceParams::new(n, p).unwrap()
}

fn central_difference(s: SpaceParams, a: f64, c: f64) -> (f64, f64) {
    let h = 1e-5;
    let f = |a, c| scalar_functional(s, a, c).unwrap();
    (
        (f(a + h, c) - f(a - h, c)) / (2.0 * h),
        (f(a, c + h) - f(a, c - h)) / (2.0 * h),
    )
}

#[test]
fn gradient_matches_finite_differences() {
    let mut r = rng(31);
    for _ in 0..100 {
        let s = sp(r.random_range(0..5), r.random_range(1..5));
        let (a, c) = (r.random_range(-3.0..3.0), r.random_range(0.1..5.0));
        let (ga, gc) = scalar_gradient(s, a, c).unwrap();
        let (fa, fc) = central_difference(s, a, c);
        let scale = 1.0 + ga.abs().max(gc.abs());
        assert!(
            (ga - fa).abs() / scale < 1e-6 && (gc - fc).abs() / scale < 1e-6,
            "{s:?} ({a},{c})"
        );
    }
}

#[test]
fn ascent_finds_closed_form_point() {
    for n in 1..=4 {
        for p in 1..=4 {
            let s = sp(n, p);
            let r = find_critical_point(s, Method::Ascent(AscentOptions::default())).unwrap();
            assert!(r.exists);
            assert!(r.a_star.unwrap().abs() < 1e-7);
            assert!((r.c_star.unwrap() - (n as f64 / p as f64).sqrt()).abs() < 1e-7);
            assert!((r.s_star.unwrap() - maximal_scalar(s)).abs() < 1e-9);
            assert_eq!(r.kind, PointKind::Maximum);
        }
    }
}

#[test]
fn no_critical_point_without_both_factors() {
    for (n, p) in [(0, 1), (0, 3), (2, 0)] {
        let r = find_critical_point(sp(n, p), Method::Ascent(AscentOptions::default())).unwrap();
        assert!(!r.exists && r.a_star.is_none() && r.s_star.is_none());
    }
}

#[test]
fn critical_value_is_global_maximum() {
    let mut r = rng(32);
    for (n, p) in [(1, 1), (2, 3), (4, 1)] {
        let s = sp(n, p);
        let top = maximal_scalar(s);
        for _ in 0..10_000 {
            let v = scalar_functional(s, r.random_range(-5.0..5.0), r.random_range(0.01..10.0)).unwrap();
            assert!(v <= top + 1e-12);
        }
    }
}

#[test]
fn ricci_hermitian_only_at_critical_metric() {
    for (n, p) in [(1, 1), (2, 1), (1, 3), (2, 2)] {
        let s = sp(n, p);
        assert!(hermitian_ricci_residual(s, MetricParams::critical(s).unwrap()).unwrap() < 1e-9);
        assert!(hermitian_ricci_residual(s, MetricParams::new(0.8, 1.7).unwrap()).unwrap() > 1e-6);
    }
}

proptest! {
    #[test]
    fn printed_partials_share_signs_and_zeros(
        n in 0usize..5, p in 1usize..5, a in -3.0f64..3.0, c in 0.1f64..5.0,
    ) {
        let s = sp(n, p);
        let (ga, gc) = scalar_gradient(s, a, c).unwrap();
        let (pa, pc) = printed_gradient(s, a, c);
        prop_assert!((ga - 4.0 * pa).abs() < 1e-12 * (1.0 + ga.abs()));
        prop_assert!((gc - 4.0 * pc).abs() < 1e-12 * (1.0 + gc.abs()));
        prop_assert_eq!(ga.signum() * pa.signum() >= 0.0, true);
    }
}
