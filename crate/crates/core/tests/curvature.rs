mod common;

use std::sync::Arc;

use common::{grid, random_metric_moderate, rng};
use hermlab_core::curvature::{
    einstein_check, ricci_block_eigenvalues, ricci_closed_form_eigenvalues, ricci_closed_form_matrix,
    ricci_formula_matrix, scalar_closed_form, sectional_extremes, Regime, SECTIONAL_BOUND_TOLERANCE,
};
use hermlab_core::{Curvature, Factor, HermitianSpace, MetricParams, PVector, ReductiveSpace, SpaceParams};
use nalgebra::{DMatrix, SymmetricEigen};
use rand::Rng;

fn sp(n: usize, p: usize) -> SpaceParams {
    SpaceParams::new(n, p).unwrap()
}

fn random_vector(r: &mut impl Rng, d: usize) -> PVector {
    PVector::from_fn(d, |_, _| r.random_range(-1.0..1.0))
}

#[test]
fn ricci_three_ways_agree() {
    let mut r = rng(21);
    for s in grid() {
        let reductive = Arc::new(ReductiveSpace::new(s));
        for _ in 0..20 {
            let m = random_metric_moderate(&mut r);
            let hs = HermitianSpace::with_reductive(reductive.clone(), m).unwrap();
            let table = ricci_closed_form_matrix(s, m);
            let formula = ricci_formula_matrix(&hs);
            let curvature = Curvature::new(hs);
            let oracle = curvature.ricci();
            let r1 = (table.matrix() - formula.matrix()).amax();
            let r2 = (table.matrix() - oracle.matrix()).amax();
            assert!(r1 < 1e-8 && r2 < 1e-8, "{s:?} {m:?}: {r1} {r2}");
            let ds = (curvature.scalar_trace() - scalar_closed_form(s, m)).abs();
            assert!(ds < 1e-9, "{s:?} {m:?}: scalar {ds}");
        }
    }
}

#[test]
fn riemann_symmetries() {
    let mut r = rng(22);
    for s in [sp(1, 1), sp(2, 1), sp(0, 2), sp(1, 3)] {
        let m = random_metric_moderate(&mut r);
        let k = Curvature::from_params(s, m).unwrap();
        let d = s.p_dimension();
        for _ in 0..20 {
            let [x, y, z, w] = [0; 4].map(|_| random_vector(&mut r, d));
            let rf = |a: &PVector, b: &PVector, c: &PVector, e: &PVector| k.riemann_form(a, b, c, e);
            let base = rf(&x, &y, &z, &w);
            assert!((base + rf(&y, &x, &z, &w)).abs() < 1e-9);
            assert!((base + rf(&x, &y, &w, &z)).abs() < 1e-9);
            assert!((base - rf(&z, &w, &x, &y)).abs() < 1e-9);
            let bianchi = k.riemann(&x, &y, &z) + k.riemann(&y, &z, &x) + k.riemann(&z, &x, &y);
            assert!(bianchi.amax() < 1e-9);
        }
    }
}

#[test]
fn sectional_depends_only_on_plane() {
    let mut r = rng(23);
    let s = sp(2, 2);
    let k = Curvature::from_params(s, MetricParams::new(0.4, 1.3).unwrap()).unwrap();
    for _ in 0..20 {
        let x = random_vector(&mut r, 10);
        let y = random_vector(&mut r, 10);
        let (al, be, ga, de) = (1.3, -0.4, 0.7, 2.1);
        let u = &x * al + &y * be;
        let v = &x * ga + &y * de;
        let diff = (k.sectional(&x, &y).unwrap() - k.sectional(&u, &v).unwrap()).abs();
        assert!(diff < 1e-9, "{diff}");
        assert!(k.sectional(&x, &(&x * 2.0)).is_err());
    }
}

#[test]
fn block_eigenvalues_match_symmetric_eigen() {
    let mut r = rng(24);
    for s in [sp(1, 1), sp(2, 3), sp(3, 1)] {
        for _ in 0..10 {
            let m = random_metric_moderate(&mut r);
            let ric = ricci_closed_form_matrix(s, m);
            let x2 = s.x_index(Factor::Second);
            let block = DMatrix::from_fn(2, 2, |i, j| ric.entry([0, x2][i], [0, x2][j]));
            let mut expected: Vec<f64> = SymmetricEigen::new(block).eigenvalues.iter().copied().collect();
            expected.sort_by(|a, b| b.total_cmp(a));
            let (r1, r2) = ricci_block_eigenvalues(s, m);
            assert!((r1 - expected[0]).abs() < 1e-10 && (r2 - expected[1]).abs() < 1e-10);
        }
    }
}

#[test]
fn spectrum_multiplicities_at_zero_shear() {
    for (n, p, c) in [(1, 1, 0.7), (2, 3, 1.6), (3, 2, 0.9)] {
        let s = sp(n, p);
        let m = MetricParams::new(0.0, c).unwrap();
        let spectrum = Curvature::from_params(s, m).unwrap().ricci_operator_spectrum();
        // at a = 0 g is diagonal, so g⁻¹Ric has the values r/g on each basis line
        let g = hermlab_core::structures::metric_table(s, m);
        let ric = ricci_closed_form_matrix(s, m);
        let y1 = ric.entry(1, 1) / g.entry(1, 1);
        let k2 = s.y_index(Factor::Second, 1);
        let y2 = ric.entry(k2, k2) / g.entry(k2, k2);
        let count = |v: f64| spectrum.iter().filter(|&&x| (x - v).abs() < 1e-9).count();
        if (y1 - y2).abs() > 1e-6 {
            assert!(count(y1) >= 2 * n && count(y2) >= 2 * p, "{spectrum:?}");
        } else {
            assert!(count(y1) >= 2 * (n + p));
        }
        assert_eq!(ricci_closed_form_eigenvalues(s, m).len(), 2 + 2 * n + 2 * p);
    }
}

#[test]
fn einstein_at_equal_ranks() {
    for n in 1..=3 {
        let lambda = einstein_check(sp(n, n), MetricParams::new(0.0, 1.0).unwrap()).unwrap();
        assert!((lambda.unwrap() - 2.0 * n as f64).abs() < 1e-9);
    }
    for (n, p) in [(1, 2), (2, 3), (1, 4)] {
        let s = sp(n, p);
        assert_eq!(einstein_check(s, MetricParams::critical(s).unwrap()).unwrap(), None);
    }
}

#[test]
fn sectional_regimes_attain_bounds() {
    let cases = [
        (1, 16, 1, -8.0, 4.0),
        (1, 4, 2, -2.0, 2.5),
        (3, 4, 3, 0.0, f64::NAN),
        (2, 2, 3, 0.0, 1.0),
    ];
    for (n, p, regime, lo, hi) in cases {
        let report = sectional_extremes(sp(n, p), 2_000, 42, SECTIONAL_BOUND_TOLERANCE).unwrap();
        assert_eq!(report.regime, regime);
        assert_eq!(Regime::classify(n, p).unwrap().number(), regime);
        assert!((report.bound_low - lo).abs() < 1e-12);
        if !hi.is_nan() {
            assert!((report.bound_high - hi).abs() < 1e-12);
        }
        assert!((report.named_min - report.bound_low).abs() < 1e-8);
        assert!((report.named_max - report.bound_high).abs() < 1e-8);
        assert_eq!(report.samples_in_bounds, 1.0);
    }
    assert!(sectional_extremes(sp(2, 1), 10, 1, SECTIONAL_BOUND_TOLERANCE).is_err());
    assert!(sectional_extremes(sp(0, 1), 10, 1, SECTIONAL_BOUND_TOLERANCE).is_err());
}
