mod common;

use std::sync::Arc;

use common::{grid, random_metric, rng};
use hermlab_core::connection::{frame_trace_of_u, u_tensor_closed_form, u_tensor_solve, ConnectionTable};
use hermlab_core::structures::{
    associated_metric, complex_structure, metric_table, nijenhuis_p, positivity_and_compatibility_check,
};
use hermlab_core::{HermitianSpace, MetricParams, PVector, ReductiveSpace, SpaceParams};
use proptest::prelude::*;

#[test]
fn complex_structure_squares_to_minus_identity() {
    let mut r = rng(1);
    let s = SpaceParams::new(2, 3).unwrap();
    for _ in 0..50 {
        let m = random_metric(&mut r);
        assert!(complex_structure(s, m).square_residual() < 1e-12, "{m:?}");
    }
}

#[test]
fn positive_association_for_random_parameters() {
    let mut r = rng(2);
    for s in grid() {
        for _ in 0..10 {
            let m = random_metric(&mut r);
            let report = positivity_and_compatibility_check(s, m);
            assert!(report.compatible && report.positive, "{s:?} {m:?} {report:?}");
        }
    }
}

#[test]
fn metric_matches_explicit_table() {
    let mut r = rng(3);
    for s in grid() {
        let m = random_metric(&mut r);
        let via_omega = associated_metric(s, m);
        let table = metric_table(s, m);
        assert!((via_omega.matrix() - table.matrix()).amax() < 1e-12);
        assert!(via_omega.symmetry_residual() < 1e-15);
        assert!(via_omega.min_eigenvalue() > 0.0);
    }
}

#[test]
fn metric_is_hermitian() {
    let mut r = rng(4);
    for s in grid() {
        let m = random_metric(&mut r);
        let g = associated_metric(s, m);
        let i = complex_structure(s, m);
        let residual = (i.matrix().transpose() * g.matrix() * i.matrix() - g.matrix()).amax();
        assert!(residual < 1e-10, "{s:?} {m:?}: {residual}");
    }
}

#[test]
fn frame_is_orthonormal() {
    let mut r = rng(5);
    for s in grid() {
        let m = random_metric(&mut r);
        let hs = HermitianSpace::new(s, m).unwrap();
        let frame = hs.frame();
        for (a, za) in frame.iter().enumerate() {
            for (b, zb) in frame.iter().enumerate() {
                let expected = if a == b { 1.0 } else { 0.0 };
                assert!((hs.inner(za, zb) - expected).abs() < 1e-10);
            }
        }
    }
}

#[test]
fn nijenhuis_vanishes_on_basis_pairs() {
    let mut r = rng(6);
    for s in grid() {
        let reductive = Arc::new(ReductiveSpace::new(s));
        for _ in 0..5 {
            let hs = HermitianSpace::with_reductive(reductive.clone(), random_metric(&mut r)).unwrap();
            let d = hs.dimension();
            for a in 0..d {
                for b in 0..d {
                    let (ea, eb) = (hs.basis_vector(a), hs.basis_vector(b));
                    let n_ab = nijenhuis_p(hs.brackets(), hs.structure(), &ea, &eb);
                    let n_ba = nijenhuis_p(hs.brackets(), hs.structure(), &eb, &ea);
                    assert!(n_ab.amax() < 1e-10);
                    assert!((n_ab + n_ba).amax() < 1e-10);
                }
            }
        }
    }
}

#[test]
fn u_tensor_solve_matches_closed_form() {
    let mut r = rng(7);
    for s in grid() {
        let reductive = Arc::new(ReductiveSpace::new(s));
        for _ in 0..20 {
            let m = random_metric(&mut r);
            let hs = HermitianSpace::with_reductive(reductive.clone(), m).unwrap();
            let d = hs.dimension();
            let scale = 1.0 + m.a().abs() + m.a() * m.a() / m.c() + m.c() + 1.0 / m.c();
            for a in 0..d {
                for b in 0..d {
                    let solved = u_tensor_solve(&hs, &hs.basis_vector(a), &hs.basis_vector(b));
                    let table = u_tensor_closed_form(s, m, a, b);
                    let residual = (solved - table).amax();
                    assert!(residual < 1e-10 * scale, "{s:?} {m:?} ({a},{b}): {residual}");
                }
            }
        }
    }
}

#[test]
fn connection_is_levi_civita() {
    let mut r = rng(8);
    for s in grid() {
        let reductive = Arc::new(ReductiveSpace::new(s));
        for _ in 0..5 {
            let m = common::random_metric_moderate(&mut r);
            let hs = HermitianSpace::with_reductive(reductive.clone(), m).unwrap();
            let table = ConnectionTable::new(&hs);
            assert!(table.torsion_residual(&hs) < 1e-10);
            assert!(table.metric_compatibility_residual(&hs) < 1e-10);
            assert!(frame_trace_of_u(&hs).amax() < 1e-10);
        }
    }
}

fn vector(d: usize, raw: &[f64]) -> PVector {
    PVector::from_column_slice(&raw[..d])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn u_is_symmetric(
        a in -3.0f64..3.0,
        c in 0.1f64..5.0,
        raw in prop::collection::vec(-2.0f64..2.0, 28),
    ) {
        let s = SpaceParams::new(2, 3).unwrap();
        let hs = HermitianSpace::new(s, MetricParams::new(a, c).unwrap()).unwrap();
        let x = vector(12, &raw[..12]);
        let y = vector(12, &raw[12..24]);
        let residual = (u_tensor_solve(&hs, &x, &y) - u_tensor_solve(&hs, &y, &x)).amax();
        prop_assert!(residual < 1e-12 * (1.0 + (a * a + c * c) / c));
    }

    #[test]
    fn nabla_is_bilinear(
        raw in prop::collection::vec(-2.0f64..2.0, 26),
    ) {
        let s = SpaceParams::new(1, 2).unwrap();
        let hs = HermitianSpace::new(s, MetricParams::new(0.6, 1.3).unwrap()).unwrap();
        let t = ConnectionTable::new(&hs);
        let x = vector(8, &raw[..8]);
        let y = vector(8, &raw[8..16]);
        let w = vector(8, &raw[16..24]);
        let (alpha, beta) = (raw[24], raw[25]);
        let lhs = t.nabla(&x, &(&y * alpha + &w * beta));
        let rhs = t.nabla(&x, &y) * alpha + t.nabla(&x, &w) * beta;
        prop_assert!((lhs - rhs).amax() < 1e-11);
        let torsion = t.nabla(&x, &y) - t.nabla(&y, &x) - hs.brackets().bracket_p(&x, &y);
        prop_assert!(torsion.amax() < 1e-11);
    }
}
