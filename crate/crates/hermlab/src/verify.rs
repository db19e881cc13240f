//! The invariant suites driven by `hermlab verify`.
//!
//! Each check reduces one identity to a worst-case residual over a family
//! of inputs. Detection checks (an intentionally broken input must be
//! rejected) report residual 0 on success and 1 on failure.

use std::sync::Arc;

use hermlab_core::connection::{frame_trace_of_u, u_tensor_closed_form, u_tensor_solve, ConnectionTable};
use hermlab_core::curvature::{ricci_closed_form_matrix, ricci_formula_matrix, scalar_closed_form, sectional_extremes};
use hermlab_core::optimize::{
    find_critical_point, maximal_scalar, scalar_functional, scalar_gradient, AscentOptions, Method,
};
use hermlab_core::structures::{
    check_association, complex_structure, metric_table, nijenhuis_p, omega, EndomorphismField,
};
use hermlab_core::{Curvature, HermitianSpace, MetricParams, PVector, ReductiveSpace, SpaceParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Random metrics drawn per grid point, on top of `(0, 1)`.
pub const RANDOM_METRICS: usize = 3;
/// Random vector tuples per oracle self-test.
pub const ORACLE_SAMPLES: usize = 10;
/// Shear and scale of the non-critical metric used by the Hermitian test.
pub const NONCRITICAL: (f64, f64) = (0.8, 1.7);

#[derive(Debug, Clone, Serialize)]
pub struct CheckSummary {
    pub check: &'static str,
    pub passed: bool,
    pub worst_residual: f64,
    pub worst_n: Option<usize>,
    pub worst_p: Option<usize>,
    pub cases: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub tolerance: f64,
    pub seed: u64,
    pub samples: usize,
    pub spaces: Vec<[usize; 2]>,
    pub checks: Vec<CheckSummary>,
}

struct Ledger {
    tolerance: f64,
    checks: Vec<CheckSummary>,
}

impl Ledger {
    fn record(&mut self, check: &'static str, space: SpaceParams, residual: f64) {
        let index = match self.checks.iter().position(|c| c.check == check) {
            Some(i) => i,
            None => {
                self.checks.push(CheckSummary {
                    check,
                    passed: true,
                    worst_residual: 0.0,
                    worst_n: None,
                    worst_p: None,
                    cases: 0,
                });
                self.checks.len() - 1
            }
        };
        let entry = &mut self.checks[index];
        entry.cases += 1;
        if residual.is_nan() || residual > self.tolerance {
            entry.passed = false;
        }
        if residual.is_nan() || residual > entry.worst_residual || entry.worst_n.is_none() {
            entry.worst_residual = residual;
            entry.worst_n = Some(space.n());
            entry.worst_p = Some(space.p());
        }
    }

    fn detect(&mut self, check: &'static str, space: SpaceParams, detected: bool) {
        self.record(check, space, if detected { 0.0 } else { 1.0 });
    }
}

fn random_vector(rng: &mut ChaCha8Rng, d: usize) -> PVector {
    PVector::from_fn(d, |_, _| rng.random_range(-1.0..1.0))
}

fn bracket_residual(reductive: &ReductiveSpace) -> f64 {
    let alg = reductive.algebra();
    let table = reductive.brackets();
    let d = alg.p_dimension();
    let e = |k: usize| PVector::from_fn(d, |i, _| if i == k { 1.0 } else { 0.0 });
    let mut worst = 0.0f64;
    for i in 0..alg.dimension() {
        for j in 0..d {
            let dense = alg
                .bracket(&alg.basis_element(i), &alg.basis_element(j))
                .expect("same space");
            let c = dense.coeffs();
            if i < d {
                let (bp, bh) = table.bracket_split(&e(i), &e(j));
                for k in 0..d {
                    worst = worst.max((bp[k] - c[k]).abs());
                }
                for k in 0..bh.len() {
                    worst = worst.max((bh[k] - c[d + k]).abs());
                }
            } else {
                let h = PVector::from_fn(alg.dimension() - d, |k, _| if k == i - d { 1.0 } else { 0.0 });
                let v = table.ad_h(&h, &e(j));
                for k in 0..d {
                    worst = worst.max((v[k] - c[k]).abs());
                }
                for &x in &c[d..] {
                    worst = worst.max(x.abs());
                }
            }
        }
    }
    worst
}

/// Swaps the images of `Y¹₁` and `Y¹₂`: still squares to `−1`, but tames
/// `ω` with the wrong sign.
fn faulty_structure(space: SpaceParams, m: MetricParams) -> EndomorphismField {
    let mut mat = complex_structure(space, m).matrix().clone();
    mat[(2, 1)] = -1.0;
    mat[(1, 2)] = 1.0;
    EndomorphismField::new(mat)
}

fn metric_checks(ledger: &mut Ledger, reductive: &Arc<ReductiveSpace>, m: MetricParams, rng: &mut ChaCha8Rng) {
    let space = reductive.algebra().space();
    let hs = HermitianSpace::with_reductive(reductive.clone(), m).expect("valid parameters");
    let d = hs.dimension();
    let i = hs.structure();
    ledger.record("complex_structure_square", space, i.square_residual());

    let assoc = check_association(&omega(space), i);
    ledger.record("omega_compatibility", space, assoc.compatibility_residual);
    ledger.detect("associated_metric_positive", space, assoc.positive);
    if space.n() > 0 {
        let fault = check_association(&omega(space), &faulty_structure(space, m));
        ledger.detect("injected_fault_rejected", space, !fault.positive);
    }

    let g = hs.metric();
    ledger.record(
        "metric_table",
        space,
        (g.matrix() - metric_table(space, m).matrix()).amax(),
    );
    let im = i.matrix();
    ledger.record(
        "hermitian_metric",
        space,
        (im.transpose() * g.matrix() * im - g.matrix()).amax(),
    );
    let mut frame = 0.0f64;
    for (a, za) in hs.frame().iter().enumerate() {
        for (b, zb) in hs.frame().iter().enumerate() {
            frame = frame.max((hs.inner(za, zb) - if a == b { 1.0 } else { 0.0 }).abs());
        }
    }
    ledger.record("frame_orthonormal", space, frame);

    let mut nijenhuis = 0.0f64;
    let mut u_table = 0.0f64;
    let mut u_symmetry = 0.0f64;
    for a in 0..d {
        for b in 0..d {
            let (ea, eb) = (hs.basis_vector(a), hs.basis_vector(b));
            nijenhuis = nijenhuis.max(nijenhuis_p(hs.brackets(), i, &ea, &eb).amax());
            let u = u_tensor_solve(&hs, &ea, &eb);
            u_table = u_table.max((&u - u_tensor_closed_form(space, m, a, b)).amax());
            u_symmetry = u_symmetry.max((u - u_tensor_solve(&hs, &eb, &ea)).amax());
        }
    }
    ledger.record("nijenhuis_vanishes", space, nijenhuis);
    ledger.record("u_tensor_closed_form", space, u_table);
    ledger.record("u_tensor_symmetric", space, u_symmetry);
    let connection = ConnectionTable::new(&hs);
    ledger.record("connection_torsion_free", space, connection.torsion_residual(&hs));
    ledger.record(
        "connection_metric",
        space,
        connection.metric_compatibility_residual(&hs),
    );
    ledger.record("frame_trace_of_u", space, frame_trace_of_u(&hs).amax());

    let table = ricci_closed_form_matrix(space, m);
    let formula = ricci_formula_matrix(&hs);
    let curvature = Curvature::new(hs);
    let oracle = curvature.ricci();
    ledger.record(
        "ricci_table_vs_formula",
        space,
        (table.matrix() - formula.matrix()).amax(),
    );
    ledger.record(
        "ricci_table_vs_oracle",
        space,
        (table.matrix() - oracle.matrix()).amax(),
    );
    ledger.record(
        "scalar_trace_vs_closed_form",
        space,
        (curvature.scalar_trace() - scalar_closed_form(space, m)).abs(),
    );

    let (mut antisym, mut pair, mut bianchi, mut plane) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..ORACLE_SAMPLES {
        let [x, y, z, w] = [0; 4].map(|_| random_vector(rng, d));
        let r = curvature.riemann_form(&x, &y, &z, &w);
        antisym = antisym
            .max((r + curvature.riemann_form(&y, &x, &z, &w)).abs())
            .max((r + curvature.riemann_form(&x, &y, &w, &z)).abs());
        pair = pair.max((r - curvature.riemann_form(&z, &w, &x, &y)).abs());
        let cyclic = curvature.riemann(&x, &y, &z) + curvature.riemann(&y, &z, &x) + curvature.riemann(&z, &x, &y);
        bianchi = bianchi.max(cyclic.amax());
        let (s, t) = (rng.random_range(0.5..2.0), rng.random_range(-1.0..1.0));
        let u = &x * s + &y * t;
        let v = &y * (1.0 / s);
        if let (Ok(k0), Ok(k1)) = (curvature.sectional(&x, &y), curvature.sectional(&u, &v)) {
            plane = plane.max((k0 - k1).abs());
        }
    }
    ledger.record("riemann_antisymmetry", space, antisym);
    ledger.record("riemann_pair_symmetry", space, pair);
    ledger.record("riemann_first_bianchi", space, bianchi);
    ledger.record("sectional_plane_invariance", space, plane);

    let (ga, gc) = scalar_gradient(space, m.a(), m.c()).expect("valid parameters");
    let h = 1e-5;
    let f = |a, c| scalar_functional(space, a, c).expect("valid parameters");
    let fa = (f(m.a() + h, m.c()) - f(m.a() - h, m.c())) / (2.0 * h);
    let fc = (f(m.a(), m.c() + h) - f(m.a(), m.c() - h)) / (2.0 * h);
    let scale = 1.0 + ga.abs().max(gc.abs());
    ledger.record(
        "gradient_finite_difference",
        space,
        (ga - fa).abs().max((gc - fc).abs()) / scale,
    );
}

fn space_checks(ledger: &mut Ledger, space: SpaceParams, samples: usize, seed: u64) {
    let (n, p) = (space.n(), space.p());
    if n > 0 && p > 0 {
        let ascent = find_critical_point(space, Method::Ascent(AscentOptions::default()));
        match ascent {
            Ok(r) => {
                let expected = MetricParams::critical(space).expect("both ranks positive");
                let da = r.a_star.map_or(f64::INFINITY, |a| (a - expected.a()).abs());
                let dc = r.c_star.map_or(f64::INFINITY, |c| (c - expected.c()).abs());
                ledger.record("critical_point_ascent", space, da.max(dc));
                let ds = r.s_star.map_or(f64::INFINITY, |s| (s - maximal_scalar(space)).abs());
                ledger.record("critical_value", space, ds);
            }
            Err(_) => ledger.record("critical_point_ascent", space, f64::INFINITY),
        }
        let critical = Curvature::from_params(space, MetricParams::critical(space).expect("both ranks positive"))
            .expect("valid parameters");
        ledger.record("critical_ricci_hermitian", space, critical.ricci_hermitian_residual());
        let generic = MetricParams::new(NONCRITICAL.0, NONCRITICAL.1).expect("valid parameters");
        let generic = Curvature::from_params(space, generic).expect("valid parameters");
        ledger.detect(
            "noncritical_ricci_not_hermitian",
            space,
            generic.ricci_hermitian_residual() > 1e-6,
        );
        if n == p {
            let round =
                Curvature::from_params(space, MetricParams::new(0.0, 1.0).expect("valid")).expect("valid parameters");
            let g = round.hermitian_space().metric().matrix().clone();
            let residual = (round.ricci().matrix() - g * (2.0 * n as f64)).amax();
            ledger.record("einstein_equal_ranks", space, residual);
        } else {
            ledger.detect(
                "einstein_absent_at_critical",
                space,
                critical
                    .einstein_constant(hermlab_core::curvature::EINSTEIN_TOLERANCE)
                    .is_none(),
            );
        }
    } else {
        let r = find_critical_point(space, Method::ClosedForm);
        ledger.detect("no_critical_point_degenerate", space, matches!(r, Ok(r) if !r.exists));
    }
    if n >= 1 && n <= p {
        match sectional_extremes(space, samples, seed, ledger.tolerance) {
            Ok(r) => {
                let named = (r.named_min - r.bound_low)
                    .abs()
                    .max((r.named_max - r.bound_high).abs());
                ledger.record("sectional_named_bounds", space, named);
                ledger.record("sectional_samples_in_bounds", space, 1.0 - r.samples_in_bounds);
            }
            Err(_) => ledger.record("sectional_named_bounds", space, f64::INFINITY),
        }
    }
}

/// Runs every suite on every space, in order; deterministic for fixed
/// `seed`.
pub fn run(spaces: &[SpaceParams], samples: usize, seed: u64, tolerance: f64) -> VerifyReport {
    let mut ledger = Ledger {
        tolerance,
        checks: Vec::new(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for &space in spaces {
        let reductive = Arc::new(ReductiveSpace::new(space));
        ledger.record("bracket_table", space, bracket_residual(&reductive));
        ledger.record(
            "reductive_splitting",
            space,
            reductive.brackets().reductivity_residual(),
        );
        let mut metrics = vec![MetricParams::new(0.0, 1.0).expect("valid")];
        for _ in 0..RANDOM_METRICS {
            let a = rng.random_range(-2.0..2.0);
            let c = rng.random_range(0.3..3.0);
            metrics.push(MetricParams::new(a, c).expect("c is positive"));
        }
        for m in metrics {
            metric_checks(&mut ledger, &reductive, m, &mut rng);
        }
        let sectional_seed = rng.random::<u64>();
        space_checks(&mut ledger, space, samples, sectional_seed);
    }
    VerifyReport {
        passed: ledger.checks.iter().all(|c| c.passed),
        tolerance,
        seed,
        samples,
        spaces: spaces.iter().map(|s| [s.n(), s.p()]).collect(),
        checks: ledger.checks,
    }
}
