//! The scalar-curvature functional `s(a,c)` on the family `g(a,c)` and its
//! critical point.

use crate::algebra::SpaceParams;
use crate::curvature::{scalar_closed_form, Curvature};
use crate::error::{Error, Result};
use crate::structures::MetricParams;

/// Step used for the finite-difference Hessian.
pub const HESSIAN_STEP: f64 = 1e-4;

/// `s(a,c)`; rejects `c ≤ 0`.
pub fn scalar_functional(space: SpaceParams, a: f64, c: f64) -> Result<f64> {
    Ok(scalar_closed_form(space, MetricParams::new(a, c)?))
}

/// `(∂s/∂a, ∂s/∂c) = (−4pa/c, 2(n − p(c² − a²))/c²)`.
pub fn scalar_gradient(space: SpaceParams, a: f64, c: f64) -> Result<(f64, f64)> {
    MetricParams::new(a, c)?;
    let (n, p) = (space.n() as f64, space.p() as f64);
    Ok((-4.0 * p * a / c, 2.0 * (n - p * (c * c - a * a)) / (c * c)))
}

/// The partials as printed alongside the critical-point statement; a
/// quarter of [`scalar_gradient`], with the same zero set and signs.
pub fn printed_gradient(space: SpaceParams, a: f64, c: f64) -> (f64, f64) {
    let (n, p) = (space.n() as f64, space.p() as f64);
    (-p * a / c, (n - p * (c * c - a * a)) / (2.0 * c * c))
}

/// `4n(n+1) + 4p(1+p) − 4√(np)`.
pub fn maximal_scalar(space: SpaceParams) -> f64 {
    let (n, p) = (space.n() as f64, space.p() as f64);
    4.0 * n * (n + 1.0) + 4.0 * p * (1.0 + p) - 4.0 * libm::sqrt(n * p)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AscentOptions {
    pub start: (f64, f64),
    pub max_iterations: usize,
    pub gradient_tolerance: f64,
    pub armijo: f64,
    pub initial_step: f64,
}

impl Default for AscentOptions {
    fn default() -> Self {
        Self {
            start: (1.0, 1.0),
            max_iterations: 100_000,
            gradient_tolerance: 1e-10,
            armijo: 1e-4,
            initial_step: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Method {
    ClosedForm,
    Ascent(AscentOptions),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum PointKind {
    Maximum,
    Saddle,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CriticalPointResult {
    pub exists: bool,
    pub a_star: Option<f64>,
    pub c_star: Option<f64>,
    pub s_star: Option<f64>,
    pub kind: PointKind,
    pub gradient_norm_at_star: Option<f64>,
    pub iterations: usize,
}

impl CriticalPointResult {
    fn none() -> Self {
        Self {
            exists: false,
            a_star: None,
            c_star: None,
            s_star: None,
            kind: PointKind::None,
            gradient_norm_at_star: None,
            iterations: 0,
        }
    }
}

/// Central-difference Hessian `[[s_aa, s_ac], [s_ca, s_cc]]`.
pub fn finite_difference_hessian(space: SpaceParams, a: f64, c: f64, h: f64) -> Result<[[f64; 2]; 2]> {
    let s = |a: f64, c: f64| scalar_functional(space, a, c);
    let s0 = s(a, c)?;
    let saa = (s(a + h, c)? - 2.0 * s0 + s(a - h, c)?) / (h * h);
    let scc = (s(a, c + h)? - 2.0 * s0 + s(a, c - h)?) / (h * h);
    let sac = (s(a + h, c + h)? - s(a + h, c - h)? - s(a - h, c + h)? + s(a - h, c - h)?) / (4.0 * h * h);
    Ok([[saa, sac], [sac, scc]])
}

pub fn classify(space: SpaceParams, a: f64, c: f64) -> Result<PointKind> {
    let [[saa, sac], [_, scc]] = finite_difference_hessian(space, a, c, HESSIAN_STEP)?;
    let det = saa * scc - sac * sac;
    Ok(if det > 0.0 && saa < 0.0 {
        PointKind::Maximum
    } else if det < 0.0 {
        PointKind::Saddle
    } else {
        PointKind::None
    })
}

fn gradient_norm(space: SpaceParams, a: f64, c: f64) -> Result<f64> {
    let (ga, gc) = scalar_gradient(space, a, c)?;
    Ok(libm::hypot(ga, gc))
}

/// Gradient ascent with halving backtracking under the Armijo condition,
/// plus a guard against steps that flip the directional derivative.
fn ascend(space: SpaceParams, options: &AscentOptions) -> Result<(f64, f64, usize)> {
    let (mut a, mut c) = options.start;
    let mut value = scalar_functional(space, a, c)?;
    for iteration in 0..options.max_iterations {
        let (ga, gc) = scalar_gradient(space, a, c)?;
        let g2 = ga * ga + gc * gc;
        if libm::sqrt(g2) < options.gradient_tolerance {
            return Ok((a, c, iteration));
        }
        let mut step = options.initial_step;
        loop {
            let (na, nc) = (a + step * ga, c + step * gc);
            if nc > 0.0 {
                let candidate = scalar_functional(space, na, nc)?;
                let (na_g, nc_g) = scalar_gradient(space, na, nc)?;
                // Near the optimum the Armijo gain sinks below round-off in
                // `s`; the gradient then decides instead.
                let reversed = na_g * ga + nc_g * gc < -0.9 * g2;
                let gain = options.armijo * step * g2;
                let below_noise = gain < 1e-13 * value.abs().max(1.0);
                let ascends = if below_noise {
                    na_g * na_g + nc_g * nc_g < g2
                } else {
                    candidate >= value + gain
                };
                if ascends && !reversed {
                    a = na;
                    c = nc;
                    value = candidate;
                    break;
                }
            }
            step *= 0.5;
            if step < f64::EPSILON * 1e-4 {
                // no admissible step: the gradient is at round-off level
                return Ok((a, c, iteration));
            }
        }
    }
    Err(Error::NotConverged {
        iterations: options.max_iterations,
        a,
        c,
        gradient_norm: gradient_norm(space, a, c)?,
    })
}

pub fn find_critical_point(space: SpaceParams, method: Method) -> Result<CriticalPointResult> {
    if space.n() == 0 || space.p() == 0 {
        return Ok(CriticalPointResult::none());
    }
    let (a, c, iterations) = match method {
        Method::ClosedForm => {
            let m = MetricParams::critical(space)?;
            (m.a(), m.c(), 0)
        }
        Method::Ascent(options) => ascend(space, &options)?,
    };
    Ok(CriticalPointResult {
        exists: true,
        a_star: Some(a),
        c_star: Some(c),
        s_star: Some(scalar_functional(space, a, c)?),
        kind: classify(space, a, c)?,
        gradient_norm_at_star: Some(gradient_norm(space, a, c)?),
        iterations,
    })
}

/// `max |Ric(IX, IY) − Ric(X, Y)|` for `g(a,c)`, from the curvature oracle.
pub fn hermitian_ricci_residual(space: SpaceParams, m: MetricParams) -> Result<f64> {
    Ok(Curvature::from_params(space, m)?.ricci_hermitian_residual())
}

/// Whether the Ricci tensor of the critical metric is `I`-Hermitian.
pub fn hermitian_ricci_report(space: SpaceParams) -> Result<bool> {
    let m = MetricParams::critical(space)?;
    Ok(hermitian_ricci_residual(space, m)? < 1e-9)
}
