use std::io::Write;

use hermlab_core::curvature::{curvature_report, sectional_extremes, Curvature};
use hermlab_core::optimize::{find_critical_point, scalar_functional, AscentOptions, Method, PointKind};
use hermlab_core::{Error as CoreError, MetricParams, SectionalReport, SpaceParams};
use serde::Serialize;

use crate::cli::{OptimizeArgs, ReportArgs, ScanArgs, SectionalArgs, Space, VerifyArgs};
use crate::output::{float, optional_float, write_json, Format, Table};
use crate::{verify, Failure};

/// Result of a command: bytes to emit plus whether the outcome was
/// mathematically negative (exit 1).
pub struct Rendered {
    pub bytes: Vec<u8>,
    pub negative: Option<String>,
}

fn usage(e: CoreError) -> Failure {
    Failure::Usage(e.to_string())
}

fn space(s: Space) -> Result<SpaceParams, Failure> {
    SpaceParams::new(s.n, s.p).map_err(usage)
}

fn render_json<T: Serialize>(value: &T) -> Result<Vec<u8>, Failure> {
    let mut buf = Vec::new();
    write_json(&mut buf, value)?;
    Ok(buf)
}

fn render_table(table: &Table) -> Result<Vec<u8>, Failure> {
    let mut buf = Vec::new();
    table.write(&mut buf)?;
    Ok(buf)
}

pub fn verify(args: &VerifyArgs, seed: u64) -> Result<Rendered, Failure> {
    if args.tolerance.is_nan() || args.tolerance <= 0.0 {
        return Err(Failure::Usage(format!(
            "tolerance must be positive, got {}",
            args.tolerance
        )));
    }
    let spaces = match (args.n, args.p) {
        (Some(n), Some(p)) => vec![space(Space { n, p })?],
        _ => {
            let (n_max, p_max) = (args.n_max.unwrap_or(3), args.p_max.unwrap_or(3));
            let grid: Vec<SpaceParams> = (0..=n_max)
                .flat_map(|n| (0..=p_max).map(move |p| (n, p)))
                .filter(|&(n, p)| n + p > 0)
                .map(|(n, p)| SpaceParams::new(n, p).expect("n + p > 0"))
                .collect();
            if grid.is_empty() {
                return Err(Failure::Usage(String::from("the (n, p) grid is empty")));
            }
            grid
        }
    };
    let report = verify::run(&spaces, args.samples, seed, args.tolerance);
    let bytes = match args.common.output {
        Format::Json => render_json(&report)?,
        Format::Csv => {
            let mut t = Table::new(vec!["check", "passed", "worst_residual", "worst_n", "worst_p", "cases"]);
            for c in &report.checks {
                t.push(vec![
                    c.check.to_string(),
                    c.passed.to_string(),
                    float(c.worst_residual),
                    c.worst_n.map(|v| v.to_string()).unwrap_or_default(),
                    c.worst_p.map(|v| v.to_string()).unwrap_or_default(),
                    c.cases.to_string(),
                ]);
            }
            render_table(&t)?
        }
    };
    let failed: Vec<&str> = report.checks.iter().filter(|c| !c.passed).map(|c| c.check).collect();
    Ok(Rendered {
        bytes,
        negative: (!failed.is_empty()).then(|| format!("failed checks: {}", failed.join(", "))),
    })
}

#[derive(Debug, Serialize)]
struct ReportView {
    n: usize,
    p: usize,
    a: f64,
    c: f64,
    basis: Vec<String>,
    ricci: Vec<Vec<f64>>,
    scalar_trace: f64,
    scalar_closed_form: f64,
    ricci_eigen_paper: Vec<f64>,
    ricci_operator_spectrum: Vec<f64>,
    einstein_constant: Option<f64>,
}

pub fn report(args: &ReportArgs) -> Result<Rendered, Failure> {
    let s = space(args.space)?;
    let m = MetricParams::new(args.a, args.c).map_err(usage)?;
    let r = curvature_report(s, m).map_err(usage)?;
    let einstein = Curvature::from_params(s, m)
        .map_err(usage)?
        .einstein_constant(args.tolerance);
    let basis: Vec<String> = (0..s.p_dimension()).map(|k| s.p_tag(k).to_string()).collect();
    let view = ReportView {
        n: r.n,
        p: r.p,
        a: r.a,
        c: r.c,
        ricci: r.ricci.rows(),
        basis,
        scalar_trace: r.scalar_trace,
        scalar_closed_form: r.scalar_closed_form,
        ricci_eigen_paper: r.ricci_eigen_paper,
        ricci_operator_spectrum: r.ricci_operator_spectrum,
        einstein_constant: einstein,
    };
    let bytes = match args.common.output {
        Format::Json => render_json(&view)?,
        Format::Csv => {
            let mut t = Table::new(vec!["quantity", "row", "column", "value"]);
            let scalar =
                |t: &mut Table, name: &str, v: String| t.push(vec![name.into(), String::new(), String::new(), v]);
            for (name, v) in [("n", view.n), ("p", view.p)] {
                scalar(&mut t, name, v.to_string());
            }
            scalar(&mut t, "a", float(view.a));
            scalar(&mut t, "c", float(view.c));
            for (i, row) in view.ricci.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    t.push(vec![
                        "ricci".into(),
                        view.basis[i].clone(),
                        view.basis[j].clone(),
                        float(*v),
                    ]);
                }
            }
            scalar(&mut t, "scalar_trace", float(view.scalar_trace));
            scalar(&mut t, "scalar_closed_form", float(view.scalar_closed_form));
            for (name, list) in [
                ("ricci_eigen_paper", &view.ricci_eigen_paper),
                ("ricci_operator_spectrum", &view.ricci_operator_spectrum),
            ] {
                for (k, v) in list.iter().enumerate() {
                    t.push(vec![name.into(), k.to_string(), String::new(), float(*v)]);
                }
            }
            scalar(&mut t, "einstein_constant", optional_float(view.einstein_constant));
            render_table(&t)?
        }
    };
    Ok(Rendered { bytes, negative: None })
}

#[derive(Debug, Serialize)]
struct OptimizeView {
    n: usize,
    p: usize,
    method: &'static str,
    exists: bool,
    a_star: Option<f64>,
    c_star: Option<f64>,
    s_star: Option<f64>,
    kind: PointKind,
    gradient_norm_at_star: Option<f64>,
    iterations: usize,
}

pub fn optimize(args: &OptimizeArgs) -> Result<Rendered, Failure> {
    let s = space(args.space)?;
    if args.tolerance.is_nan() || args.tolerance <= 0.0 {
        return Err(Failure::Usage(format!(
            "tolerance must be positive, got {}",
            args.tolerance
        )));
    }
    let method = if args.closed_form {
        Method::ClosedForm
    } else {
        Method::Ascent(AscentOptions {
            gradient_tolerance: args.tolerance,
            ..AscentOptions::default()
        })
    };
    let r = match find_critical_point(s, method) {
        Ok(r) => r,
        Err(e @ CoreError::NotConverged { .. }) => return Err(Failure::Negative(e.to_string())),
        Err(e) => return Err(usage(e)),
    };
    let view = OptimizeView {
        n: s.n(),
        p: s.p(),
        method: if args.closed_form { "closed_form" } else { "ascent" },
        exists: r.exists,
        a_star: r.a_star,
        c_star: r.c_star,
        s_star: r.s_star,
        kind: r.kind,
        gradient_norm_at_star: r.gradient_norm_at_star,
        iterations: r.iterations,
    };
    let bytes = match args.common.output {
        Format::Json => render_json(&view)?,
        Format::Csv => {
            let mut t = Table::new(vec![
                "n",
                "p",
                "method",
                "exists",
                "a_star",
                "c_star",
                "s_star",
                "kind",
                "gradient_norm_at_star",
                "iterations",
            ]);
            let kind = match view.kind {
                PointKind::Maximum => "maximum",
                PointKind::Saddle => "saddle",
                PointKind::None => "none",
            };
            t.push(vec![
                view.n.to_string(),
                view.p.to_string(),
                view.method.into(),
                view.exists.to_string(),
                optional_float(view.a_star),
                optional_float(view.c_star),
                optional_float(view.s_star),
                kind.into(),
                optional_float(view.gradient_norm_at_star),
                view.iterations.to_string(),
            ]);
            render_table(&t)?
        }
    };
    let negative = (!r.exists).then(|| {
        format!(
            "no critical points: s(a,c) has none when n*p = 0 (n = {}, p = {})",
            s.n(),
            s.p()
        )
    });
    Ok(Rendered { bytes, negative })
}

pub fn sectional(args: &SectionalArgs, seed: u64) -> Result<Rendered, Failure> {
    let s = space(args.space)?;
    if s.n() == 0 || s.n() > s.p() {
        return Err(Failure::Usage(format!(
            "sectional requires 1 <= n <= p, got n = {}, p = {}",
            s.n(),
            s.p()
        )));
    }
    if args.tolerance.is_nan() || args.tolerance < 0.0 {
        return Err(Failure::Usage(format!(
            "tolerance must be nonnegative, got {}",
            args.tolerance
        )));
    }
    let r: SectionalReport = sectional_extremes(s, args.samples, seed, args.tolerance).map_err(usage)?;
    let bytes = match args.common.output {
        Format::Json => render_json(&r)?,
        Format::Csv => {
            let mut t = Table::new(vec![
                "n",
                "p",
                "c",
                "regime",
                "bound_low",
                "bound_high",
                "observed_min",
                "observed_max",
                "argmin_bivector",
                "argmax_bivector",
                "named_min",
                "named_max",
                "samples",
                "seed",
                "samples_in_bounds",
                "plane",
                "curvature",
            ]);
            for plane in &r.named {
                t.push(vec![
                    r.n.to_string(),
                    r.p.to_string(),
                    float(r.c),
                    r.regime.to_string(),
                    float(r.bound_low),
                    float(r.bound_high),
                    float(r.observed_min),
                    float(r.observed_max),
                    r.argmin_bivector.clone(),
                    r.argmax_bivector.clone(),
                    float(r.named_min),
                    float(r.named_max),
                    r.samples.to_string(),
                    r.seed.to_string(),
                    float(r.samples_in_bounds),
                    plane.label.clone(),
                    float(plane.curvature),
                ]);
            }
            render_table(&t)?
        }
    };
    Ok(Rendered { bytes, negative: None })
}

#[derive(Debug, Serialize)]
struct ScanPoint {
    a: f64,
    c: f64,
    s: f64,
}

#[derive(Debug, Serialize)]
struct ScanView {
    n: usize,
    p: usize,
    points: Vec<ScanPoint>,
}

fn axis(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    if steps == 1 {
        return vec![lo];
    }
    (0..steps)
        .map(|k| lo + (hi - lo) * k as f64 / (steps - 1) as f64)
        .collect()
}

pub fn scan(args: &ScanArgs) -> Result<Rendered, Failure> {
    let s = space(args.space)?;
    let finite = [args.a_min, args.a_max, args.c_min, args.c_max]
        .iter()
        .all(|v| v.is_finite());
    if !finite || args.a_min > args.a_max || args.c_min > args.c_max {
        return Err(Failure::Usage(String::from(
            "scan needs finite a_min <= a_max and c_min <= c_max",
        )));
    }
    if args.c_min <= 0.0 {
        return Err(Failure::Usage(format!("c_min must be positive, got {}", args.c_min)));
    }
    if args.steps == 0 {
        return Err(Failure::Usage(String::from("steps must be at least 1")));
    }
    let mut points = Vec::with_capacity(args.steps * args.steps);
    for &a in &axis(args.a_min, args.a_max, args.steps) {
        for &c in &axis(args.c_min, args.c_max, args.steps) {
            points.push(ScanPoint {
                a,
                c,
                s: scalar_functional(s, a, c).map_err(usage)?,
            });
        }
    }
    let view = ScanView {
        n: s.n(),
        p: s.p(),
        points,
    };
    let bytes = match args.common.output {
        Format::Json => render_json(&view)?,
        Format::Csv => {
            let mut t = Table::new(vec!["a", "c", "s"]);
            for q in &view.points {
                t.push(vec![float(q.a), float(q.c), float(q.s)]);
            }
            render_table(&t)?
        }
    };
    Ok(Rendered { bytes, negative: None })
}

pub fn emit(bytes: &[u8], out: &mut dyn Write) -> std::io::Result<()> {
    out.write_all(bytes)?;
    out.flush()
}
