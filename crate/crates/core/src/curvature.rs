//! Riemann, Ricci, scalar and sectional curvature of `g(a,c)`.
//!
//! [`Curvature::riemann`] is the ground truth: the curvature of the invariant
//! connection at the origin,
//! `R(X,Y)W = D_X D_Y W − D_Y D_X W − D_{[X,Y]_p} W − [[X,Y]_h, W]`.
//! The Ricci tensor is then available three ways: its trace
//! ([`Curvature::ricci`]), the structure-constant quadratic form
//! ([`ricci_formula`]) and the explicit table ([`ricci_closed_form`]).

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::algebra::{BasisTag, Factor, PVector, SpaceParams};
use crate::connection::{frame_trace_of_u, ConnectionTable};
use crate::error::{Error, Result};
use crate::structures::{BilinearForm, HermitianSpace, MetricParams, Provenance};

/// Entrywise tolerance for `Ric = λ·g`.
pub const EINSTEIN_TOLERANCE: f64 = 1e-9;
/// Slack allowed when testing sampled curvatures against the regime bounds.
pub const SECTIONAL_BOUND_TOLERANCE: f64 = 1e-8;
const DEGENERATE_PLANE: f64 = 1e-12;

/// Connection and curvature of one metric `g(a,c)`.
#[derive(Debug, Clone)]
pub struct Curvature {
    hs: HermitianSpace,
    connection: ConnectionTable,
}

impl Curvature {
    pub fn new(hs: HermitianSpace) -> Self {
        let connection = ConnectionTable::new(&hs);
        Self { hs, connection }
    }

    pub fn from_params(space: SpaceParams, m: MetricParams) -> Result<Self> {
        Ok(Self::new(HermitianSpace::new(space, m)?))
    }

    pub fn hermitian_space(&self) -> &HermitianSpace {
        &self.hs
    }

    pub fn connection(&self) -> &ConnectionTable {
        &self.connection
    }

    /// `R(X,Y)W`.
    pub fn riemann(&self, x: &PVector, y: &PVector, w: &PVector) -> PVector {
        let d = &self.connection;
        let (xy_p, xy_h) = self.hs.brackets().bracket_split(x, y);
        d.nabla(x, &d.nabla(y, w)) - d.nabla(y, &d.nabla(x, w)) - d.nabla(&xy_p, w) - self.hs.brackets().ad_h(&xy_h, w)
    }

    /// `g(R(X,Y)W, V)`.
    pub fn riemann_form(&self, x: &PVector, y: &PVector, w: &PVector, v: &PVector) -> f64 {
        self.hs.inner(&self.riemann(x, y, w), v)
    }

    /// `Ric(X,Y) = Σᵢ g(R(Zᵢ,X)Y, Zᵢ)` over the orthonormal frame.
    pub fn ricci(&self) -> BilinearForm {
        let d = self.hs.dimension();
        let basis: Vec<PVector> = (0..d).map(|k| self.hs.basis_vector(k)).collect();
        let mut sym = DMatrix::zeros(d, d);
        for a in 0..d {
            for b in a..d {
                let value: f64 = self
                    .hs
                    .frame()
                    .iter()
                    .map(|z| self.riemann_form(z, &basis[a], &basis[b], z))
                    .sum();
                sym[(a, b)] = value;
                sym[(b, a)] = value;
            }
        }
        let m = self.hs.metric_params();
        BilinearForm::new(sym, Provenance::Ricci { a: m.a(), c: m.c() })
    }

    /// `Ricᵢⱼ gⁱʲ` of the traced Riemann tensor.
    pub fn scalar_trace(&self) -> f64 {
        contract(&self.ricci(), self.hs.metric_inverse())
    }

    /// Eigenvalues of the Ricci endomorphism `g⁻¹·Ric`, ascending.
    pub fn ricci_operator_spectrum(&self) -> Vec<f64> {
        operator_spectrum(&self.ricci(), self.hs.metric())
    }

    /// `Some(λ)` when `Ric = λ·g` entrywise within `tolerance`.
    pub fn einstein_constant(&self, tolerance: f64) -> Option<f64> {
        let ric = self.ricci();
        let g = self.hs.metric();
        let lambda = contract(&ric, self.hs.metric_inverse()) / self.hs.dimension() as f64;
        let residual = (ric.matrix() - g.matrix() * lambda).amax();
        (residual <= tolerance).then_some(lambda)
    }

    /// `max |Ric(IX, IY) − Ric(X, Y)|` over basis pairs.
    pub fn ricci_hermitian_residual(&self) -> f64 {
        let ric = self.ricci();
        let i = self.hs.structure().matrix();
        (i.transpose() * ric.matrix() * i - ric.matrix()).amax()
    }

    /// `K(A,B) = g(R(A,B)B, A) / (|A|²|B|² − g(A,B)²)`.
    pub fn sectional(&self, a: &PVector, b: &PVector) -> Result<f64> {
        let hs = &self.hs;
        let ab = hs.inner(a, b);
        let den = hs.norm_squared(a) * hs.norm_squared(b) - ab * ab;
        if den.is_nan() || den < DEGENERATE_PLANE {
            return Err(Error::DegeneratePlane(den));
        }
        Ok(self.riemann_form(a, b, b, a) / den)
    }
}

/// `Σᵢⱼ Aᵢⱼ Bⁱʲ`.
fn contract(form: &BilinearForm, inverse: &DMatrix<f64>) -> f64 {
    form.matrix().component_mul(&inverse.transpose()).sum()
}

fn operator_spectrum(form: &BilinearForm, metric: &BilinearForm) -> Vec<f64> {
    // g⁻¹·Ric is similar to L⁻¹ Ric L⁻ᵀ with g = LLᵀ.
    let l = metric
        .matrix()
        .clone()
        .cholesky()
        .expect("metric is positive definite")
        .unpack();
    let l_inv = l.try_inverse().expect("Cholesky factor is invertible");
    let s = &l_inv * form.matrix() * l_inv.transpose();
    let s = (&s + s.transpose()) * 0.5;
    let mut values: Vec<f64> = s.symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(f64::total_cmp);
    values
}

/// The structure-constant quadratic form for `Ric(X, X)`.
pub fn ricci_formula(hs: &HermitianSpace, x: &PVector) -> f64 {
    let br = hs.brackets();
    let frame = hs.frame();
    let z_sum = frame_trace_of_u(hs);
    let mut total = 0.0;
    for zi in frame {
        let (xz_p, xz_h) = br.bracket_split(x, zi);
        total -= 0.5 * hs.norm_squared(&xz_p);
        total -= 0.5 * hs.inner(&br.bracket_p(x, &xz_p), zi);
        // [X, H]_p = −[H, X] for H ∈ h
        total += hs.inner(&br.ad_h(&xz_h, x), zi);
    }
    for zi in frame {
        for zj in frame {
            let t = hs.inner(&br.bracket_p(zi, zj), x);
            total += 0.25 * t * t;
        }
    }
    total - hs.inner(&br.bracket_p(&z_sum, x), x)
}

/// Polarization `½(Q(X+Y) − Q(X) − Q(Y))` of [`ricci_formula`].
pub fn ricci_formula_bilinear(hs: &HermitianSpace, x: &PVector, y: &PVector) -> f64 {
    0.5 * (ricci_formula(hs, &(x + y)) - ricci_formula(hs, x) - ricci_formula(hs, y))
}

pub fn ricci_formula_matrix(hs: &HermitianSpace) -> BilinearForm {
    let d = hs.dimension();
    let mut sym = DMatrix::zeros(d, d);
    for a in 0..d {
        for b in a..d {
            let v = ricci_formula_bilinear(hs, &hs.basis_vector(a), &hs.basis_vector(b));
            sym[(a, b)] = v;
            sym[(b, a)] = v;
        }
    }
    let m = hs.metric_params();
    BilinearForm::new(sym, Provenance::Ricci { a: m.a(), c: m.c() })
}

/// The explicit Ricci table on p-basis vectors `e_i`, `e_j`.
pub fn ricci_closed_form(space: SpaceParams, m: MetricParams, i: usize, j: usize) -> f64 {
    let (n, p) = (space.n() as f64, space.p() as f64);
    let (a, c) = (m.a(), m.c());
    let q = a * a + c * c;
    match (space.p_tag(i), space.p_tag(j)) {
        (BasisTag::X(Factor::First), BasisTag::X(Factor::First)) => 2.0 * (n + p * a * a) / (c * c),
        (BasisTag::X(Factor::Second), BasisTag::X(Factor::Second)) => 2.0 * (n * a * a + p * q * q) / (c * c),
        (BasisTag::X(_), BasisTag::X(_)) => -2.0 * a / (c * c) * (n + p * q),
        (BasisTag::Y(Factor::First, _), BasisTag::Y(Factor::First, _)) if i == j => 2.0 * (1.0 + n - 1.0 / c),
        (BasisTag::Y(Factor::Second, _), BasisTag::Y(Factor::Second, _)) if i == j => 2.0 * (1.0 + p - q / c),
        _ => 0.0,
    }
}

pub fn ricci_closed_form_matrix(space: SpaceParams, m: MetricParams) -> BilinearForm {
    let d = space.p_dimension();
    let sym = DMatrix::from_fn(d, d, |i, j| ricci_closed_form(space, m, i, j));
    BilinearForm::new(sym, Provenance::Ricci { a: m.a(), c: m.c() })
}

/// `s = 4n(1 + n − 1/(2c)) + 4p(1 + p − (a² + c²)/(2c))`.
pub fn scalar_closed_form(space: SpaceParams, m: MetricParams) -> f64 {
    let (n, p) = (space.n() as f64, space.p() as f64);
    let (a, c) = (m.a(), m.c());
    4.0 * n * (1.0 + n - 1.0 / (2.0 * c)) + 4.0 * p * (1.0 + p - (a * a + c * c) / (2.0 * c))
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ScalarCurvature {
    pub trace: f64,
    pub closed_form: f64,
}

pub fn scalar_curvature(space: SpaceParams, m: MetricParams) -> Result<ScalarCurvature> {
    let curvature = Curvature::from_params(space, m)?;
    Ok(ScalarCurvature {
        trace: curvature.scalar_trace(),
        closed_form: scalar_closed_form(space, m),
    })
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct RicciEigenvalues {
    /// `r̃₁, r̃₂` (eigenvalues of the coordinate block `[[x, z], [z, y]]`),
    /// then the `2n` first-factor and `2p` second-factor values.
    pub paper_values: Vec<f64>,
    /// Spectrum of `g⁻¹·Ric`, ascending.
    pub operator_spectrum: Vec<f64>,
}

/// `(r̃₁, r̃₂) = (x + y ± √((x − y)² + 4z²)) / 2`.
pub fn ricci_block_eigenvalues(space: SpaceParams, m: MetricParams) -> (f64, f64) {
    let x2 = space.x_index(Factor::Second);
    let x = ricci_closed_form(space, m, 0, 0);
    let y = ricci_closed_form(space, m, x2, x2);
    let z = ricci_closed_form(space, m, 0, x2);
    let root = libm::sqrt((x - y) * (x - y) + 4.0 * z * z);
    ((x + y + root) / 2.0, (x + y - root) / 2.0)
}

pub fn ricci_closed_form_eigenvalues(space: SpaceParams, m: MetricParams) -> Vec<f64> {
    let (r1, r2) = ricci_block_eigenvalues(space, m);
    let mut values = alloc::vec![r1, r2];
    for factor in Factor::BOTH {
        if space.rank(factor) > 0 {
            let k = space.y_index(factor, 1);
            let v = ricci_closed_form(space, m, k, k);
            values.extend(core::iter::repeat_n(v, 2 * space.rank(factor)));
        }
    }
    values
}

pub fn ricci_eigenvalues(space: SpaceParams, m: MetricParams) -> Result<RicciEigenvalues> {
    let curvature = Curvature::from_params(space, m)?;
    Ok(RicciEigenvalues {
        paper_values: ricci_closed_form_eigenvalues(space, m),
        operator_spectrum: curvature.ricci_operator_spectrum(),
    })
}

pub fn einstein_check(space: SpaceParams, m: MetricParams) -> Result<Option<f64>> {
    Ok(Curvature::from_params(space, m)?.einstein_constant(EINSTEIN_TOLERANCE))
}

/// Ricci tensor, scalar curvature by both routes and both eigenvalue lists.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CurvatureReport {
    pub n: usize,
    pub p: usize,
    pub a: f64,
    pub c: f64,
    pub ricci: BilinearForm,
    pub scalar_trace: f64,
    pub scalar_closed_form: f64,
    pub ricci_eigen_paper: Vec<f64>,
    pub ricci_operator_spectrum: Vec<f64>,
    pub einstein_constant: Option<f64>,
}

pub fn curvature_report(space: SpaceParams, m: MetricParams) -> Result<CurvatureReport> {
    let curvature = Curvature::from_params(space, m)?;
    let ricci = curvature.ricci();
    let hs = curvature.hermitian_space();
    Ok(CurvatureReport {
        n: space.n(),
        p: space.p(),
        a: m.a(),
        c: m.c(),
        scalar_trace: contract(&ricci, hs.metric_inverse()),
        scalar_closed_form: scalar_closed_form(space, m),
        ricci_eigen_paper: ricci_closed_form_eigenvalues(space, m),
        ricci_operator_spectrum: operator_spectrum(&ricci, hs.metric()),
        einstein_constant: curvature.einstein_constant(EINSTEIN_TOLERANCE),
        ricci,
    })
}

/// Which of the three `n/p` ranges the critical metric falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `0 < n/p ≤ 1/9`
    Strong,
    /// `1/9 < n/p ≤ 9/16`
    Moderate,
    /// `9/16 < n/p ≤ 1`
    Weak,
}

impl Regime {
    pub fn classify(n: usize, p: usize) -> Result<Self> {
        if n == 0 || n > p {
            return Err(Error::SectionalDomain { n, p });
        }
        // exact rational comparisons: n/p ≤ 1/9 ⇔ 9n ≤ p
        Ok(if 9 * n <= p {
            Regime::Strong
        } else if 16 * n <= 9 * p {
            Regime::Moderate
        } else {
            Regime::Weak
        })
    }

    pub fn number(self) -> u8 {
        match self {
            Regime::Strong => 1,
            Regime::Moderate => 2,
            Regime::Weak => 3,
        }
    }

    /// `(lower, upper)` bounds on the sectional curvature of `g(0, √(n/p))`.
    pub fn bounds(self, n: usize, p: usize) -> (f64, f64) {
        let q = libm::sqrt(n as f64 / p as f64);
        match self {
            Regime::Strong => (4.0 - 3.0 / q, 1.0 / q),
            Regime::Moderate => (4.0 - 3.0 / q, 4.0 - 3.0 * q),
            Regime::Weak => (0.0, 4.0 - 3.0 * q),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct NamedPlane {
    pub label: String,
    pub curvature: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SectionalReport {
    pub n: usize,
    pub p: usize,
    pub c: f64,
    pub regime: u8,
    pub bound_low: f64,
    pub bound_high: f64,
    pub observed_min: f64,
    pub observed_max: f64,
    pub argmin_bivector: String,
    pub argmax_bivector: String,
    pub named_min: f64,
    pub named_max: f64,
    pub samples: usize,
    pub seed: u64,
    pub samples_in_bounds: f64,
    pub named: Vec<NamedPlane>,
}

/// The labelled bivectors singled out by the regime statements.
pub fn named_planes(space: SpaceParams, c: f64) -> Vec<(String, PVector, PVector)> {
    let d = space.p_dimension();
    let e = |k: usize| {
        let mut v = PVector::zeros(d);
        v[k] = 1.0;
        v
    };
    let (n, p) = (space.n(), space.p());
    let y1 = |i| space.y_index(Factor::First, i);
    let y2 = |i| space.y_index(Factor::Second, i);
    let mut planes = Vec::new();
    for l in 1..=n {
        planes.push((format!("Y1_{}^Y1_{}", 2 * l - 1, 2 * l), e(y1(2 * l - 1)), e(y1(2 * l))));
    }
    for i in 1..=2 * n {
        planes.push((format!("sqrt(c)X1^Y1_{i}"), e(0) * libm::sqrt(c), e(y1(i))));
    }
    for m in 1..=p {
        planes.push((format!("Y2_{}^Y2_{}", 2 * m - 1, 2 * m), e(y2(2 * m - 1)), e(y2(2 * m))));
    }
    planes.push((String::from("X1^X2"), e(0), e(space.x_index(Factor::Second))));
    for l in 1..=n {
        for m in 1..=p {
            planes.push((
                format!("Y1_{}^Y2_{}", 2 * l - 1, 2 * m - 1),
                e(y1(2 * l - 1)),
                e(y2(2 * m - 1)),
            ));
            planes.push((format!("Y1_{}^Y2_{}", 2 * l, 2 * m), e(y1(2 * l)), e(y2(2 * m))));
        }
    }
    planes
}

/// Evaluates the sectional curvature of `g(0, √(n/p))` on the named
/// bivectors and on `samples` seeded random planes; a sample counts as in
/// bounds when it lies within `slack` of the interval.
pub fn sectional_extremes(space: SpaceParams, samples: usize, seed: u64, slack: f64) -> Result<SectionalReport> {
    let (n, p) = (space.n(), space.p());
    let regime = Regime::classify(n, p)?;
    let (bound_low, bound_high) = regime.bounds(n, p);
    let m = MetricParams::critical(space)?;
    let curvature = Curvature::from_params(space, m)?;

    let mut named = Vec::new();
    for (label, a, b) in named_planes(space, m.c()) {
        named.push(NamedPlane {
            curvature: curvature.sectional(&a, &b)?,
            label,
        });
    }
    let mut lo = (f64::INFINITY, String::new());
    let mut hi = (f64::NEG_INFINITY, String::new());
    for plane in &named {
        if plane.curvature < lo.0 {
            lo = (plane.curvature, plane.label.clone());
        }
        if plane.curvature > hi.0 {
            hi = (plane.curvature, plane.label.clone());
        }
    }
    let (named_min, named_max) = (lo.0, hi.0);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let frame = curvature.hermitian_space().frame().to_vec();
    let d = space.p_dimension();
    let random_vector = |rng: &mut ChaCha8Rng| {
        frame.iter().fold(PVector::zeros(d), |acc, z| {
            let w: f64 = StandardNormal.sample(rng);
            acc + z * w
        })
    };
    let mut inside = 0usize;
    let mut evaluated = 0usize;
    for k in 0..samples {
        let a = random_vector(&mut rng);
        let b = random_vector(&mut rng);
        let kab = match curvature.sectional(&a, &b) {
            Ok(v) => v,
            Err(Error::DegeneratePlane(_)) => continue,
            Err(e) => return Err(e),
        };
        evaluated += 1;
        if kab >= bound_low - slack && kab <= bound_high + slack {
            inside += 1;
        }
        if kab < lo.0 {
            lo = (kab, format!("sample#{k}"));
        }
        if kab > hi.0 {
            hi = (kab, format!("sample#{k}"));
        }
    }

    Ok(SectionalReport {
        n,
        p,
        c: m.c(),
        regime: regime.number(),
        bound_low,
        bound_high,
        observed_min: lo.0,
        observed_max: hi.0,
        argmin_bivector: lo.1,
        argmax_bivector: hi.1,
        named_min,
        named_max,
        samples: evaluated,
        seed,
        samples_in_bounds: if evaluated == 0 {
            1.0
        } else {
            inside as f64 / evaluated as f64
        },
        named,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn sp(n: usize, p: usize) -> SpaceParams {
        SpaceParams::new(n, p).unwrap()
    }

    fn mp(a: f64, c: f64) -> MetricParams {
        MetricParams::new(a, c).unwrap()
    }

    #[test]
    fn round_three_sphere_has_unit_curvature() {
        let k = Curvature::from_params(sp(1, 0), mp(0.0, 1.0)).unwrap();
        let hs = k.hermitian_space();
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let v = k.sectional(&hs.basis_vector(i), &hs.basis_vector(j)).unwrap();
            assert_abs_diff_eq!(v, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn riemann_antisymmetric_on_equal_arguments() {
        let k = Curvature::from_params(sp(1, 2), mp(0.3, 0.8)).unwrap();
        let hs = k.hermitian_space();
        let x = hs.basis_vector(1) + hs.basis_vector(4) * 0.5;
        assert!(k.riemann(&x, &x, &hs.basis_vector(2)).amax() < 1e-13);
    }

    #[test]
    fn mixed_plane_is_flat_for_equal_ranks() {
        let s = sp(2, 2);
        let k = Curvature::from_params(s, mp(0.0, 1.0)).unwrap();
        let hs = k.hermitian_space();
        let y11 = hs.basis_vector(s.y_index(Factor::First, 1));
        let y21 = hs.basis_vector(s.y_index(Factor::Second, 1));
        assert_abs_diff_eq!(k.riemann_form(&y11, &y21, &y21, &y11), 0.0, epsilon = 1e-13);
        let x2 = hs.basis_vector(s.x_index(Factor::Second));
        assert_abs_diff_eq!(k.sectional(&hs.basis_vector(0), &x2).unwrap(), 0.0, epsilon = 1e-13);
        let y22 = hs.basis_vector(s.y_index(Factor::Second, 2));
        assert_abs_diff_eq!(k.sectional(&y21, &y22).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(ricci_closed_form(sp(1, 1), mp(0.0, 1.0), 0, 0), 2.0);
        assert_eq!(ricci_closed_form(sp(2, 1), mp(0.0, 2.0), 1, 1), 5.0);
        let s = sp(2, 1);
        let m = mp(0.4, 1.3);
        assert_eq!(ricci_closed_form(s, m, 0, 1), 0.0);
        assert_eq!(ricci_closed_form(s, m, 1, 2), 0.0);
        let x2 = s.x_index(Factor::Second);
        assert_eq!(ricci_closed_form(s, m, 0, x2), ricci_closed_form(s, m, x2, 0));
    }

    #[test]
    fn formula_examples() {
        let hs = HermitianSpace::new(sp(1, 1), mp(0.0, 1.0)).unwrap();
        assert_abs_diff_eq!(ricci_formula(&hs, &hs.basis_vector(0)), 2.0, epsilon = 1e-12);
        for (a, c) in [(0.0, 1.0), (0.7, 2.5), (-1.2, 0.3)] {
            let s = sp(0, 1);
            let hs = HermitianSpace::new(s, mp(a, c)).unwrap();
            let y = hs.basis_vector(s.y_index(Factor::Second, 1));
            let expected = 2.0 * (2.0 - (a * a + c * c) / c);
            assert_abs_diff_eq!(ricci_formula_bilinear(&hs, &y, &y), expected, epsilon = 1e-10);
        }
    }

    #[test]
    fn scalar_examples() {
        let s = scalar_curvature(sp(1, 1), mp(0.0, 1.0)).unwrap();
        assert_abs_diff_eq!(s.closed_form, 12.0, epsilon = 1e-12);
        assert_abs_diff_eq!(s.trace, 12.0, epsilon = 1e-10);
        let s = scalar_curvature(sp(0, 1), mp(0.0, 1.0)).unwrap();
        assert_abs_diff_eq!(s.closed_form, 6.0, epsilon = 1e-12);
        assert_abs_diff_eq!(s.trace, 6.0, epsilon = 1e-10);
        let s = scalar_curvature(sp(2, 3), mp(0.7, 0.9)).unwrap();
        assert_abs_diff_eq!(s.trace, s.closed_form, epsilon = 1e-9);
    }

    #[test]
    fn block_eigenvalues_at_zero_shear() {
        let (n, p, c) = (2.0, 3.0, 1.7);
        let (r1, r2) = ricci_block_eigenvalues(sp(2, 3), mp(0.0, c));
        let x = 2.0 * n / (c * c);
        let y = 2.0 * p * c * c;
        assert_abs_diff_eq!(r1.max(r2), x.max(y), epsilon = 1e-12);
        assert_abs_diff_eq!(r1.min(r2), x.min(y), epsilon = 1e-12);
        let values = ricci_closed_form_eigenvalues(sp(2, 3), mp(0.0, c));
        assert_eq!(values.len(), 2 * 2 + 2 * 3 + 2);
    }

    #[test]
    fn einstein_examples() {
        assert_abs_diff_eq!(
            einstein_check(sp(2, 2), mp(0.0, 1.0)).unwrap().unwrap(),
            4.0,
            epsilon = 1e-10
        );
        assert_eq!(einstein_check(sp(1, 4), mp(0.0, 0.5)).unwrap(), None);
        assert_eq!(einstein_check(sp(0, 1), mp(0.0, 1.0)).unwrap(), None);
    }

    #[test]
    fn equal_ranks_spectrum_is_flat() {
        let e = ricci_eigenvalues(sp(3, 3), mp(0.0, 1.0)).unwrap();
        for v in e.operator_spectrum {
            assert_abs_diff_eq!(v, 6.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn degenerate_plane_rejected() {
        let k = Curvature::from_params(sp(1, 1), mp(0.0, 1.0)).unwrap();
        let x = k.hermitian_space().basis_vector(1);
        assert!(matches!(k.sectional(&x, &(&x * 2.0)), Err(Error::DegeneratePlane(_))));
    }

    #[test]
    fn regime_classification() {
        assert_eq!(Regime::classify(1, 16).unwrap(), Regime::Strong);
        assert_eq!(Regime::classify(1, 9).unwrap(), Regime::Strong);
        assert_eq!(Regime::classify(1, 4).unwrap(), Regime::Moderate);
        assert_eq!(Regime::classify(9, 16).unwrap(), Regime::Moderate);
        assert_eq!(Regime::classify(3, 4).unwrap(), Regime::Weak);
        assert!(Regime::classify(2, 1).is_err());
        assert!(Regime::classify(0, 3).is_err());
        let (lo, hi) = Regime::Strong.bounds(1, 16);
        assert_abs_diff_eq!(lo, -8.0, epsilon = 1e-12);
        assert_abs_diff_eq!(hi, 4.0, epsilon = 1e-12);
        let (lo, hi) = Regime::Moderate.bounds(1, 4);
        assert_abs_diff_eq!(lo, -2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(hi, 2.5, epsilon = 1e-12);
    }

    #[test]
    fn sectional_report_small() {
        let r = sectional_extremes(sp(1, 4), 200, 7, SECTIONAL_BOUND_TOLERANCE).unwrap();
        assert_eq!(r.regime, 2);
        assert_eq!(r.samples_in_bounds, 1.0);
        assert!(r.argmax_bivector.starts_with("Y2_"));
        assert!(sectional_extremes(sp(3, 2), 10, 0, SECTIONAL_BOUND_TOLERANCE).is_err());
    }
}
