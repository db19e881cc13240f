//! The invariant 2-form `ω`, the complex structures `I(a,c)` and their
//! associated metrics `g(a,c)(X, Y) = ω(X, I(a,c)Y)`.
//!
//! All tensors are represented by their matrices over the p-basis. For an
//! endomorphism the `j`-th column is the image of the `j`-th basis vector.

use alloc::sync::Arc;
use alloc::vec::Vec;

use nalgebra::DMatrix;

use crate::algebra::{BracketTable, Factor, PVector, ReductiveSpace, SpaceParams};
use crate::error::{Error, Result};

const COMPATIBILITY_TOLERANCE: f64 = 1e-10;
const DEFINITENESS_THRESHOLD: f64 = 1e-12;

/// One member `(a, c)`, `c > 0`, of the two-parameter family.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct MetricParams {
    a: f64,
    c: f64,
}

impl MetricParams {
    pub fn new(a: f64, c: f64) -> Result<Self> {
        if !a.is_finite() {
            return Err(Error::InvalidShear(a));
        }
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::InvalidScale(c));
        }
        Ok(Self { a, c })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// The critical metric `(0, √(n/p))`. Needs `p ≥ 1` and `n ≥ 1`.
    pub fn critical(space: SpaceParams) -> Result<Self> {
        if space.n() == 0 || space.p() == 0 {
            return Err(Error::NeedsBothFactors {
                n: space.n(),
                p: space.p(),
            });
        }
        Self::new(0.0, libm::sqrt(space.n() as f64 / space.p() as f64))
    }
}

/// An antisymmetric bilinear form on `p`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoForm {
    skew: DMatrix<f64>,
}

impl TwoForm {
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.skew
    }

    pub fn eval(&self, x: &PVector, y: &PVector) -> f64 {
        x.dot(&(&self.skew * y))
    }

    pub fn rank(&self) -> usize {
        self.skew.rank(1e-12)
    }
}

/// Where a [`BilinearForm`] came from.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum Provenance {
    Metric { a: f64, c: f64 },
    Ricci { a: f64, c: f64 },
    Other { tag: &'static str },
}

/// A symmetric bilinear form on `p`.
#[derive(Debug, Clone, PartialEq)]
pub struct BilinearForm {
    sym: DMatrix<f64>,
    provenance: Provenance,
}

impl BilinearForm {
    pub fn new(sym: DMatrix<f64>, provenance: Provenance) -> Self {
        Self { sym, provenance }
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.sym
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.sym[(i, j)]
    }

    pub fn eval(&self, x: &PVector, y: &PVector) -> f64 {
        x.dot(&(&self.sym * y))
    }

    pub fn symmetry_residual(&self) -> f64 {
        (&self.sym - self.sym.transpose()).amax()
    }

    /// Smallest eigenvalue of the symmetric part.
    pub fn min_eigenvalue(&self) -> f64 {
        let s = (&self.sym + self.sym.transpose()) * 0.5;
        s.symmetric_eigenvalues().min()
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.sym.row_iter().map(|r| r.iter().copied().collect()).collect()
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for BilinearForm {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> core::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("BilinearForm", 2)?;
        st.serialize_field("sym", &self.rows())?;
        st.serialize_field("provenance", &self.provenance)?;
        st.end()
    }
}

/// A linear endomorphism of `p`; columns are images of basis vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct EndomorphismField {
    mat: DMatrix<f64>,
}

impl EndomorphismField {
    pub fn new(mat: DMatrix<f64>) -> Self {
        Self { mat }
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.mat
    }

    pub fn apply(&self, v: &PVector) -> PVector {
        &self.mat * v
    }

    /// `max |J² + Id|`.
    pub fn square_residual(&self) -> f64 {
        let d = self.mat.nrows();
        (&self.mat * &self.mat + DMatrix::<f64>::identity(d, d)).amax()
    }
}

/// Outcome of checking Definition-2 style positive association.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Compatibility {
    pub compatible: bool,
    pub positive: bool,
    /// `max |ω(JX, JY) − ω(X, Y)|` over basis pairs.
    pub compatibility_residual: f64,
    /// Smallest eigenvalue of the symmetrized form `ω(·, J·)`.
    pub min_eigenvalue: f64,
}

pub fn omega(space: SpaceParams) -> TwoForm {
    let d = space.p_dimension();
    let mut skew = DMatrix::zeros(d, d);
    let mut pair = |i: usize, j: usize| {
        skew[(i, j)] = 1.0;
        skew[(j, i)] = -1.0;
    };
    pair(space.x_index(Factor::First), space.x_index(Factor::Second));
    for factor in Factor::BOTH {
        for nu in 1..=space.rank(factor) {
            pair(space.y_index(factor, 2 * nu - 1), space.y_index(factor, 2 * nu));
        }
    }
    TwoForm { skew }
}

pub fn complex_structure(space: SpaceParams, m: MetricParams) -> EndomorphismField {
    let d = space.p_dimension();
    let (a, c) = (m.a, m.c);
    let x1 = space.x_index(Factor::First);
    let x2 = space.x_index(Factor::Second);
    let mut mat = DMatrix::zeros(d, d);
    mat[(x1, x1)] = a / c;
    mat[(x2, x1)] = 1.0 / c;
    mat[(x1, x2)] = -(a * a + c * c) / c;
    mat[(x2, x2)] = -a / c;
    for factor in Factor::BOTH {
        for nu in 1..=space.rank(factor) {
            let odd = space.y_index(factor, 2 * nu - 1);
            let even = space.y_index(factor, 2 * nu);
            mat[(even, odd)] = 1.0;
            mat[(odd, even)] = -1.0;
        }
    }
    EndomorphismField { mat }
}

/// `g(a,c)(X, Y) = ω(X, I(a,c)Y)`.
pub fn associated_metric(space: SpaceParams, m: MetricParams) -> BilinearForm {
    let sym = omega(space).matrix() * complex_structure(space, m).matrix();
    BilinearForm::new(sym, Provenance::Metric { a: m.a, c: m.c })
}

/// The same metric written out entry by entry.
pub fn metric_table(space: SpaceParams, m: MetricParams) -> BilinearForm {
    let d = space.p_dimension();
    let (a, c) = (m.a, m.c);
    let x1 = space.x_index(Factor::First);
    let x2 = space.x_index(Factor::Second);
    let mut sym = DMatrix::identity(d, d);
    sym[(x1, x1)] = 1.0 / c;
    sym[(x2, x2)] = (a * a + c * c) / c;
    sym[(x1, x2)] = -a / c;
    sym[(x2, x1)] = -a / c;
    BilinearForm::new(sym, Provenance::Metric { a: m.a, c: m.c })
}

/// Checks `ω(JX, JY) = ω(X, Y)` and positive-definiteness of `ω(·, J·)`.
pub fn check_association(omega: &TwoForm, j: &EndomorphismField) -> Compatibility {
    let w = omega.matrix();
    let jm = j.matrix();
    let compatibility_residual = (jm.transpose() * w * jm - w).amax();
    let min_eigenvalue = BilinearForm::new(w * jm, Provenance::Other { tag: "omega_j" }).min_eigenvalue();
    Compatibility {
        compatible: compatibility_residual <= COMPATIBILITY_TOLERANCE,
        positive: min_eigenvalue > DEFINITENESS_THRESHOLD,
        compatibility_residual,
        min_eigenvalue,
    }
}

pub fn positivity_and_compatibility_check(space: SpaceParams, m: MetricParams) -> Compatibility {
    check_association(&omega(space), &complex_structure(space, m))
}

/// The `g(a,c)`-orthonormal frame
/// `√c·X¹, Y¹_1..Y¹_{2n}, (a/√c)X¹ + (1/√c)X², Y²_1..Y²_{2p}`.
pub fn orthonormal_frame(space: SpaceParams, m: MetricParams) -> Vec<PVector> {
    let d = space.p_dimension();
    let sc = libm::sqrt(m.c);
    let x1 = space.x_index(Factor::First);
    let x2 = space.x_index(Factor::Second);
    (0..d)
        .map(|k| {
            let mut v = PVector::zeros(d);
            if k == x1 {
                v[x1] = sc;
            } else if k == x2 {
                v[x1] = m.a / sc;
                v[x2] = 1.0 / sc;
            } else {
                v[k] = 1.0;
            }
            v
        })
        .collect()
}

/// `N(A,B) = [JA,JB]_p − [A,B]_p − J[JA,B]_p − J[A,JB]_p`.
pub fn nijenhuis_p(brackets: &BracketTable, j: &EndomorphismField, a: &PVector, b: &PVector) -> PVector {
    let ja = j.apply(a);
    let jb = j.apply(b);
    brackets.bracket_p(&ja, &jb)
        - brackets.bracket_p(a, b)
        - j.apply(&brackets.bracket_p(&ja, b))
        - j.apply(&brackets.bracket_p(a, &jb))
}

/// The Hermitian manifold `(S^{2n+1} × S^{2p+1}, g(a,c), I(a,c), ω)` at the
/// origin: everything the connection and curvature code needs.
#[derive(Debug, Clone)]
pub struct HermitianSpace {
    reductive: Arc<ReductiveSpace>,
    metric_params: MetricParams,
    omega: TwoForm,
    structure: EndomorphismField,
    metric: BilinearForm,
    metric_inverse: DMatrix<f64>,
    frame: Vec<PVector>,
}

impl HermitianSpace {
    pub fn new(space: SpaceParams, m: MetricParams) -> Result<Self> {
        Self::with_reductive(Arc::new(ReductiveSpace::new(space)), m)
    }

    /// Reuses the bracket tables of an existing space.
    pub fn with_reductive(reductive: Arc<ReductiveSpace>, m: MetricParams) -> Result<Self> {
        let space = reductive.space();
        let metric = associated_metric(space, m);
        let metric_inverse = metric.matrix().clone().try_inverse().ok_or(Error::SingularGram)?;
        Ok(Self {
            omega: omega(space),
            structure: complex_structure(space, m),
            frame: orthonormal_frame(space, m),
            metric,
            metric_inverse,
            metric_params: m,
            reductive,
        })
    }

    pub fn space(&self) -> SpaceParams {
        self.reductive.space()
    }

    pub fn reductive(&self) -> &Arc<ReductiveSpace> {
        &self.reductive
    }

    pub fn brackets(&self) -> &BracketTable {
        self.reductive.brackets()
    }

    pub fn metric_params(&self) -> MetricParams {
        self.metric_params
    }

    pub fn omega(&self) -> &TwoForm {
        &self.omega
    }

    pub fn structure(&self) -> &EndomorphismField {
        &self.structure
    }

    pub fn metric(&self) -> &BilinearForm {
        &self.metric
    }

    pub fn metric_inverse(&self) -> &DMatrix<f64> {
        &self.metric_inverse
    }

    pub fn frame(&self) -> &[PVector] {
        &self.frame
    }

    pub fn dimension(&self) -> usize {
        self.space().p_dimension()
    }

    pub fn basis_vector(&self, k: usize) -> PVector {
        let mut v = PVector::zeros(self.dimension());
        v[k] = 1.0;
        v
    }

    pub fn inner(&self, x: &PVector, y: &PVector) -> f64 {
        self.metric.eval(x, y)
    }

    pub fn norm_squared(&self, x: &PVector) -> f64 {
        self.metric.eval(x, x)
    }
}
