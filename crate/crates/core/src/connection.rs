//! The invariant Levi-Civita connection `D_X Y = ½[X,Y]_p + U(X,Y)`.
//!
//! `U` is obtained by solving `2g(U(X,Y),Z) = g([Z,X]_p,Y) + g(X,[Z,Y]_p)`
//! against the Gram matrix of `g`; [`u_tensor_closed_form`] holds the
//! explicit table it must reproduce.

use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{BasisTag, Factor, PVector, SpaceParams};
use crate::structures::{HermitianSpace, MetricParams};

/// `U(X, Y)` from its defining identity.
pub fn u_tensor_solve(hs: &HermitianSpace, x: &PVector, y: &PVector) -> PVector {
    let d = hs.dimension();
    let brackets = hs.brackets();
    let g = hs.metric();
    let rhs = PVector::from_iterator(
        d,
        (0..d).map(|z| 0.5 * (g.eval(&brackets.bracket_p_basis(z, x), y) + g.eval(x, &brackets.bracket_p_basis(z, y)))),
    );
    hs.metric_inverse() * rhs
}

/// Literal table of `U` on p-basis vectors `e_i`, `e_j`.
pub fn u_tensor_closed_form(space: SpaceParams, m: MetricParams, i: usize, j: usize) -> PVector {
    let d = space.p_dimension();
    let mut out = PVector::zeros(d);
    let (a, c) = (m.a(), m.c());
    let (x, y) = match (space.p_tag(i), space.p_tag(j)) {
        (BasisTag::X(f), BasisTag::Y(g, k)) => (f, (g, k)),
        (BasisTag::Y(g, k), BasisTag::X(f)) => (f, (g, k)),
        _ => return out,
    };
    let coefficient = match (x, y.0) {
        (Factor::First, Factor::First) => (2.0 - c) / (2.0 * c),
        (Factor::First, Factor::Second) | (Factor::Second, Factor::First) => -a / c,
        (Factor::Second, Factor::Second) => (a * a + c * c) / c - 0.5,
    };
    let (factor, k) = y;
    if k % 2 == 1 {
        out[space.y_index(factor, k + 1)] = coefficient;
    } else {
        out[space.y_index(factor, k - 1)] = -coefficient;
    }
    out
}

/// `coeffs[i][j][k]`: the `k`-th component of `D_{e_i} e_j`.
#[derive(Debug, Clone)]
pub struct ConnectionTable {
    dim: usize,
    coeffs: Vec<f64>,
    sparse: Vec<Vec<(usize, f64)>>,
    params: (SpaceParams, MetricParams),
}

impl ConnectionTable {
    pub fn new(hs: &HermitianSpace) -> Self {
        let d = hs.dimension();
        let mut coeffs = vec![0.0; d * d * d];
        let mut sparse = Vec::with_capacity(d * d);
        for i in 0..d {
            let ei = hs.basis_vector(i);
            for j in 0..d {
                let ej = hs.basis_vector(j);
                let v = hs.brackets().bracket_p(&ei, &ej) * 0.5 + u_tensor_solve(hs, &ei, &ej);
                coeffs[(i * d + j) * d..(i * d + j + 1) * d].copy_from_slice(v.as_slice());
                sparse.push(
                    v.iter()
                        .enumerate()
                        .filter(|(_, x)| x.abs() > 0.0)
                        .map(|(k, &x)| (k, x))
                        .collect(),
                );
            }
        }
        Self {
            dim: d,
            coeffs,
            sparse,
            params: (hs.space(), hs.metric_params()),
        }
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn params(&self) -> (SpaceParams, MetricParams) {
        self.params
    }

    pub fn coefficient(&self, i: usize, j: usize, k: usize) -> f64 {
        self.coeffs[(i * self.dim + j) * self.dim + k]
    }

    /// `D_{e_i} e_j` as a p-vector.
    pub fn column(&self, i: usize, j: usize) -> PVector {
        let start = (i * self.dim + j) * self.dim;
        PVector::from_column_slice(&self.coeffs[start..start + self.dim])
    }

    /// `D_X Y`, bilinear in `X` and `Y`.
    pub fn nabla(&self, x: &PVector, y: &PVector) -> PVector {
        let d = self.dim;
        let mut out = PVector::zeros(d);
        for i in 0..d {
            if x[i] == 0.0 {
                continue;
            }
            for j in 0..d {
                let w = x[i] * y[j];
                if w == 0.0 {
                    continue;
                }
                for &(k, v) in &self.sparse[i * d + j] {
                    out[k] += w * v;
                }
            }
        }
        out
    }

    /// `max |D_{e_i}e_j − D_{e_j}e_i − [e_i,e_j]_p|`.
    pub fn torsion_residual(&self, hs: &HermitianSpace) -> f64 {
        let d = self.dim;
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                let t = self.column(i, j)
                    - self.column(j, i)
                    - hs.brackets().bracket_p(&hs.basis_vector(i), &hs.basis_vector(j));
                worst = worst.max(t.amax());
            }
        }
        worst
    }

    /// `max |g(D_{e_i}e_j, e_k) + g(e_j, D_{e_i}e_k)|`.
    pub fn metric_compatibility_residual(&self, hs: &HermitianSpace) -> f64 {
        let d = self.dim;
        let g = hs.metric();
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                let dij = self.column(i, j);
                for k in 0..d {
                    let r = g.eval(&dij, &hs.basis_vector(k)) + g.eval(&hs.basis_vector(j), &self.column(i, k));
                    worst = worst.max(r.abs());
                }
            }
        }
        worst
    }
}

/// `Σᵢ U(Zᵢ, Zᵢ)` over the orthonormal frame.
pub fn frame_trace_of_u(hs: &HermitianSpace) -> PVector {
    hs.frame()
        .iter()
        .fold(PVector::zeros(hs.dimension()), |acc, z| acc + u_tensor_solve(hs, z, z))
}
