//! Invariant Hermitian structures on `S^{2n+1} × S^{2p+1}`.
//!
//! The sphere product is treated as the reductive homogeneous space
//! `U(n+1)/U(n) × U(p+1)/U(p)`. On it lives a two-parameter family of
//! invariant complex structures `I(a,c)`, each with an associated metric
//! `g(a,c)`. This crate builds the Lie algebra, the structures, the
//! Levi-Civita connection and the curvature at the origin. It also covers the
//! scalar-curvature functional `s(a,c)` and its critical point.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod connection;
pub mod curvature;
mod error;
pub mod optimize;
pub mod structures;

pub use algebra::{Algebra, AlgebraElement, BasisTag, BasisVector, Factor, PVector, ReductiveSpace, SpaceParams};
pub use curvature::{Curvature, CurvatureReport, SectionalReport};
pub use error::{Error, Result};
pub use optimize::CriticalPointResult;
pub use structures::{BilinearForm, HermitianSpace, MetricParams};
