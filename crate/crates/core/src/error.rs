use thiserror::Error;

/// Everything that can go wrong in the core computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("n and p must not both be zero")]
    DegenerateSpace,

    #[error("scale parameter c must be positive and finite, got {0}")]
    InvalidScale(f64),

    #[error("shear parameter a must be finite, got {0}")]
    InvalidShear(f64),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix block is not skew-Hermitian (residual {0:e})")]
    NotSkewHermitian(f64),

    #[error("Gram matrix of the metric is singular")]
    SingularGram,

    #[error("degenerate 2-plane (|A|^2|B|^2 - g(A,B)^2 = {0:e})")]
    DegeneratePlane(f64),

    #[error("sectional curvature regimes need 1 <= n <= p, got n = {n}, p = {p}")]
    SectionalDomain { n: usize, p: usize },

    #[error("operation needs n >= 1 and p >= 1, got n = {n}, p = {p}")]
    NeedsBothFactors { n: usize, p: usize },

    #[error(
        "gradient ascent did not converge after {iterations} iterations \
         (last iterate a = {a}, c = {c}, |grad| = {gradient_norm:e})"
    )]
    NotConverged {
        iterations: usize,
        a: f64,
        c: f64,
        gradient_norm: f64,
    },
}

pub type Result<T> = core::result::Result<T, Error>;
