//! The matrix Lie algebra `u(n+1) ⊕ u(p+1)` with its reductive splitting
//! `g = h ⊕ p`.
//!
//! Elements are stored twice: as real coefficients over a fixed set of
//! skew-Hermitian generators and as the corresponding pair of complex block
//! matrices. Brackets are always computed as matrix commutators and then
//! decomposed back onto the generators, so no structure constant is ever
//! written down by hand.
//!
//! Basis layout (indices into the coefficient vector):
//!
//! * `0`                     – `X¹ = ½·i·T¹₀₀`
//! * `1 ..= 2n`              – `Y¹_{2ν−1} = Z¹_{ν0}`, `Y¹_{2ν} = i·T¹_{ν0}`
//! * `2n+1`                  – `X² = ½·i·T²₀₀`
//! * `2n+2 ..= 2n+2p+1`      – `Y²_{2μ−1}`, `Y²_{2μ}`
//! * the remaining indices   – the `h`-generators `Z^j_{νμ}`, `i·T^j_{νμ}`
//!   (`1 ≤ μ < ν`) and `i·T^j_{νν}`, first factor before second.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use nalgebra::{Complex, DMatrix, DVector};

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;
/// Coefficients of a vector in `p` over the p-basis.
pub type PVector = DVector<f64>;

const SKEW_TOLERANCE: f64 = 1e-12;

/// The pair `(n, p)` fixing the homogeneous space `S^{2n+1} × S^{2p+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SpaceParams {
    n: usize,
    p: usize,
}

impl SpaceParams {
    pub fn new(n: usize, p: usize) -> Result<Self> {
        if n == 0 && p == 0 {
            return Err(Error::DegenerateSpace);
        }
        Ok(Self { n, p })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    /// Dimension of `p`, i.e. of the manifold: `2n + 2p + 2`.
    pub fn p_dimension(&self) -> usize {
        2 * self.n + 2 * self.p + 2
    }

    /// Dimension of `g = u(n+1) ⊕ u(p+1)`.
    pub fn g_dimension(&self) -> usize {
        (self.n + 1) * (self.n + 1) + (self.p + 1) * (self.p + 1)
    }

    /// Number of `ν` indices in the given factor (`n` or `p`).
    pub fn rank(&self, factor: Factor) -> usize {
        match factor {
            Factor::First => self.n,
            Factor::Second => self.p,
        }
    }

    pub fn block_size(&self, factor: Factor) -> usize {
        self.rank(factor) + 1
    }

    /// p-basis index of `X^j`.
    pub fn x_index(&self, factor: Factor) -> usize {
        match factor {
            Factor::First => 0,
            Factor::Second => 2 * self.n + 1,
        }
    }

    /// Tag of the `k`-th p-basis vector.
    pub fn p_tag(&self, k: usize) -> BasisTag {
        let x2 = self.x_index(Factor::Second);
        match k {
            0 => BasisTag::X(Factor::First),
            k if k < x2 => BasisTag::Y(Factor::First, k),
            k if k == x2 => BasisTag::X(Factor::Second),
            k => {
                debug_assert!(k < self.p_dimension());
                BasisTag::Y(Factor::Second, k - x2)
            }
        }
    }

    /// p-basis index of `Y^j_i` with the 1-based label `i ∈ 1..=2·rank`.
    pub fn y_index(&self, factor: Factor, i: usize) -> usize {
        debug_assert!(i >= 1 && i <= 2 * self.rank(factor));
        self.x_index(factor) + i
    }
}

/// Which unitary factor a generator lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Factor {
    First,
    Second,
}

impl Factor {
    pub const BOTH: [Factor; 2] = [Factor::First, Factor::Second];

    fn slot(self) -> usize {
        match self {
            Factor::First => 0,
            Factor::Second => 1,
        }
    }

    fn superscript(self) -> u8 {
        match self {
            Factor::First => 1,
            Factor::Second => 2,
        }
    }
}

/// Symbolic name of a basis generator of `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisTag {
    /// `X^j`
    X(Factor),
    /// `Y^j_i`, with 1-based `i`.
    Y(Factor, usize),
    /// `Z^j_{νμ}`, `1 ≤ μ < ν`; lies in `h`.
    Z(Factor, usize, usize),
    /// `i·T^j_{νμ}`, `1 ≤ μ ≤ ν`; lies in `h`.
    IT(Factor, usize, usize),
}

impl BasisTag {
    pub fn factor(&self) -> Factor {
        match *self {
            BasisTag::X(f) | BasisTag::Y(f, _) | BasisTag::Z(f, _, _) | BasisTag::IT(f, _, _) => f,
        }
    }

    pub fn in_p(&self) -> bool {
        matches!(self, BasisTag::X(_) | BasisTag::Y(_, _))
    }

    /// Nonzero matrix entries `(row, col, value)` of the generator.
    fn entries(&self) -> Vec<(usize, usize, C64)> {
        let one = C64::new(1.0, 0.0);
        let i = C64::new(0.0, 1.0);
        match *self {
            BasisTag::X(_) => vec![(0, 0, i)],
            BasisTag::Y(_, k) => {
                let nu = k.div_ceil(2);
                if k % 2 == 1 {
                    vec![(nu, 0, one), (0, nu, -one)]
                } else {
                    vec![(nu, 0, i), (0, nu, i)]
                }
            }
            BasisTag::Z(_, nu, mu) => vec![(nu, mu, one), (mu, nu, -one)],
            BasisTag::IT(_, nu, mu) if nu == mu => vec![(nu, nu, 2.0 * i)],
            BasisTag::IT(_, nu, mu) => vec![(nu, mu, i), (mu, nu, i)],
        }
    }
}

impl fmt::Display for BasisTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            BasisTag::X(j) => write!(f, "X{}", j.superscript()),
            BasisTag::Y(j, i) => write!(f, "Y{}_{}", j.superscript(), i),
            BasisTag::Z(j, nu, mu) => write!(f, "Z{}_{},{}", j.superscript(), nu, mu),
            BasisTag::IT(j, nu, mu) => write!(f, "iT{}_{},{}", j.superscript(), nu, mu),
        }
    }
}

/// A generator together with its position in the fixed enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasisVector {
    pub tag: BasisTag,
    pub index: usize,
}

impl BasisVector {
    pub fn in_p(&self) -> bool {
        self.tag.in_p()
    }

    pub fn label(&self) -> String {
        format!("{}", self.tag)
    }
}

/// An element of `g`, held as generator coefficients and as block matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement {
    coeffs: Vec<f64>,
    blocks: [CMatrix; 2],
}

impl AlgebraElement {
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn block(&self, factor: Factor) -> &CMatrix {
        &self.blocks[factor.slot()]
    }

    pub fn blocks(&self) -> &[CMatrix; 2] {
        &self.blocks
    }

    /// Largest absolute coefficient.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Largest coefficient difference to `other`.
    pub fn distance(&self, other: &AlgebraElement) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .fold(0.0, |m, (x, y)| m.max((x - y).abs()))
    }
}

/// `u(n+1) ⊕ u(p+1)` with its generator set and reductive splitting.
#[derive(Debug, Clone)]
pub struct Algebra {
    space: SpaceParams,
    basis: Vec<BasisVector>,
    entries: Vec<Vec<(usize, usize, C64)>>,
    norms2: Vec<f64>,
    /// Per factor, `(row * m + col)` -> generators with a nonzero at that entry.
    lookup: [Vec<Vec<usize>>; 2],
}

impl Algebra {
    pub fn new(space: SpaceParams) -> Self {
        let mut tags = Vec::with_capacity(space.g_dimension());
        for factor in Factor::BOTH {
            tags.push(BasisTag::X(factor));
            for i in 1..=2 * space.rank(factor) {
                tags.push(BasisTag::Y(factor, i));
            }
        }
        for factor in Factor::BOTH {
            for nu in 1..=space.rank(factor) {
                for mu in 1..nu {
                    tags.push(BasisTag::Z(factor, nu, mu));
                    tags.push(BasisTag::IT(factor, nu, mu));
                }
                tags.push(BasisTag::IT(factor, nu, nu));
            }
        }
        debug_assert_eq!(tags.len(), space.g_dimension());

        let basis: Vec<BasisVector> = tags
            .into_iter()
            .enumerate()
            .map(|(index, tag)| BasisVector { tag, index })
            .collect();
        let entries: Vec<_> = basis.iter().map(|b| b.tag.entries()).collect();
        let norms2 = entries
            .iter()
            .map(|e| e.iter().map(|(_, _, v)| v.norm_sqr()).sum())
            .collect();

        let mut lookup = [Vec::new(), Vec::new()];
        for factor in Factor::BOTH {
            let m = space.block_size(factor);
            let mut table = vec![Vec::new(); m * m];
            for (k, b) in basis.iter().enumerate() {
                if b.tag.factor() == factor {
                    for &(r, c, _) in &entries[k] {
                        table[r * m + c].push(k);
                    }
                }
            }
            lookup[factor.slot()] = table;
        }

        Self {
            space,
            basis,
            entries,
            norms2,
            lookup,
        }
    }

    pub fn space(&self) -> SpaceParams {
        self.space
    }

    pub fn basis(&self) -> &[BasisVector] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn p_dimension(&self) -> usize {
        self.space.p_dimension()
    }

    /// Every generator paired with its realization, p-part first.
    pub fn elements(&self) -> Vec<(BasisVector, AlgebraElement)> {
        (0..self.dimension())
            .map(|k| (self.basis[k], self.basis_element(k)))
            .collect()
    }

    pub fn basis_element(&self, k: usize) -> AlgebraElement {
        let mut coeffs = vec![0.0; self.dimension()];
        coeffs[k] = 1.0;
        self.assemble(coeffs)
    }

    /// Embeds a p-vector into `g`.
    pub fn p_element(&self, v: &PVector) -> Result<AlgebraElement> {
        self.check_len(v.len(), self.p_dimension())?;
        let mut coeffs = vec![0.0; self.dimension()];
        coeffs[..v.len()].copy_from_slice(v.as_slice());
        Ok(self.assemble(coeffs))
    }

    pub fn element_from_coeffs(&self, coeffs: Vec<f64>) -> Result<AlgebraElement> {
        self.check_len(coeffs.len(), self.dimension())?;
        Ok(self.assemble(coeffs))
    }

    /// Decomposes a pair of skew-Hermitian blocks onto the generators.
    pub fn element_from_blocks(&self, first: CMatrix, second: CMatrix) -> Result<AlgebraElement> {
        for (factor, block) in [(Factor::First, &first), (Factor::Second, &second)] {
            let m = self.space.block_size(factor);
            if block.nrows() != m || block.ncols() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    found: block.nrows().max(block.ncols()),
                });
            }
            let residual = (block + block.adjoint())
                .iter()
                .fold(0.0f64, |a, z| a.max(libm::hypot(z.re, z.im)));
            if residual > SKEW_TOLERANCE {
                return Err(Error::NotSkewHermitian(residual));
            }
        }
        let coeffs = self.decompose_dense(&first, &second);
        Ok(AlgebraElement {
            coeffs,
            blocks: [first, second],
        })
    }

    /// Real part of the blockwise commutator `AB − BA`.
    pub fn bracket(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_element(a)?;
        self.check_element(b)?;
        let first = commutator(a.block(Factor::First), b.block(Factor::First));
        let second = commutator(a.block(Factor::Second), b.block(Factor::Second));
        let coeffs = self.decompose_dense(&first, &second);
        Ok(AlgebraElement {
            coeffs,
            blocks: [first, second],
        })
    }

    pub fn project_p(&self, a: &AlgebraElement) -> AlgebraElement {
        let d = self.p_dimension();
        let coeffs = a
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, &x)| if k < d { x } else { 0.0 })
            .collect();
        self.assemble(coeffs)
    }

    pub fn project_h(&self, a: &AlgebraElement) -> AlgebraElement {
        let d = self.p_dimension();
        let coeffs = a
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, &x)| if k < d { 0.0 } else { x })
            .collect();
        self.assemble(coeffs)
    }

    /// The p-coefficients of an element.
    pub fn p_part(&self, a: &AlgebraElement) -> PVector {
        PVector::from_column_slice(&a.coeffs[..self.p_dimension()])
    }

    /// Sparse bracket tables for the hot paths of the curvature code.
    pub fn bracket_table(&self) -> BracketTable {
        BracketTable::new(self)
    }

    fn check_len(&self, found: usize, expected: usize) -> Result<()> {
        if found != expected {
            return Err(Error::DimensionMismatch { expected, found });
        }
        Ok(())
    }

    fn check_element(&self, a: &AlgebraElement) -> Result<()> {
        self.check_len(a.coeffs.len(), self.dimension())?;
        for factor in Factor::BOTH {
            self.check_len(a.block(factor).nrows(), self.space.block_size(factor))?;
        }
        Ok(())
    }

    fn assemble(&self, coeffs: Vec<f64>) -> AlgebraElement {
        let mut blocks = [
            CMatrix::zeros(
                self.space.block_size(Factor::First),
                self.space.block_size(Factor::First),
            ),
            CMatrix::zeros(
                self.space.block_size(Factor::Second),
                self.space.block_size(Factor::Second),
            ),
        ];
        for (k, &x) in coeffs.iter().enumerate() {
            if x == 0.0 {
                continue;
            }
            let block = &mut blocks[self.basis[k].tag.factor().slot()];
            for &(r, c, v) in &self.entries[k] {
                block[(r, c)] += v * x;
            }
        }
        AlgebraElement { coeffs, blocks }
    }

    /// Adds the orthogonal projection of the entry `value` at `(r, c)` of
    /// block `factor` onto each touching generator.
    fn accumulate(&self, factor: Factor, r: usize, c: usize, value: C64, out: &mut [f64]) {
        let m = self.space.block_size(factor);
        for &k in &self.lookup[factor.slot()][r * m + c] {
            let g = self.entries[k]
                .iter()
                .find(|&&(gr, gc, _)| gr == r && gc == c)
                .map(|&(_, _, v)| v)
                .unwrap_or_default();
            out[k] += (g.conj() * value).re / self.norms2[k];
        }
    }

    fn decompose_dense(&self, first: &CMatrix, second: &CMatrix) -> Vec<f64> {
        let mut out = vec![0.0; self.dimension()];
        for (factor, block) in [(Factor::First, first), (Factor::Second, second)] {
            for c in 0..block.ncols() {
                for r in 0..block.nrows() {
                    let v = block[(r, c)];
                    if v != C64::default() {
                        self.accumulate(factor, r, c, v, &mut out);
                    }
                }
            }
        }
        out
    }

    /// Commutator of two generators, decomposed, as a sparse coefficient list.
    fn generator_bracket(&self, i: usize, j: usize) -> Vec<(usize, f64)> {
        let factor = self.basis[i].tag.factor();
        if self.basis[j].tag.factor() != factor {
            return Vec::new();
        }
        let mut product: Vec<(usize, usize, C64)> = Vec::new();
        let mut push = |r: usize, c: usize, v: C64| match product.iter_mut().find(|e| e.0 == r && e.1 == c) {
            Some(e) => e.2 += v,
            None => product.push((r, c, v)),
        };
        for &(r1, c1, v1) in &self.entries[i] {
            for &(r2, c2, v2) in &self.entries[j] {
                if c1 == r2 {
                    push(r1, c2, v1 * v2);
                }
                if c2 == r1 {
                    push(r2, c1, -(v2 * v1));
                }
            }
        }
        let mut out = vec![0.0; self.dimension()];
        for (r, c, v) in product {
            if v != C64::default() {
                self.accumulate(factor, r, c, v, &mut out);
            }
        }
        out.into_iter().enumerate().filter(|&(_, x)| x != 0.0).collect()
    }
}

fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

/// Sparse structure constants restricted to what the connection and
/// curvature code needs: `[p, p]` into `g` and `[h, p]` into `p`.
#[derive(Debug, Clone)]
pub struct BracketTable {
    p_dim: usize,
    g_dim: usize,
    pp: Vec<Vec<(usize, f64)>>,
    hp: Vec<Vec<(usize, f64)>>,
    hp_h_residual: f64,
}

impl BracketTable {
    pub fn new(algebra: &Algebra) -> Self {
        let d = algebra.p_dimension();
        let dim = algebra.dimension();
        let mut pp = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                pp.push(algebra.generator_bracket(i, j));
            }
        }
        let mut hp = Vec::with_capacity((dim - d) * d);
        let mut hp_h_residual = 0.0f64;
        for h in d..dim {
            for j in 0..d {
                let full = algebra.generator_bracket(h, j);
                let (p_terms, h_terms): (Vec<_>, Vec<_>) = full.into_iter().partition(|&(k, _)| k < d);
                hp_h_residual = h_terms.iter().fold(hp_h_residual, |m, &(_, x)| m.max(x.abs()));
                hp.push(p_terms);
            }
        }
        Self {
            p_dim: d,
            g_dim: dim,
            pp,
            hp,
            hp_h_residual,
        }
    }

    pub fn p_dimension(&self) -> usize {
        self.p_dim
    }

    pub fn h_dimension(&self) -> usize {
        self.g_dim - self.p_dim
    }

    /// Sparse full-`g` coefficients of `[e_i, e_j]` for p-basis vectors.
    pub fn pp_terms(&self, i: usize, j: usize) -> &[(usize, f64)] {
        &self.pp[i * self.p_dim + j]
    }

    /// Largest `h`-component seen in any `[h, p]` bracket; zero iff the
    /// splitting is reductive.
    pub fn reductivity_residual(&self) -> f64 {
        self.hp_h_residual
    }

    /// `([x, y]_p, [x, y]_h)` for p-vectors `x`, `y`.
    pub fn bracket_split(&self, x: &PVector, y: &PVector) -> (PVector, DVector<f64>) {
        let d = self.p_dim;
        let mut p_out = PVector::zeros(d);
        let mut h_out = DVector::zeros(self.h_dimension());
        for i in 0..d {
            if x[i] == 0.0 {
                continue;
            }
            for j in 0..d {
                let w = x[i] * y[j];
                if w == 0.0 {
                    continue;
                }
                for &(k, v) in self.pp_terms(i, j) {
                    if k < d {
                        p_out[k] += w * v;
                    } else {
                        h_out[k - d] += w * v;
                    }
                }
            }
        }
        (p_out, h_out)
    }

    /// `[e_k, x]_p` for the `k`-th p-basis vector.
    pub fn bracket_p_basis(&self, k: usize, x: &PVector) -> PVector {
        let d = self.p_dim;
        let mut out = PVector::zeros(d);
        for j in 0..d {
            if x[j] == 0.0 {
                continue;
            }
            for &(l, v) in self.pp_terms(k, j) {
                if l < d {
                    out[l] += x[j] * v;
                }
            }
        }
        out
    }

    pub fn bracket_p(&self, x: &PVector, y: &PVector) -> PVector {
        self.bracket_split(x, y).0
    }

    /// `[h, w]` for an h-vector `h` (coefficients over the h-basis) and a p-vector `w`.
    pub fn ad_h(&self, h: &DVector<f64>, w: &PVector) -> PVector {
        let d = self.p_dim;
        let mut out = PVector::zeros(d);
        for (hk, &x) in h.iter().enumerate() {
            if x == 0.0 {
                continue;
            }
            for j in 0..d {
                let s = x * w[j];
                if s == 0.0 {
                    continue;
                }
                for &(k, v) in &self.hp[hk * d + j] {
                    out[k] += s * v;
                }
            }
        }
        out
    }
}

/// An [`Algebra`] bundled with its precomputed [`BracketTable`]; shared
/// between every metric built on the same `(n, p)`.
#[derive(Debug, Clone)]
pub struct ReductiveSpace {
    algebra: Algebra,
    brackets: BracketTable,
}

impl ReductiveSpace {
    pub fn new(space: SpaceParams) -> Self {
        let algebra = Algebra::new(space);
        let brackets = algebra.bracket_table();
        Self { algebra, brackets }
    }

    pub fn space(&self) -> SpaceParams {
        self.algebra.space()
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn brackets(&self) -> &BracketTable {
        &self.brackets
    }
}

/// Generators of `g` with their realizations, p-part first.
pub fn build_basis(space: SpaceParams) -> Vec<(BasisVector, AlgebraElement)> {
    Algebra::new(space).elements()
}
