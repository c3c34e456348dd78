//! Dense complex matrices, tensor products, partial traces, and the
//! permutation/projection operators used by the trace formulas.
//!
//! One index convention is used everywhere: storage is row-major and the
//! composite basis index of a bipartite state is `i = i1 * d2 + i2`, i.e.
//! subsystem 1 is the slowest (most significant) digit. `kron` and the
//! mixed-radix coding in [`SubsystemLayout`] agree by construction.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Hard limit on a single matrix side. Everything here runs at desk scale;
/// the limit exists so a bad tensor-product request fails instead of
/// exhausting memory.
pub const MAX_DIM: usize = 4096;

/// Dense complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl DenseMatrix {
    /// Builds a matrix from row-major entries, validating length and finiteness.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_diag(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &z) in diag.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    /// Convenience constructor from real row-major entries.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        Self {
            rows,
            cols,
            data: entries.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn matmul(&self, rhs: &DenseMatrix) -> DenseMatrix {
        assert_eq!(
            self.cols, rhs.rows,
            "matmul shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = DenseMatrix::zeros(self.rows, rhs.cols);
        // i-k-j loop order keeps the inner accesses contiguous.
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let lhs_row = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                let rhs_row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                for (o, &b) in lhs_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len(), "mul_vec shape mismatch");
        (0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .map(|(&a, &x)| a * x)
                    .sum()
            })
            .collect()
    }

    pub fn add(&self, rhs: &DenseMatrix) -> DenseMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "add shape mismatch");
        let data = self.data.iter().zip(&rhs.data).map(|(&a, &b)| a + b).collect();
        DenseMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, rhs: &DenseMatrix) -> DenseMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "sub shape mismatch");
        let data = self.data.iter().zip(&rhs.data).map(|(&a, &b)| a - b).collect();
        DenseMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: Complex64) -> DenseMatrix {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| s * a).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    /// Largest entry magnitude of `self - rhs`.
    pub fn max_abs_diff(&self, rhs: &DenseMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "diff shape mismatch");
        self.data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// `tr(a * b)` without forming the product.
pub fn trace_of_product(a: &DenseMatrix, b: &DenseMatrix) -> Complex64 {
    assert_eq!(a.cols(), b.rows(), "trace_of_product shape mismatch");
    assert_eq!(a.rows(), b.cols(), "trace_of_product shape mismatch");
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc
}

/// Kronecker product under the subsystem-1-major convention:
/// `(a ⊗ b)[(i1,i2),(j1,j2)] = a[i1,j1] * b[i2,j2]`.
pub fn kron(a: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix> {
    let rows = a.rows().checked_mul(b.rows()).filter(|&r| r <= MAX_DIM);
    let cols = a.cols().checked_mul(b.cols()).filter(|&c| c <= MAX_DIM);
    let (rows, cols) = match (rows, cols) {
        (Some(r), Some(c)) => (r, c),
        _ => {
            return Err(Error::DimensionTooLarge {
                dim: a.rows().saturating_mul(b.rows()),
                limit: MAX_DIM,
            })
        }
    };
    let mut out = DenseMatrix::zeros(rows, cols);
    for i1 in 0..a.rows() {
        for j1 in 0..a.cols() {
            let s = a[(i1, j1)];
            if s == Complex64::new(0.0, 0.0) {
                continue;
            }
            for i2 in 0..b.rows() {
                for j2 in 0..b.cols() {
                    out[(i1 * b.rows() + i2, j1 * b.cols() + j2)] = s * b[(i2, j2)];
                }
            }
        }
    }
    Ok(out)
}

/// Kronecker product of a list; the empty product is the 1x1 identity.
pub fn kron_all(factors: &[&DenseMatrix]) -> Result<DenseMatrix> {
    let mut acc = DenseMatrix::identity(1);
    for f in factors {
        acc = kron(&acc, f)?;
    }
    Ok(acc)
}

/// The `(d1, d2)` split that defines every bipartite measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bipartition {
    d1: usize,
    d2: usize,
}

impl Bipartition {
    pub fn new(d1: usize, d2: usize) -> Result<Self> {
        if d1 == 0 || d2 == 0 {
            return Err(Error::InvalidParameter("bipartition dims must be positive".into()));
        }
        Ok(Self { d1, d2 })
    }

    pub fn d1(&self) -> usize {
        self.d1
    }

    pub fn d2(&self) -> usize {
        self.d2
    }

    pub fn dim(&self) -> usize {
        self.d1 * self.d2
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.d1, self.d2)
    }
}

/// Subsystem dimensions of a multi-factor space, left factor slowest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsystemLayout {
    dims: Vec<usize>,
}

impl SubsystemLayout {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() || dims.iter().any(|&d| d == 0) {
            return Err(Error::InvalidParameter("subsystem dims must be positive".into()));
        }
        let mut total: usize = 1;
        for &d in &dims {
            total = total
                .checked_mul(d)
                .filter(|&t| t <= MAX_DIM)
                .ok_or(Error::DimensionTooLarge { dim: usize::MAX, limit: MAX_DIM })?;
        }
        Ok(Self { dims })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    /// Composite index of the basis state with the given subsystem indices.
    pub fn encode(&self, indices: &[usize]) -> usize {
        assert_eq!(indices.len(), self.dims.len(), "index count mismatch");
        let mut acc = 0;
        for (&i, &d) in indices.iter().zip(&self.dims) {
            assert!(i < d, "subsystem index out of range");
            acc = acc * d + i;
        }
        acc
    }

    /// Subsystem indices of a composite basis index.
    pub fn decode(&self, mut index: usize) -> Vec<usize> {
        assert!(index < self.total_dim(), "composite index out of range");
        let mut out = vec![0; self.dims.len()];
        for (slot, &d) in out.iter_mut().zip(&self.dims).rev() {
            *slot = index % d;
            index /= d;
        }
        out
    }
}

/// Permutation operator on a multi-factor space.
///
/// `perm[r]` is the position that subsystem `r` moves to, so the operator
/// maps `|i_0 .. i_{n-1}>` to the basis state whose entry at position
/// `perm[r]` is `i_r`. Swapped positions must carry equal dimensions.
pub fn permutation_operator(layout: &SubsystemLayout, perm: &[usize]) -> Result<DenseMatrix> {
    let n = layout.len();
    if perm.len() != n {
        return Err(Error::InvalidParameter(format!(
            "permutation of length {} on {n} subsystems",
            perm.len()
        )));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::InvalidParameter("not a permutation".into()));
        }
        seen[p] = true;
    }
    for (r, &p) in perm.iter().enumerate() {
        let (dr, dp) = (layout.dims()[r], layout.dims()[p]);
        if dr != dp {
            return Err(Error::UnequalSubsystems { i: r, j: p, di: dr, dj: dp });
        }
    }

    let dim = layout.total_dim();
    let mut out = DenseMatrix::zeros(dim, dim);
    let mut moved = vec![0; n];
    for input in 0..dim {
        let digits = layout.decode(input);
        for (r, &p) in perm.iter().enumerate() {
            moved[p] = digits[r];
        }
        out[(layout.encode(&moved), input)] = Complex64::new(1.0, 0.0);
    }
    Ok(out)
}

/// Swap of two subsystems, `T_ij`.
pub fn swap_operator(layout: &SubsystemLayout, i: usize, j: usize) -> Result<DenseMatrix> {
    let mut perm: Vec<usize> = (0..layout.len()).collect();
    perm.swap(i, j);
    permutation_operator(layout, &perm)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// Projector `P±_ij = (1 ± T_ij) / 2` onto the symmetric (antisymmetric)
/// subspace of factors `i` and `j`.
pub fn symmetric_projector(
    layout: &SubsystemLayout,
    i: usize,
    j: usize,
    sign: Sign,
) -> Result<DenseMatrix> {
    let swap = swap_operator(layout, i, j)?;
    let identity = DenseMatrix::identity(layout.total_dim());
    let sum = match sign {
        Sign::Plus => identity.add(&swap),
        Sign::Minus => identity.sub(&swap),
    };
    Ok(sum.scale(Complex64::new(0.5, 0.0)))
}

/// Which factor `partial_trace` keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Keep {
    First,
    Second,
}

/// Reduced matrix on the kept factor; preserves the trace.
pub fn partial_trace(rho: &DenseMatrix, bp: Bipartition, keep: Keep) -> Result<DenseMatrix> {
    let dim = bp.dim();
    if !rho.is_square() || rho.rows() != dim {
        return Err(Error::ShapeMismatch(format!(
            "{}x{} matrix for bipartition {bp}",
            rho.rows(),
            rho.cols()
        )));
    }
    let (d1, d2) = (bp.d1(), bp.d2());
    let out = match keep {
        Keep::First => DenseMatrix::from_fn(d1, d1, |i, j| {
            (0..d2).map(|k| rho[(i * d2 + k, j * d2 + k)]).sum()
        }),
        Keep::Second => DenseMatrix::from_fn(d2, d2, |i, j| {
            (0..d1).map(|k| rho[(k * d2 + i, k * d2 + j)]).sum()
        }),
    };
    Ok(out)
}

/// Result of a unitarity check: the max-entry deviation of `U†U - I`.
#[derive(Debug, Clone, Copy)]
pub struct UnitarityCheck {
    pub deviation: f64,
    pub tol: f64,
}

impl UnitarityCheck {
    pub fn is_unitary(&self) -> bool {
        self.deviation <= self.tol
    }
}

/// Default tolerance for [`check_unitary`]; comfortably above double-precision
/// accumulation error at desk scale (dims <= 256).
pub const UNITARY_TOL: f64 = 1e-10;

pub fn check_unitary(u: &DenseMatrix, tol: f64) -> UnitarityCheck {
    assert!(u.is_square(), "unitarity check on a non-square matrix");
    let gram = u.adjoint().matmul(u);
    let deviation = gram.max_abs_diff(&DenseMatrix::identity(u.rows()));
    UnitarityCheck { deviation, tol }
}
