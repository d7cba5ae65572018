//! Dense exact-rational linear algebra and the matrix-subspace
//! constructions the finiteness criterion is built from.
//!
//! The first half is generic machinery: [`RatMatrix`], row reduction,
//! kernels, and [`RowSpace`] (a row-reduced subspace with its pivot data,
//! which doubles as a quotient projection).  The second half is the
//! Lie-theoretic layer: [`MatrixSubspace`] with the classical algebras
//! (`gl`, `sl`, `o`, `sp`, `co`, ...), trace-form annihilators, the
//! identification `ρ: Λ²V → o(V)`, the degree-zero derivation action on
//! `Λ²V`, and the reduced algebras `a0(K,Λ)` and `g0(K,Λ)`.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::freelie::{FreeLieAlgebra, GradedIdeal};
use crate::rat::{bit_size, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    ShapeMismatch { expected: (usize, usize), got: (usize, usize) },
    NotAntisymmetric,
}

impl core::fmt::Display for LinAlgError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            LinAlgError::ShapeMismatch { expected, got } => write!(
                f,
                "shape mismatch: expected {}x{}, got {}x{}",
                expected.0, expected.1, got.0, got.1
            ),
            LinAlgError::NotAntisymmetric => write!(f, "matrix is not antisymmetric"),
        }
    }
}

// ---------------------------------------------------------------------------
// Row operations on Vec<Vec<Rat>>
// ---------------------------------------------------------------------------

/// Reduced row echelon form in place; returns the pivot columns.
///
/// Pivots are chosen by smallest bit size within the column to limit
/// coefficient growth.
pub fn rref_rows(rows: &mut Vec<Vec<Rat>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let mut best: Option<(usize, u64)> = None;
        for (i, row) in rows.iter().enumerate().skip(r) {
            if !row[c].is_zero() {
                let sz = bit_size(&row[c]);
                if best.map_or(true, |(_, b)| sz < b) {
                    best = Some((i, sz));
                }
            }
        }
        let Some((pivot_row, _)) = best else { continue };
        rows.swap(r, pivot_row);
        let inv = {
            let p = rows[r][c].clone();
            Rat::one() / p
        };
        for x in rows[r].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(pivot.iter()) {
                    if !p.is_zero() {
                        *x = &*x - &(&f * p);
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{x : A x = 0}`, where the rows of `rows` are the rows of `A`.
pub fn kernel_rows(rows: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let mut work: Vec<Vec<Rat>> = rows.to_vec();
    let pivots = rref_rows(&mut work, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for f in 0..ncols {
        if is_pivot[f] {
            continue;
        }
        let mut v = vec![Rat::zero(); ncols];
        v[f] = Rat::one();
        for (k, &p) in pivots.iter().enumerate() {
            v[p] = -work[k][f].clone();
        }
        basis.push(v);
    }
    basis
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b.iter()) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

// ---------------------------------------------------------------------------
// RowSpace: a canonical row-reduced subspace of K^ncols
// ---------------------------------------------------------------------------

/// A linear subspace of `K^ncols` held in reduced row echelon form.
///
/// Besides spanning-set canonicalisation this provides the quotient map
/// `K^ncols → K^ncols / span`: [`RowSpace::reduce`] returns the canonical
/// residual of a vector and [`RowSpace::quotient_coords`] its coordinates
/// on the non-pivot columns, which form a basis of the quotient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowSpace {
    ncols: usize,
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn from_rows(ncols: usize, rows: impl IntoIterator<Item = Vec<Rat>>) -> Self {
        let mut rows: Vec<Vec<Rat>> = rows.into_iter().collect();
        for row in &rows {
            assert_eq!(row.len(), ncols, "row length mismatch");
        }
        let pivots = rref_rows(&mut rows, ncols);
        RowSpace { ncols, rows, pivots }
    }

    pub fn zero(ncols: usize) -> Self {
        RowSpace { ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ncols: usize) -> Self {
        let mut rows = Vec::with_capacity(ncols);
        for i in 0..ncols {
            let mut v = vec![Rat::zero(); ncols];
            v[i] = Rat::one();
            rows.push(v);
        }
        RowSpace { ncols, rows, pivots: (0..ncols).collect() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn free_cols(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols).filter(|&c| !is_pivot[c]).collect()
    }

    /// Canonical residual of `v` modulo the row space.
    pub fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.ncols);
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(self.pivots.iter()) {
            if !out[p].is_zero() {
                let f = out[p].clone();
                for (x, r) in out.iter_mut().zip(row.iter()) {
                    if !r.is_zero() {
                        *x = &*x - &(&f * r);
                    }
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    pub fn contains_space(&self, other: &RowSpace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// Coordinates of `v` in the quotient, i.e. the residual restricted to
    /// the non-pivot columns.
    pub fn quotient_coords(&self, v: &[Rat]) -> Vec<Rat> {
        let red = self.reduce(v);
        self.free_cols().into_iter().map(|c| red[c].clone()).collect()
    }

    pub fn quotient_dim(&self) -> usize {
        self.ncols - self.rows.len()
    }

    /// Matrix of the quotient map: row `r` gives the `r`-th quotient
    /// coordinate of each unit vector.
    pub fn quotient_matrix(&self) -> Vec<Vec<Rat>> {
        let qdim = self.quotient_dim();
        let mut out = vec![vec![Rat::zero(); self.ncols]; qdim];
        for c in 0..self.ncols {
            let mut e = vec![Rat::zero(); self.ncols];
            e[c] = Rat::one();
            let qc = self.quotient_coords(&e);
            for r in 0..qdim {
                out[r][c] = qc[r].clone();
            }
        }
        out
    }

    /// Orthogonal complement under the standard dot product.
    pub fn dot_complement(&self) -> RowSpace {
        let basis = kernel_rows(&self.rows, self.ncols);
        RowSpace::from_rows(self.ncols, basis)
    }

    pub fn sum(&self, other: &RowSpace) -> RowSpace {
        assert_eq!(self.ncols, other.ncols);
        RowSpace::from_rows(self.ncols, self.rows.iter().chain(other.rows.iter()).cloned())
    }

    /// Intersection of the two row spaces.
    pub fn intersect(&self, other: &RowSpace) -> RowSpace {
        assert_eq!(self.ncols, other.ncols);
        // Solve sum x_i a_i = sum y_j b_j: kernel over (x, y).
        let na = self.rows.len();
        let nb = other.rows.len();
        let mut cond: Vec<Vec<Rat>> = Vec::with_capacity(self.ncols);
        for c in 0..self.ncols {
            let mut row = Vec::with_capacity(na + nb);
            for a in &self.rows {
                row.push(a[c].clone());
            }
            for b in &other.rows {
                row.push(-b[c].clone());
            }
            cond.push(row);
        }
        let ker = kernel_rows(&cond, na + nb);
        let vectors = ker.into_iter().map(|k| {
            let mut v = vec![Rat::zero(); self.ncols];
            for (i, a) in self.rows.iter().enumerate() {
                if !k[i].is_zero() {
                    for (x, e) in v.iter_mut().zip(a.iter()) {
                        *x = &*x + &(&k[i] * e);
                    }
                }
            }
            v
        });
        RowSpace::from_rows(self.ncols, vectors)
    }
}

// ---------------------------------------------------------------------------
// RatMatrix
// ---------------------------------------------------------------------------

/// Dense matrix of exact rationals, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RatMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        RatMatrix { rows: r, cols: c, data }
    }

    /// Builds an n x n matrix from integer entries; handy in tests and
    /// structure tables.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        RatMatrix::from_fn(r, c, |i, j| crate::rat::q(rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn col(&self, c: usize) -> Vec<Rat> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> RatMatrix {
        RatMatrix::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMatrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j) + other.at(i, j))
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMatrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j) - other.at(i, j))
    }

    pub fn neg(&self) -> RatMatrix {
        RatMatrix::from_fn(self.rows, self.cols, |i, j| -self.at(i, j).clone())
    }

    pub fn scale(&self, s: &Rat) -> RatMatrix {
        RatMatrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j) * s)
    }

    pub fn matmul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        RatMatrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = Rat::zero();
            for k in 0..self.cols {
                let a = self.at(i, k);
                if !a.is_zero() {
                    let b = other.at(k, j);
                    if !b.is_zero() {
                        acc += a * b;
                    }
                }
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn hstack(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.rows, other.rows);
        RatMatrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                other.at(i, j - self.cols).clone()
            }
        })
    }

    pub fn trace(&self) -> Rat {
        assert_eq!(self.rows, self.cols);
        let mut acc = Rat::zero();
        for i in 0..self.rows {
            acc += self.at(i, i);
        }
        acc
    }

    /// tr(self * other), computed without forming the product.
    pub fn trace_prod(&self, other: &RatMatrix) -> Rat {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.rows, other.cols);
        let mut acc = Rat::zero();
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if !a.is_zero() {
                    let b = other.at(k, i);
                    if !b.is_zero() {
                        acc += a * b;
                    }
                }
            }
        }
        acc
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.row_vecs();
        rref_rows(&mut rows, self.cols).len()
    }

    /// Basis of the right kernel `{x : self x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Rat>> {
        kernel_rows(&self.row_vecs(), self.cols)
    }

    /// Row-major vectorisation.
    pub fn vectorize(&self) -> Vec<Rat> {
        self.data.clone()
    }

    pub fn from_vec(n_rows: usize, n_cols: usize, v: Vec<Rat>) -> Self {
        assert_eq!(v.len(), n_rows * n_cols);
        RatMatrix { rows: n_rows, cols: n_cols, data: v }
    }

    pub fn is_antisymmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..=i {
                if *self.at(i, j) != -self.at(j, i).clone() {
                    return false;
                }
            }
        }
        true
    }
}

// ---------------------------------------------------------------------------
// MatrixSubspace
// ---------------------------------------------------------------------------

/// A linear subspace of `n x n` matrices, held as a canonical row-reduced
/// basis of vectorisations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixSubspace {
    n: usize,
    space: RowSpace,
}

impl MatrixSubspace {
    pub fn span(n: usize, mats: impl IntoIterator<Item = RatMatrix>) -> Self {
        let rows = mats.into_iter().map(|m| {
            assert_eq!((m.rows(), m.cols()), (n, n), "subspace of n x n matrices");
            m.vectorize()
        });
        MatrixSubspace { n, space: RowSpace::from_rows(n * n, rows) }
    }

    pub fn zero(n: usize) -> Self {
        MatrixSubspace { n, space: RowSpace::zero(n * n) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> Vec<RatMatrix> {
        self.space
            .basis()
            .iter()
            .map(|v| RatMatrix::from_vec(self.n, self.n, v.clone()))
            .collect()
    }

    pub fn contains(&self, m: &RatMatrix) -> bool {
        self.space.contains(&m.vectorize())
    }

    pub fn contains_space(&self, other: &MatrixSubspace) -> bool {
        self.space.contains_space(&other.space)
    }

    pub fn row_space(&self) -> &RowSpace {
        &self.space
    }

    pub fn sum(&self, other: &MatrixSubspace) -> MatrixSubspace {
        assert_eq!(self.n, other.n);
        MatrixSubspace { n: self.n, space: self.space.sum(&other.space) }
    }

    pub fn intersect(&self, other: &MatrixSubspace) -> MatrixSubspace {
        assert_eq!(self.n, other.n);
        MatrixSubspace { n: self.n, space: self.space.intersect(&other.space) }
    }

    pub fn is_gl(&self) -> bool {
        self.dim() == self.n * self.n
    }

    /// Whether the subspace is closed under the commutator.  The criterion
    /// only uses the linear structure, so a non-closed input is legal; the
    /// caller may want to surface a warning.
    pub fn is_lie_closed(&self) -> bool {
        let basis = self.basis();
        for (i, a) in basis.iter().enumerate() {
            for b in basis.iter().skip(i + 1) {
                let comm = a.matmul(b).sub(&b.matmul(a));
                if !self.contains(&comm) {
                    return false;
                }
            }
        }
        true
    }

    // -- classical algebras ------------------------------------------------

    pub fn gl(n: usize) -> Self {
        let mut mats = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let mut m = RatMatrix::zeros(n, n);
                m.set(a, b, Rat::one());
                mats.push(m);
            }
        }
        MatrixSubspace::span(n, mats)
    }

    pub fn sl(n: usize) -> Self {
        solve_gl_conditions(n, 1, |x| vec![x.trace()])
    }

    /// Antisymmetric matrices `o(n)` for the standard symmetric form.
    pub fn o(n: usize) -> Self {
        let mut mats = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let mut m = RatMatrix::zeros(n, n);
                m.set(i, j, Rat::one());
                m.set(j, i, -Rat::one());
                mats.push(m);
            }
        }
        MatrixSubspace::span(n, mats)
    }

    /// `sp(n/2)` acting on `K^n` (n even) for the standard symplectic form.
    pub fn sp(n: usize) -> Self {
        assert!(n % 2 == 0, "sp needs even dimension");
        Self::o_of_form(&standard_symplectic_form(n))
    }

    /// Conformal orthogonal algebra: antisymmetric plus scalars.
    pub fn co(n: usize) -> Self {
        let mut mats = MatrixSubspace::o(n).basis();
        mats.push(RatMatrix::identity(n));
        MatrixSubspace::span(n, mats)
    }

    /// Conformal symplectic algebra on `K^n` (n even).
    pub fn csp(n: usize) -> Self {
        let mut mats = MatrixSubspace::sp(n).basis();
        mats.push(RatMatrix::identity(n));
        MatrixSubspace::span(n, mats)
    }

    /// `{X : X^T B + B X = 0}` for a bilinear form `B`.
    pub fn o_of_form(b: &RatMatrix) -> Self {
        let n = b.rows();
        solve_gl_conditions(n, n * n, |x| {
            x.transpose().matmul(b).add(&b.matmul(x)).vectorize()
        })
    }

    /// `{X : X^T B + B X in K B}` for a bilinear form `B`.
    pub fn co_of_form(b: &RatMatrix) -> Self {
        let n = b.rows();
        let span = RowSpace::from_rows(n * n, vec![b.vectorize()]);
        Self::co_of_space_impl(n, &span)
    }

    /// `{X : X^T B + B X = 0 for every B in the space}`.
    pub fn o_of_space(n: usize, forms: &[RatMatrix]) -> Self {
        let forms = forms.to_vec();
        solve_gl_conditions(n, forms.len() * n * n, move |x| {
            let mut out = Vec::new();
            for b in &forms {
                out.extend(x.transpose().matmul(b).add(&b.matmul(x)).vectorize());
            }
            out
        })
    }

    /// `{X : X^T B + B X in span(forms) for every B in the space}`.
    pub fn co_of_space(n: usize, forms: &[RatMatrix]) -> Self {
        let span = RowSpace::from_rows(n * n, forms.iter().map(|b| b.vectorize()));
        Self::co_of_space_impl(n, &span)
    }

    fn co_of_space_impl(n: usize, span: &RowSpace) -> Self {
        let forms: Vec<RatMatrix> = span
            .basis()
            .iter()
            .map(|v| RatMatrix::from_vec(n, n, v.clone()))
            .collect();
        let span = span.clone();
        let per_form = span.quotient_dim();
        solve_gl_conditions(n, forms.len() * per_form, move |x| {
            let mut out = Vec::new();
            for b in &forms {
                let img = x.transpose().matmul(b).add(&b.matmul(x)).vectorize();
                out.extend(span.quotient_coords(&img));
            }
            out
        })
    }
}

/// Standard symplectic form `[[0, I], [-I, 0]]` on `K^n`, n even.
pub fn standard_symplectic_form(n: usize) -> RatMatrix {
    assert!(n % 2 == 0);
    let k = n / 2;
    let mut m = RatMatrix::zeros(n, n);
    for i in 0..k {
        m.set(i, k + i, Rat::one());
        m.set(k + i, i, -Rat::one());
    }
    m
}

/// Cuts out `{X in gl(n) : cond(X) = 0}` where `cond` is linear with
/// `n_out` output coordinates.
fn solve_gl_conditions(
    n: usize,
    n_out: usize,
    cond: impl Fn(&RatMatrix) -> Vec<Rat>,
) -> MatrixSubspace {
    // Condition matrix over the n^2 elementary-matrix coordinates.
    let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let mut e = RatMatrix::zeros(n, n);
            e.set(a, b, Rat::one());
            let out = cond(&e);
            assert_eq!(out.len(), n_out);
            cols.push(out);
        }
    }
    let rows: Vec<Vec<Rat>> =
        (0..n_out).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
    let ker = kernel_rows(&rows, n * n);
    MatrixSubspace::span(n, ker.into_iter().map(|v| RatMatrix::from_vec(n, n, v)))
}

// ---------------------------------------------------------------------------
// Trace-form annihilators
// ---------------------------------------------------------------------------

/// Annihilator of `s` under the trace form `tr(AX)` inside `within`.
///
/// Requires `s` to be contained in `within`; then
/// `dim s + dim result = dim within`.
pub fn trace_orth(s: &MatrixSubspace, within: &MatrixSubspace) -> MatrixSubspace {
    assert_eq!(s.n(), within.n());
    let n = s.n();
    let wb = within.basis();
    let sb = s.basis();
    // rows: one condition per element of s's basis, unknowns = coords in wb.
    let rows: Vec<Vec<Rat>> = sb
        .iter()
        .map(|x| wb.iter().map(|w| w.trace_prod(x)).collect())
        .collect();
    let ker = kernel_rows(&rows, wb.len());
    let mats = ker.into_iter().map(|coef| {
        let mut acc = RatMatrix::zeros(n, n);
        for (c, w) in coef.iter().zip(wb.iter()) {
            if !c.is_zero() {
                acc = acc.add(&w.scale(c));
            }
        }
        acc
    });
    MatrixSubspace::span(n, mats)
}

/// Annihilator of `s` under the trace form inside all of `gl(n)`.
pub fn trace_orth_gl(s: &MatrixSubspace) -> MatrixSubspace {
    let n = s.n();
    // tr(A X) = 0 for all X in s  <=>  vec(A) . vec(X^T) = 0.
    let rows: Vec<Vec<Rat>> = s.basis().iter().map(|x| x.transpose().vectorize()).collect();
    let ker = kernel_rows(&rows, n * n);
    MatrixSubspace::span(n, ker.into_iter().map(|v| RatMatrix::from_vec(n, n, v)))
}

// ---------------------------------------------------------------------------
// Wedge coordinates and the rho identification
// ---------------------------------------------------------------------------

/// Dimension of `Λ²(K^n)`.
pub fn wedge_dim(n: usize) -> usize {
    n * (n - 1) / 2
}

/// Index pairs `(i, j)`, `i < j`, in lexicographic order.  These are the
/// `Λ²V` coordinates used throughout, and they agree with the degree-2
/// Lyndon words.
pub fn wedge_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(wedge_dim(n));
    for i in 0..n {
        for j in (i + 1)..n {
            out.push((i, j));
        }
    }
    out
}

pub fn wedge_index(n: usize, i: usize, j: usize) -> usize {
    assert!(i < j && j < n);
    // number of pairs starting below i, plus offset within row i
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// Coordinates of `v ∧ w`.
pub fn wedge_of_vectors(v: &[Rat], w: &[Rat]) -> Vec<Rat> {
    let n = v.len();
    assert_eq!(w.len(), n);
    wedge_pairs(n)
        .into_iter()
        .map(|(i, j)| &(&v[i] * &w[j]) - &(&v[j] * &w[i]))
        .collect()
}

/// The isomorphism `ρ: Λ²V → o(V)`, `ρ(v ∧ w) = v wᵀ − w vᵀ`, on wedge
/// coordinates.
pub fn rho(n: usize, coords: &[Rat]) -> RatMatrix {
    assert_eq!(coords.len(), wedge_dim(n));
    let mut m = RatMatrix::zeros(n, n);
    for (idx, (i, j)) in wedge_pairs(n).into_iter().enumerate() {
        m.set(i, j, coords[idx].clone());
        m.set(j, i, -coords[idx].clone());
    }
    m
}

/// Inverse of [`rho`]; errors unless the matrix is antisymmetric.
pub fn rho_inv(m: &RatMatrix) -> Result<Vec<Rat>, LinAlgError> {
    if !m.is_antisymmetric() {
        return Err(LinAlgError::NotAntisymmetric);
    }
    let n = m.rows();
    Ok(wedge_pairs(n).into_iter().map(|(i, j)| m.at(i, j).clone()).collect())
}

/// Matrix of the degree-zero derivation `T_A` restricted to `Λ²V`, in wedge
/// coordinates: `T_A(v ∧ w) = Av ∧ w + v ∧ Aw`.
pub fn ta_on_wedge(a: &RatMatrix) -> RatMatrix {
    let n = a.rows();
    assert_eq!(a.cols(), n);
    let pairs = wedge_pairs(n);
    let nw = pairs.len();
    let mut m = RatMatrix::zeros(nw, nw);
    for (src, &(i, j)) in pairs.iter().enumerate() {
        // A e_i ∧ e_j = sum_k A_ki e_k ∧ e_j
        for k in 0..n {
            let aki = a.at(k, i);
            if !aki.is_zero() && k != j {
                let (dst, sign) = if k < j {
                    (wedge_index(n, k, j), Rat::one())
                } else {
                    (wedge_index(n, j, k), -Rat::one())
                };
                let cur = m.at(dst, src) + &(aki * &sign);
                m.set(dst, src, cur);
            }
            let akj = a.at(k, j);
            if !akj.is_zero() && k != i {
                let (dst, sign) = if i < k {
                    (wedge_index(n, i, k), Rat::one())
                } else {
                    (wedge_index(n, k, i), -Rat::one())
                };
                let cur = m.at(dst, src) + &(akj * &sign);
                m.set(dst, src, cur);
            }
        }
    }
    m
}

// ---------------------------------------------------------------------------
// Reduced algebras a0(K, Λ) and g0(K, Λ)
// ---------------------------------------------------------------------------

/// `a0(K, Λ) = {A in Λ : T_A(Λ²V) ⊆ K_{-2} and A(V) ⊆ W}`, the part of Λ
/// whose derivation kills every negative degree below −1 modulo `K`.
///
/// Solved as a single kernel problem over the coordinates of Λ.
pub fn a0_compute(lambda: &MatrixSubspace, k: &GradedIdeal, w: &RowSpace) -> MatrixSubspace {
    let n = lambda.n();
    assert_eq!(n, k.n());
    assert_eq!(w.ncols(), n);
    let lb = lambda.basis();
    let mut rows: Vec<Vec<Rat>> = Vec::new();

    if k.mu() >= 2 {
        let k2 = k.slice(2);
        let nw = wedge_dim(n);
        let actions: Vec<RatMatrix> = lb.iter().map(ta_on_wedge).collect();
        for src in 0..nw {
            // T_A(e_i ∧ e_j) must fall in K_{-2}.
            let cols: Vec<Vec<Rat>> = actions.iter().map(|m| m.col(src)).collect();
            let qcols: Vec<Vec<Rat>> = cols.iter().map(|c| k2.quotient_coords(c)).collect();
            let qdim = k2.quotient_dim();
            for r in 0..qdim {
                rows.push(qcols.iter().map(|qc| qc[r].clone()).collect());
            }
        }
    }

    if w.dim() < n {
        for j in 0..n {
            // A e_j must fall in W.
            let cols: Vec<Vec<Rat>> = lb.iter().map(|b| b.col(j)).collect();
            let qcols: Vec<Vec<Rat>> = cols.iter().map(|c| w.quotient_coords(c)).collect();
            for r in 0..w.quotient_dim() {
                rows.push(qcols.iter().map(|qc| qc[r].clone()).collect());
            }
        }
    }

    let ker = kernel_rows(&rows, lb.len());
    MatrixSubspace::span(n, ker.into_iter().map(|coef| combine(&lb, &coef, n)))
}

/// `g0(K, Λ) = {A in Λ : T_A(K_{-p}) ⊆ K_{-p} for 2 ≤ p ≤ μ}`, the
/// degree-zero layer of the maximal Λ-prolongation.
pub fn g0_compute(ctx: &FreeLieAlgebra, lambda: &MatrixSubspace, k: &GradedIdeal) -> MatrixSubspace {
    let n = lambda.n();
    assert_eq!(n, k.n());
    let lb = lambda.basis();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for p in 2..=k.mu() {
        let slice = k.slice(p);
        if slice.dim() == 0 || slice.quotient_dim() == 0 {
            continue;
        }
        let ders: Vec<RatMatrix> = lb.iter().map(|b| ctx.derivation_matrix(b, p)).collect();
        for kv in slice.basis() {
            let imgs: Vec<Vec<Rat>> = ders.iter().map(|d| d.mul_vec(kv)).collect();
            let qimgs: Vec<Vec<Rat>> = imgs.iter().map(|v| slice.quotient_coords(v)).collect();
            for r in 0..slice.quotient_dim() {
                rows.push(qimgs.iter().map(|qi| qi[r].clone()).collect());
            }
        }
    }
    let ker = kernel_rows(&rows, lb.len());
    MatrixSubspace::span(n, ker.into_iter().map(|coef| combine(&lb, &coef, n)))
}

fn combine(basis: &[RatMatrix], coef: &[Rat], n: usize) -> RatMatrix {
    let mut acc = RatMatrix::zeros(n, n);
    for (c, b) in coef.iter().zip(basis.iter()) {
        if !c.is_zero() {
            acc = acc.add(&b.scale(c));
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{q, qr};
    use alloc::vec;

    fn simple_rng(seed: u64) -> impl FnMut() -> i64 {
        let mut state = seed.wrapping_mul(0x9E3779B97F4A7C15) | 1;
        move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            ((state >> 33) as i64 % 7) - 3
        }
    }

    fn random_matrix(n: usize, rng: &mut impl FnMut() -> i64) -> RatMatrix {
        RatMatrix::from_fn(n, n, |_, _| q(rng()))
    }

    #[test]
    fn rref_and_kernel_basics() {
        let id = RatMatrix::identity(4);
        assert_eq!(id.rank(), 4);
        assert!(id.kernel().is_empty());

        let m = RatMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(m.rank(), 1);
        let ker = m.kernel();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn rowspace_reduce_and_quotient() {
        let rs = RowSpace::from_rows(3, vec![vec![q(1), q(1), q(0)], vec![q(0), q(2), q(2)]]);
        assert_eq!(rs.dim(), 2);
        assert!(rs.contains(&[q(1), q(0), q(-1)]));
        assert!(!rs.contains(&[q(0), q(0), q(1)]));
        let qc = rs.quotient_coords(&[q(0), q(0), q(5)]);
        assert_eq!(qc.len(), 1);
        assert!(!qc[0].is_zero());
    }

    #[test]
    fn intersect_sl_with_scalars_is_zero() {
        let n = 3;
        let sl = MatrixSubspace::sl(n);
        let scalars = MatrixSubspace::span(n, vec![RatMatrix::identity(n)]);
        let meet = sl.intersect(&scalars);
        assert_eq!(meet.dim(), 0);
        assert_eq!(sl.dim(), 8);
    }

    #[test]
    fn classical_dimensions() {
        assert_eq!(MatrixSubspace::gl(4).dim(), 16);
        assert_eq!(MatrixSubspace::sl(4).dim(), 15);
        assert_eq!(MatrixSubspace::o(4).dim(), 6);
        assert_eq!(MatrixSubspace::sp(4).dim(), 10);
        assert_eq!(MatrixSubspace::co(4).dim(), 7);
        assert_eq!(MatrixSubspace::csp(4).dim(), 11);
        assert_eq!(MatrixSubspace::o_of_form(&RatMatrix::identity(3)).dim(), 3);
    }

    #[test]
    fn trace_orth_dimension_count() {
        let mut rng = simple_rng(7);
        for n in 2..=4 {
            let gl = MatrixSubspace::gl(n);
            for trial in 0..5 {
                let k = 1 + (trial % n);
                let s = MatrixSubspace::span(n, (0..k).map(|_| random_matrix(n, &mut rng)));
                let orth = trace_orth(&s, &gl);
                assert_eq!(s.dim() + orth.dim(), n * n);
                let fast = trace_orth_gl(&s);
                assert_eq!(fast.dim(), orth.dim());
                assert!(fast.contains_space(&orth));
            }
        }
    }

    #[test]
    fn co2_trace_orth_matches_traceless_symmetric() {
        // For co(2) the annihilator consists of the traceless symmetric
        // matrices, spanned by diag(1,-1) and the off-diagonal symmetric unit.
        let co2 = MatrixSubspace::co(2);
        let orth = trace_orth_gl(&co2);
        assert_eq!(orth.dim(), 2);
        let m1 = RatMatrix::from_i64(&[&[1, 0], &[0, -1]]);
        let m2 = RatMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert!(orth.contains(&m1));
        assert!(orth.contains(&m2));
    }

    #[test]
    fn trace_orth_of_gl_is_zero() {
        let gl = MatrixSubspace::gl(3);
        assert_eq!(trace_orth(&gl, &gl).dim(), 0);
    }

    #[test]
    fn rho_examples_and_inverse() {
        let m = rho(2, &[q(1)]);
        assert_eq!(m, RatMatrix::from_i64(&[&[0, 1], &[-1, 0]]));

        let mut rng = simple_rng(99);
        for n in 2..=5 {
            for _ in 0..10 {
                let coords: Vec<Rat> = (0..wedge_dim(n)).map(|_| qr(rng(), 2)).collect();
                let back = rho_inv(&rho(n, &coords)).unwrap();
                assert_eq!(back, coords);
            }
        }
        assert!(rho_inv(&RatMatrix::identity(2)).is_err());
    }

    #[test]
    fn rho_equivariance_against_matrix_action() {
        // ρ(T_A(v ∧ w)) = A ρ(v∧w) + ρ(v∧w) Aᵀ, both sides computed by
        // independent routes.
        let mut rng = simple_rng(1234);
        for n in 2..=5 {
            for _ in 0..20 {
                let a = random_matrix(n, &mut rng);
                let v: Vec<Rat> = (0..n).map(|_| q(rng())).collect();
                let w: Vec<Rat> = (0..n).map(|_| q(rng())).collect();
                let wedge = wedge_of_vectors(&v, &w);
                let lhs = rho(n, &ta_on_wedge(&a).mul_vec(&wedge));
                let x = rho(n, &wedge);
                let rhs = a.matmul(&x).add(&x.matmul(&a.transpose()));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn ta_on_wedge_identity_doubles() {
        for n in 2..=4 {
            let t = ta_on_wedge(&RatMatrix::identity(n));
            assert_eq!(t, RatMatrix::identity(wedge_dim(n)).scale(&q(2)));
        }
    }

    #[test]
    fn trace_pairing_adjunction() {
        // tr((AX + XAᵀ)Y) = 2 tr(A (XY)) for X, Y antisymmetric.
        let mut rng = simple_rng(4321);
        for n in 2..=4 {
            for _ in 0..10 {
                let a = random_matrix(n, &mut rng);
                let xw: Vec<Rat> = (0..wedge_dim(n)).map(|_| q(rng())).collect();
                let yw: Vec<Rat> = (0..wedge_dim(n)).map(|_| q(rng())).collect();
                let x = rho(n, &xw);
                let y = rho(n, &yw);
                let lhs = a.matmul(&x).add(&x.matmul(&a.transpose())).trace_prod(&y);
                let rhs = q(2) * a.trace_prod(&x.matmul(&y));
                assert_eq!(lhs, rhs);
            }
        }
    }
}
