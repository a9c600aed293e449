//! Dense complex linear algebra.
//!
//! Only what the range computations need: a row-major complex matrix, a
//! Hermitian eigensolver, Hermitian/skew splitting, commutator defects, and
//! a few small real solvers used by the optimizers.

mod eigen;
pub mod random;
pub mod real;

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

pub use eigen::{
    hermitian_eigh, hermitian_eigvals, tridiagonalize, EigenDecomposition, DEFAULT_HERMITIAN_TOL,
};
pub use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Row-major complex matrix with finite entries.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite { row: pos / cols.max(1), col: pos % cols.max(1) });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![C64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_diag(diag: &[C64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &z) in diag.iter().enumerate() {
            m.data[i * n + i] = z;
        }
        m
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let d: Vec<C64> = diag.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::from_diag(&d)
    }

    /// Builds a matrix entry by entry. Panics on non-finite output, so use
    /// [`ComplexMatrix::new`] for untrusted data.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self::new(rows, cols, data).expect("from_fn produced a non-finite entry")
    }

    /// Real matrix from nested rows. Panics on ragged input.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::from_fn(r, c, |i, j| C64::new(rows[i][j], 0.0))
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

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<C64> {
        self.data
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j].conj();
            }
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self.data[i * self.cols + i]).sum()
    }

    pub fn diagonal(&self) -> Vec<C64> {
        (0..self.rows.min(self.cols)).map(|i| self.data[i * self.cols + i]).collect()
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| z * factor).collect() }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| z * factor).collect() }
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, factor: f64, other: &Self) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b * factor;
        }
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self.data[i * self.cols + j]).collect()
    }

    /// Columns `start..end` as a new matrix.
    pub fn columns(&self, start: usize, end: usize) -> Self {
        Self::from_fn(self.rows, end - start, |i, j| self.data[i * self.cols + start + j])
    }

    /// Square block `start..end` on both axes.
    pub fn principal(&self, start: usize, end: usize) -> Self {
        Self::from_fn(end - start, end - start, |i, j| self.data[(start + i) * self.cols + start + j])
    }

    pub fn block_diag(&self, other: &Self) -> Self {
        let rows = self.rows + other.rows;
        let cols = self.cols + other.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[i * cols + j] = self.data[i * self.cols + j];
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.data[(self.rows + i) * cols + self.cols + j] = other.data[i * other.cols + j];
            }
        }
        out
    }

    /// `‖H − H*‖_F`.
    pub fn hermitian_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += (self.data[i * n + j] - self.data[j * n + i].conj()).norm_sqr();
            }
        }
        acc.sqrt()
    }

    pub fn is_hermitian(&self, rel_tol: f64) -> bool {
        self.is_square() && self.hermitian_defect() <= rel_tol * self.frobenius_norm()
    }

    /// `(H + H*)/2`.
    pub fn symmetrized(&self) -> Self {
        let n = self.rows;
        Self::from_fn(n, n, |i, j| (self.data[i * n + j] + self.data[j * n + i].conj()) * 0.5)
    }

    /// Frobenius norm of the off-diagonal part.
    pub fn off_diagonal_norm(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i != j {
                    acc += self.data[i * self.cols + j].norm_sqr();
                }
            }
        }
        acc.sqrt()
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let (n, p, m) = (self.rows, self.cols, other.cols);
        let mut out = vec![C64::new(0.0, 0.0); n * m];
        for i in 0..n {
            let row = &mut out[i * m..(i + 1) * m];
            for l in 0..p {
                let a = self.data[i * p + l];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                let brow = &other.data[l * m..(l + 1) * m];
                for (o, b) in row.iter_mut().zip(brow) {
                    *o += a * b;
                }
            }
        }
        Self { rows: n, cols: m, data: out }
    }

    /// `X* self X` for a matrix `X` whose rows match `self`.
    pub fn compress(&self, x: &Self) -> Self {
        x.adjoint().matmul(&self.matmul(x))
    }

    /// `Re Σ_c x_c* self x_c = Re tr(X* self X)`.
    pub fn trace_compression(&self, x: &Self) -> f64 {
        assert_eq!(self.rows, x.rows);
        let n = self.rows;
        let mut acc = 0.0;
        for c in 0..x.cols {
            for i in 0..n {
                let xi = x.data[i * x.cols + c];
                if xi == C64::new(0.0, 0.0) {
                    continue;
                }
                let mut row = C64::new(0.0, 0.0);
                for j in 0..n {
                    row += self.data[i * n + j] * x.data[j * x.cols + c];
                }
                acc += (xi.conj() * row).re;
            }
        }
        acc
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self.data[i * self.cols + j];
                write!(f, "{:>9.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: Self) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: Self) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: Self) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

/// Splits a square matrix into `H = (A + A*)/2` and `G = (A − A*)/(2i)`,
/// so that `A = H + iG` with both parts Hermitian.
pub fn split_hermitian(a: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix)> {
    if !a.is_square() {
        return Err(Error::NonSquare { rows: a.rows, cols: a.cols });
    }
    let n = a.rows;
    let half = C64::new(0.5, 0.0);
    let minus_half_i = C64::new(0.0, -0.5);
    let h = ComplexMatrix::from_fn(n, n, |i, j| (a[(i, j)] + a[(j, i)].conj()) * half);
    let g = ComplexMatrix::from_fn(n, n, |i, j| (a[(i, j)] - a[(j, i)].conj()) * minus_half_i);
    Ok((h, g))
}

/// Commutator and normality defects of a family of square matrices.
#[derive(Clone, Debug)]
pub struct AlgebraDefects {
    /// `commutators[i][j] = ‖A_i A_j − A_j A_i‖_F`.
    pub commutators: Vec<Vec<f64>>,
    /// `normality[j] = ‖A_j* A_j − A_j A_j*‖_F`.
    pub normality: Vec<f64>,
}

impl AlgebraDefects {
    pub fn max_defect(&self) -> f64 {
        let c = self.commutators.iter().flatten().copied().fold(0.0, f64::max);
        self.normality.iter().copied().fold(c, f64::max)
    }
}

pub fn algebra_defects(mats: &[ComplexMatrix]) -> Result<AlgebraDefects> {
    let first = mats.first().ok_or(Error::EmptyTuple)?;
    let n = first.rows;
    for (j, m) in mats.iter().enumerate() {
        if !m.is_square() || m.rows != n {
            return Err(Error::DimensionMismatch(format!(
                "component {j} is {}x{}, expected {n}x{n}",
                m.rows, m.cols
            )));
        }
    }
    let count = mats.len();
    let mut commutators = vec![vec![0.0; count]; count];
    for i in 0..count {
        for j in i + 1..count {
            let d = (&mats[i].matmul(&mats[j]) - &mats[j].matmul(&mats[i])).frobenius_norm();
            commutators[i][j] = d;
            commutators[j][i] = d;
        }
    }
    let normality = mats
        .iter()
        .map(|a| {
            let adj = a.adjoint();
            (&adj.matmul(a) - &a.matmul(&adj)).frobenius_norm()
        })
        .collect();
    Ok(AlgebraDefects { commutators, normality })
}

/// Orthonormalizes the columns of `m` (modified Gram–Schmidt, two passes).
/// Columns that collapse below `1e-14` relative norm are replaced by zero.
pub fn orthonormalize_columns(m: &ComplexMatrix) -> ComplexMatrix {
    let (n, k) = (m.rows, m.cols);
    let mut cols: Vec<Vec<C64>> = (0..k).map(|j| m.column(j)).collect();
    for j in 0..k {
        let norm0 = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for _pass in 0..2 {
            for i in 0..j {
                let proj: C64 = cols[i].iter().zip(&cols[j]).map(|(a, b)| a.conj() * b).sum();
                let (left, right) = cols.split_at_mut(j);
                for (x, y) in right[0].iter_mut().zip(&left[i]) {
                    *x -= proj * y;
                }
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm <= 1e-14 * norm0.max(f64::MIN_POSITIVE) || norm == 0.0 {
            cols[j].iter_mut().for_each(|z| *z = C64::new(0.0, 0.0));
        } else {
            cols[j].iter_mut().for_each(|z| *z /= norm);
        }
    }
    ComplexMatrix::from_fn(n, k, |i, j| cols[j][i])
}

/// Orthonormal basis of the orthogonal complement of the (orthonormal)
/// columns of `x`, built by pivoted Gram–Schmidt on the standard basis.
pub fn orthogonal_complement(x: &ComplexMatrix) -> ComplexMatrix {
    let (n, k) = (x.rows, x.cols);
    let basis: Vec<Vec<C64>> = (0..k).map(|j| x.column(j)).collect();
    // residuals of e_i after projecting out span(x)
    let mut cands: Vec<Vec<C64>> = (0..n)
        .map(|i| {
            let mut v = vec![C64::new(0.0, 0.0); n];
            v[i] = C64::new(1.0, 0.0);
            for _pass in 0..2 {
                for b in &basis {
                    let proj: C64 = b.iter().zip(&v).map(|(a, c)| a.conj() * c).sum();
                    for (vv, bb) in v.iter_mut().zip(b) {
                        *vv -= proj * bb;
                    }
                }
            }
            v
        })
        .collect();
    let mut chosen: Vec<Vec<C64>> = Vec::with_capacity(n - k);
    let mut used = vec![false; n];
    while chosen.len() < n - k {
        let (best, _) = cands
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, v)| (i, v.iter().map(|z| z.norm_sqr()).sum::<f64>()))
            .fold((usize::MAX, -1.0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        used[best] = true;
        let mut v = cands[best].clone();
        for _pass in 0..2 {
            for b in &chosen {
                let proj: C64 = b.iter().zip(&v).map(|(a, c)| a.conj() * c).sum();
                for (vv, bb) in v.iter_mut().zip(b) {
                    *vv -= proj * bb;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        v.iter_mut().for_each(|z| *z /= norm);
        // keep the remaining candidates orthogonal to the new vector
        for (i, c) in cands.iter_mut().enumerate() {
            if used[i] {
                continue;
            }
            let proj: C64 = v.iter().zip(c.iter()).map(|(a, b)| a.conj() * b).sum();
            for (cc, vv) in c.iter_mut().zip(&v) {
                *cc -= proj * vv;
            }
        }
        chosen.push(v);
    }
    ComplexMatrix::from_fn(n, n - k, |i, j| chosen[j][i])
}
