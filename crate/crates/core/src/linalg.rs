//! Dense matrices over a field with exact elimination.

use crate::scalar::Scalar;
use std::fmt;

#[derive(Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: fmt::Display> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| format!("{}", self[(r, c)])).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<S> std::ops::Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (r, c): (usize, usize)) -> &S {
        &self.data[r * self.cols + c]
    }
}

impl<S> std::ops::IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut S {
        &mut self.data[r * self.cols + c]
    }
}

/// Row-reduced echelon form together with its pivot columns.
pub struct Echelon<S> {
    pub reduced: Matrix<S>,
    pub pivots: Vec<usize>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<S>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Matrix { rows, cols, data }
    }

    pub fn from_row_vecs(cols: usize, rows: &[Vec<S>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend(r.iter().cloned());
        }
        Matrix { rows: rows.len(), cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<S>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, v) in columns.iter().enumerate() {
            assert_eq!(v.len(), rows);
            for (r, x) in v.iter().enumerate() {
                m[(r, c)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[S] {
        &self.data
    }

    pub fn row(&self, r: usize) -> Vec<S> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn column(&self, c: usize) -> Vec<S> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_negligible())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if b.is_zero() {
                        continue;
                    }
                    let v = out[(r, c)].clone() + a.clone() * b.clone();
                    out[(r, c)] = v;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|r| {
                let mut acc = S::zero();
                for c in 0..self.cols {
                    let a = &self[(r, c)];
                    if !a.is_zero() && !v[c].is_zero() {
                        acc = acc + a.clone() * v[c].clone();
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() - b.clone()).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, k: &S) -> Matrix<S> {
        let data = self.data.iter().map(|a| a.clone() * k.clone()).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Matrix<S> {
        self.scale(&-S::one())
    }

    /// Block `[self | other]`.
    pub fn hstack(&self, other: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.rows, other.rows);
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(r, c)] = self[(r, c)].clone();
            }
            for c in 0..other.cols {
                out[(r, self.cols + c)] = other[(r, c)].clone();
            }
        }
        out
    }

    /// Block `[self ; other]`.
    pub fn vstack(&self, other: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Block diagonal `diag(self, other)`.
    pub fn block_diag(&self, other: &Matrix<S>) -> Matrix<S> {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, other);
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix<S>) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self[(r0 + r, c0 + c)] = block[(r, c)].clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix<S> {
        let mut out = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out[(r, c)] = self[(r0 + r, c0 + c)].clone();
            }
        }
        out
    }

    pub fn echelon(&self) -> Echelon<S> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut prow = 0;
        for c in 0..m.cols {
            if prow == m.rows {
                break;
            }
            let mut best: Option<usize> = None;
            let mut best_mag = 0.0;
            for r in prow..m.rows {
                let x = &m[(r, c)];
                if x.is_negligible() {
                    continue;
                }
                let mag = x.magnitude();
                if best.is_none() || (!S::is_exact() && mag > best_mag) {
                    best = Some(r);
                    best_mag = mag;
                    if S::is_exact() {
                        break;
                    }
                }
            }
            let Some(r) = best else { continue };
            if r != prow {
                for k in 0..m.cols {
                    m.data.swap(r * m.cols + k, prow * m.cols + k);
                }
            }
            let inv = S::one() / m[(prow, c)].clone();
            for k in c..m.cols {
                let v = m[(prow, k)].clone() * inv.clone();
                m[(prow, k)] = v;
            }
            for r2 in 0..m.rows {
                if r2 == prow {
                    continue;
                }
                let factor = m[(r2, c)].clone();
                if factor.is_negligible() {
                    if !factor.is_zero() {
                        m[(r2, c)] = S::zero();
                    }
                    continue;
                }
                for k in c..m.cols {
                    let p = m[(prow, k)].clone();
                    if p.is_zero() {
                        continue;
                    }
                    let v = m[(r2, k)].clone() - factor.clone() * p;
                    m[(r2, k)] = v;
                }
            }
            pivots.push(c);
            prow += 1;
        }
        Echelon { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of the null space, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<S>> {
        let e = self.echelon();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (i, &p) in e.pivots.iter().enumerate() {
                v[p] = Some(i);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut v = vec![S::zero(); self.cols];
            v[free] = S::one();
            for (i, &p) in e.pivots.iter().enumerate() {
                v[p] = -e.reduced[(i, free)].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Some solution of `self * x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[S]) -> Option<Vec<S>> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hstack(&Matrix::from_columns(self.rows, &[b.to_vec()]));
        let e = aug.echelon();
        if e.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![S::zero(); self.cols];
        for (i, &p) in e.pivots.iter().enumerate() {
            x[p] = e.reduced[(i, self.cols)].clone();
        }
        Some(x)
    }

    /// A row vector `y` with `y * self = 0` and `y * b != 0`, certifying that
    /// `self * x = b` has no solution.
    pub fn inconsistency_certificate(&self, b: &[S]) -> Option<Vec<S>> {
        let left_null = self.transpose().kernel();
        for y in left_null {
            let yb = dot(&y, b);
            if !yb.is_negligible() {
                return Some(y);
            }
        }
        None
    }

    pub fn inverse(&self) -> Option<Matrix<S>> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let e = self.hstack(&Matrix::identity(n)).echelon();
        if e.pivots.iter().filter(|&&p| p < n).count() < n {
            return None;
        }
        Some(e.reduced.block(0, n, n, n))
    }

    /// Indices of columns forming a basis of the column space.
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.echelon().pivots
    }
}

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    assert_eq!(a.len(), b.len());
    let mut acc = S::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = acc + x.clone() * y.clone();
        }
    }
    acc
}

pub fn vec_add<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

pub fn vec_sub<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn vec_scale<S: Scalar>(a: &[S], k: &S) -> Vec<S> {
    a.iter().map(|x| x.clone() * k.clone()).collect()
}

pub fn vec_is_zero<S: Scalar>(a: &[S]) -> bool {
    a.iter().all(|x| x.is_negligible())
}

pub fn unit_vec<S: Scalar>(n: usize, i: usize) -> Vec<S> {
    let mut v = vec![S::zero(); n];
    v[i] = S::one();
    v
}

/// Rank of the span of a list of vectors of length `n`.
pub fn span_rank<S: Scalar>(n: usize, vectors: &[Vec<S>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_columns(n, vectors).rank()
}

/// Whether `v` lies in the span of `vectors`; returns coefficients if so.
pub fn span_coefficients<S: Scalar>(n: usize, vectors: &[Vec<S>], v: &[S]) -> Option<Vec<S>> {
    if vectors.is_empty() {
        return if vec_is_zero(v) { Some(Vec::new()) } else { None };
    }
    Matrix::from_columns(n, vectors).solve(v)
}

/// A maximal independent subfamily, by index, scanning in order.
pub fn independent_subset<S: Scalar>(n: usize, vectors: &[Vec<S>]) -> Vec<usize> {
    if vectors.is_empty() {
        return Vec::new();
    }
    Matrix::from_columns(n, vectors).pivot_columns()
}

/// Vectors completing a basis of `sub` (given by spanning vectors) to a basis
/// of the ambient space, drawn from `candidates` in order.
pub fn complement_from<S: Scalar>(n: usize, sub: &[Vec<S>], candidates: &[Vec<S>]) -> Vec<usize> {
    let mut all: Vec<Vec<S>> = sub.to_vec();
    all.extend(candidates.iter().cloned());
    let piv = if all.is_empty() { Vec::new() } else { Matrix::from_columns(n, &all).pivot_columns() };
    piv.into_iter().filter(|&p| p >= sub.len()).map(|p| p - sub.len()).collect()
}
