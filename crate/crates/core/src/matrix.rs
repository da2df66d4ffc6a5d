//! Dense matrices over an exact ring and the elimination routines built on
//! them: fraction-free rank and determinant, reduced row echelon form and
//! null spaces over fields, division-free characteristic polynomials.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::ring::{Domain, Field, Ring};

#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<R: Ring> {
    ctx: R::Ctx,
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(ctx: &R::Ctx, rows: usize, cols: usize) -> Self {
        Matrix { ctx: ctx.clone(), rows, cols, data: vec![R::zero(ctx); rows * cols] }
    }

    pub fn identity(ctx: &R::Ctx, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.set(i, i, R::one(ctx));
        }
        m
    }

    /// Rows must be non-empty and rectangular.
    pub fn from_rows(ctx: &R::Ctx, rows: Vec<Vec<R>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidArgument("ragged matrix rows".into()));
        }
        let n = rows.len();
        Ok(Matrix { ctx: ctx.clone(), rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(ctx: &R::Ctx, rows: usize, cols: usize, f: impl Fn(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { ctx: ctx.clone(), rows, cols, data }
    }

    pub fn ctx(&self) -> &R::Ctx {
        &self.ctx
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

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<S: Ring>(&self, ctx: &S::Ctx, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix { ctx: ctx.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.ctx, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix shape mismatch");
        let mut out = Self::zeros(&self.ctx, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).plus(&a.times(b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix shape mismatch");
        Self::from_fn(&self.ctx, self.rows, self.cols, |i, j| self.get(i, j).plus(rhs.get(i, j)))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix shape mismatch");
        Self::from_fn(&self.ctx, self.rows, self.cols, |i, j| self.get(i, j).minus(rhs.get(i, j)))
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::from_fn(&self.ctx, self.rows, self.cols, |i, j| self.get(i, j).times(c))
    }

    /// Commutator `[self, rhs] = self·rhs − rhs·self`.
    pub fn bracket(&self, rhs: &Self) -> Self {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(R::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn trace(&self) -> R {
        (0..self.rows.min(self.cols)).fold(R::zero(&self.ctx), |acc, i| acc.plus(self.get(i, i)))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(&self.ctx, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Smallest `k ≥ 1` with `self^k = I`, searching up to `limit`.
    pub fn multiplicative_order(&self, limit: u64) -> Option<u64> {
        let mut acc = self.clone();
        for k in 1..=limit {
            if acc.is_identity() {
                return Some(k);
            }
            acc = acc.mul(self);
        }
        None
    }

    /// Coefficients `[1, c_1, …, c_n]` of `det(λI − A) = λ^n + c_1 λ^(n−1) + … + c_n`,
    /// by Berkowitz's division-free recursion.
    pub fn charpoly(&self) -> Vec<R> {
        assert!(self.is_square(), "characteristic polynomial of a non-square matrix");
        let n = self.rows;
        let zero = R::zero(&self.ctx);
        let one = R::one(&self.ctx);
        let mut poly = vec![one.clone()];
        // Grow from the trailing 1×1 block to the whole matrix.
        for k in (0..n).rev() {
            let m = n - 1 - k;
            let a = self.get(k, k).clone();
            // Column of the Toeplitz factor: 1, −a, −R C, −R S C, …, −R S^(m−1) C.
            let mut column = vec![one.clone(), a.negated()];
            let mut v: Vec<R> = (k + 1..n).map(|i| self.get(i, k).clone()).collect();
            for _ in 0..m {
                let rc = (0..m).fold(zero.clone(), |acc, j| acc.plus(&self.get(k, k + 1 + j).times(&v[j])));
                column.push(rc.negated());
                v = (0..m)
                    .map(|i| (0..m).fold(zero.clone(), |acc, j| acc.plus(&self.get(k + 1 + i, k + 1 + j).times(&v[j]))))
                    .collect();
            }
            // Lower-triangular Toeplitz (m+2)×(m+1) times the previous polynomial.
            let next: Vec<R> = (0..m + 2)
                .map(|i| {
                    (0..=m.min(i)).fold(zero.clone(), |acc, j| {
                        if i - j < column.len() {
                            acc.plus(&column[i - j].times(&poly[j]))
                        } else {
                            acc
                        }
                    })
                })
                .collect();
            poly = next;
        }
        poly
    }
}

impl<R: Domain> Matrix<R> {
    /// Rank by fraction-free (Bareiss) elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        let mut prev = R::one(&self.ctx);
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(piv) = (rank..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(piv, rank);
            let pv = m.get(rank, col).clone();
            for r in rank + 1..m.rows {
                let f = m.get(r, col).clone();
                for c in col..m.cols {
                    let v = pv.times(m.get(r, c)).minus(&f.times(m.get(rank, c))).div_exact(&prev);
                    m.set(r, c, v);
                }
            }
            prev = pv;
            rank += 1;
        }
        rank
    }

    /// Determinant by Bareiss elimination.
    pub fn det(&self) -> R {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return R::one(&self.ctx);
        }
        let mut m = self.clone();
        let mut prev = R::one(&self.ctx);
        let mut negate = false;
        for k in 0..n {
            let Some(piv) = (k..n).find(|&r| !m.get(r, k).is_zero()) else {
                return R::zero(&self.ctx);
            };
            if piv != k {
                m.swap_rows(piv, k);
                negate = !negate;
            }
            let pv = m.get(k, k).clone();
            for r in k + 1..n {
                for c in k + 1..n {
                    let v = pv.times(m.get(r, c)).minus(&m.get(r, k).times(m.get(k, c))).div_exact(&prev);
                    m.set(r, c, v);
                }
                m.set(r, k, R::zero(&self.ctx));
            }
            prev = pv;
        }
        let d = m.get(n - 1, n - 1).clone();
        if negate {
            d.negated()
        } else {
            d
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }
}

impl<R: Field> Matrix<R> {
    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(piv) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(piv, row);
            let inv = m.get(row, col).inverse().expect("nonzero pivot");
            for c in col..m.cols {
                let v = m.get(row, c).times(&inv);
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r != row && !m.get(r, col).is_zero() {
                    let f = m.get(r, col).clone();
                    for c in col..m.cols {
                        let v = m.get(r, c).minus(&f.times(m.get(row, c)));
                        m.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    /// Basis of `{v : self·v = 0}`.
    pub fn null_space(&self) -> Vec<Vec<R>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![R::zero(&self.ctx); self.cols];
                v[f] = R::one(&self.ctx);
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = r.get(i, f).negated();
                }
                v
            })
            .collect()
    }

    /// The unique solution of `self·x = b` for square invertible `self`.
    pub fn solve(&self, b: &[R]) -> Result<Vec<R>> {
        if !self.is_square() || b.len() != self.rows {
            return Err(Error::InvalidArgument("solve needs a square system".into()));
        }
        let n = self.rows;
        let aug =
            Matrix::from_fn(&self.ctx, n, n + 1, |i, j| if j < n { self.get(i, j).clone() } else { b[i].clone() });
        let (r, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return Err(Error::InvalidArgument("singular system".into()));
        }
        Ok((0..n).map(|i| r.get(i, n).clone()).collect())
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = Matrix::from_fn(&self.ctx, n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                R::one(&self.ctx)
            } else {
                R::zero(&self.ctx)
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(&self.ctx, n, n, |i, j| r.get(i, n + j).clone()))
    }
}

impl<R: Ring + fmt::Display> fmt::Display for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// Integer matrix from nested arrays, for tests and static tables.
pub fn int_matrix(rows: &[&[i64]]) -> Matrix<i64> {
    Matrix::from_rows(&(), rows.iter().map(|r| r.to_vec()).collect()).expect("rectangular")
}
