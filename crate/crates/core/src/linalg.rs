//! Dense matrices over a [`Ring`]/[`Scalar`], sized for algebras of
//! dimension at most a few dozen.

use std::ops::{Index, IndexMut};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{Ring, Scalar};

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Ring> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    /// Build from nested rows; every row must have the same length.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != n_cols) {
            return Err(Error::DimensionMismatch {
                expected: n_cols,
                found: bad.len(),
            });
        }
        Ok(Self {
            rows: n_rows,
            cols: n_cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<S>]) -> Result<Self> {
        let n_cols = cols.len();
        let n_rows = cols.first().map_or(0, Vec::len);
        let mut m = Self::zeros(n_rows, n_cols);
        for (j, c) in cols.iter().enumerate() {
            if c.len() != n_rows {
                return Err(Error::DimensionMismatch {
                    expected: n_rows,
                    found: c.len(),
                });
            }
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
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

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[S] {
        &self.data
    }

    pub fn map<T: Ring>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &[S]) -> Result<Vec<S>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        let mut y = vec![S::zero(); self.rows];
        for (j, xj) in x.iter().enumerate() {
            if xj.is_zero() {
                continue;
            }
            for (i, yi) in y.iter_mut().enumerate() {
                let a = &self[(i, j)];
                if !a.is_zero() {
                    *yi = yi.clone() + a.clone() * xj.clone();
                }
            }
        }
        Ok(y)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

impl<S: Scalar> Matrix<S> {
    /// Gauss-Jordan inverse. Exact for rationals; for floats a zero pivot
    /// is anything with magnitude at most `1e-12`.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            // exact: first nonzero pivot; float: largest magnitude
            let pivot = if S::EXACT {
                (col..n).find(|&r| !a[(r, col)].is_zero())
            } else {
                (col..n)
                    .max_by(|&r, &s| {
                        a[(r, col)]
                            .to_f64()
                            .abs()
                            .total_cmp(&a[(s, col)].to_f64().abs())
                    })
                    .filter(|&r| !a[(r, col)].is_negligible(1e-12))
            };
            let p = pivot.ok_or(Error::SingularMatrix)?;
            a.swap_rows(p, col);
            inv.swap_rows(p, col);
            let piv = a[(col, col)].clone();
            for j in 0..n {
                a[(col, j)] = a[(col, j)].clone() / piv.clone();
                inv[(col, j)] = inv[(col, j)].clone() / piv.clone();
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in 0..n {
                    if !a[(col, j)].is_zero() {
                        a[(r, j)] = a[(r, j)].clone() - f.clone() * a[(col, j)].clone();
                    }
                    if !inv[(col, j)].is_zero() {
                        inv[(r, j)] = inv[(r, j)].clone() - f.clone() * inv[(col, j)].clone();
                    }
                }
            }
        }
        Ok(inv)
    }

    /// Rank by exact (or tolerance-based) row reduction.
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(p) = (rank..self.rows).find(|&r| !a[(r, col)].is_negligible(1e-12)) else {
                continue;
            };
            a.swap_rows(p, rank);
            let piv = a[(rank, col)].clone();
            for r in rank + 1..self.rows {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone() / piv.clone();
                for j in col..self.cols {
                    a[(r, j)] = a[(r, j)].clone() - f.clone() * a[(rank, j)].clone();
                }
            }
            rank += 1;
        }
        rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;

    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x, 1)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn exact_inverse_round_trip() {
        let a = m(&[&[0, 2, 1], &[1, 0, 0], &[3, 1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(3));
        assert_eq!(inv.mul(&a).unwrap(), Matrix::identity(3));
    }

    #[test]
    fn singular_detected() {
        let a = m(&[&[1, 2], &[2, 4]]);
        assert!(matches!(a.inverse(), Err(Error::SingularMatrix)));
        assert_eq!(a.rank(), 1);
    }

    #[test]
    fn ragged_rows_rejected() {
        let r = Matrix::from_rows(vec![vec![rat(1, 1)], vec![rat(1, 1), rat(2, 1)]]);
        assert!(r.is_err());
    }

    #[test]
    fn float_inverse() {
        let a = Matrix::from_rows(vec![vec![4.0, 7.0], vec![2.0, 6.0]]).unwrap();
        let p = a.mul(&a.inverse().unwrap()).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let e = if i == j { 1.0 } else { 0.0 };
                assert!((p[(i, j)] - e).abs() < 1e-12);
            }
        }
    }
}
