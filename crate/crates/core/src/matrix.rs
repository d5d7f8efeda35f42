//! Small dense matrices: operator norm, least stretch `l(A)` and determinant.

use std::fmt;

use crate::error::{domain, Result};
use crate::real::Real;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Real> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(domain(format!(
                "matrix data has {} entries, expected {rows}x{cols}",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(domain("matrix rows have different lengths"));
        }
        Ok(Self { rows: rows.len(), cols, data: rows.concat() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(&a, &b)| a * b).sum())
            .collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn scaled(&self, c: T) -> Self {
        Self { data: self.data.iter().map(|&v| v * c).collect(), ..self.clone() }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    /// Singular values in decreasing order (one-sided Jacobi).
    pub fn singular_values(&self) -> Vec<T> {
        // work on columns of A (or Aᵀ when A is wide)
        let a = if self.rows >= self.cols { self.clone() } else { self.transpose() };
        let (m, k) = (a.rows, a.cols);
        let mut cols: Vec<Vec<T>> = (0..k).map(|j| (0..m).map(|i| a[(i, j)]).collect()).collect();
        let tol = T::epsilon() * T::lit(4.0);
        for _sweep in 0..60 {
            let mut rotated = false;
            for p in 0..k {
                for q in p + 1..k {
                    let alpha: T = cols[p].iter().map(|v| v.sq()).sum();
                    let beta: T = cols[q].iter().map(|v| v.sq()).sum();
                    let gamma: T = cols[p].iter().zip(&cols[q]).map(|(&x, &y)| x * y).sum();
                    if gamma.abs() <= tol * (alpha * beta).sqrt() || gamma == T::zero() {
                        continue;
                    }
                    rotated = true;
                    let zeta = (beta - alpha) / (T::two() * gamma);
                    let t = zeta.signum() / (zeta.abs() + (T::one() + zeta.sq()).sqrt());
                    let c = (T::one() + t.sq()).sqrt().recip();
                    let s = c * t;
                    let (left, right) = cols.split_at_mut(q);
                    for (x, y) in left[p].iter_mut().zip(right[0].iter_mut()) {
                        let (xp, yq) = (*x, *y);
                        *x = c * xp - s * yq;
                        *y = s * xp + c * yq;
                    }
                }
            }
            if !rotated {
                break;
            }
        }
        let mut sv: Vec<T> = cols.iter().map(|c| c.iter().map(|v| v.sq()).sum::<T>().sqrt()).collect();
        sv.sort_by(|x, y| y.partial_cmp(x).unwrap_or(std::cmp::Ordering::Equal));
        sv
    }

    /// Determinant by LU with partial pivoting; `None` for non-square matrices.
    pub fn determinant(&self) -> Option<T> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = T::one();
        for k in 0..n {
            let pivot = (k..n)
                .max_by(|&i, &j| {
                    a[i * n + k]
                        .abs()
                        .partial_cmp(&a[j * n + k].abs())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
                .unwrap_or(k);
            if a[pivot * n + k] == T::zero() {
                return Some(T::zero());
            }
            if pivot != k {
                for j in 0..n {
                    a.swap(k * n + j, pivot * n + j);
                }
                det = -det;
            }
            let d = a[k * n + k];
            det *= d;
            for i in k + 1..n {
                let f = a[i * n + k] / d;
                for j in k..n {
                    let v = a[k * n + j];
                    a[i * n + j] -= f * v;
                }
            }
        }
        Some(det)
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| format!("{}", self.data[i * self.cols + j])).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `‖A‖ = sup |Aξ|`, `l(A) = inf |Aξ|` over unit `ξ`, and `det A`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MatrixFunctionals<T> {
    pub norm: T,
    pub l: T,
    pub det: T,
}

/// Extreme singular values and determinant of a square matrix.
pub fn matrix_functionals<T: Real>(a: &Matrix<T>) -> Result<MatrixFunctionals<T>> {
    let det = a
        .determinant()
        .ok_or_else(|| domain(format!("matrix functionals need a square matrix, got {}x{}", a.rows, a.cols)))?;
    let sv = a.singular_values();
    Ok(MatrixFunctionals {
        norm: sv.first().copied().unwrap_or_else(T::zero),
        l: sv.last().copied().unwrap_or_else(T::zero),
        det,
    })
}
