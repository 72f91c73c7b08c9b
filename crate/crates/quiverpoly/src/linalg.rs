//! Dense exact-rational matrices, sized for representation-theoretic oracles.
//!
//! Ranks are computed fraction-free over arbitrary-precision integers after
//! clearing denominators; kernels and solves use rational Gauss-Jordan. No
//! floating point anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A row-major matrix over exact rationals. Matrices act on row vectors,
/// `v -> v * M`, so an `r x c` matrix maps row vectors of length `r` to row
/// vectors of length `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigRational>,
}

impl RatMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMat { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c));
        RatMat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(rows: Vec<Vec<i64>>) -> Self {
        Self::from_rows(
            rows.into_iter()
                .map(|row| row.into_iter().map(|v| BigRational::from_integer(v.into())).collect())
                .collect(),
        )
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> RatMat {
        let mut t = RatMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        let mut out = RatMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let prod = a * b;
                        out[(i, j)] += prod;
                    }
                }
            }
        }
        out
    }

    /// Stack vertically: rows of `self` above rows of `other`.
    pub fn vstack(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        RatMat { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Concatenate horizontally.
    pub fn hstack(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.rows, other.rows);
        let mut out = RatMat::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    pub fn submatrix_cols(&self, col_start: usize, col_end: usize) -> RatMat {
        let mut out = RatMat::zeros(self.rows, col_end - col_start);
        for i in 0..self.rows {
            for j in col_start..col_end {
                out[(i, j - col_start)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn submatrix_rows(&self, row_start: usize, row_end: usize) -> RatMat {
        let mut out = RatMat::zeros(row_end - row_start, self.cols);
        for i in row_start..row_end {
            for j in 0..self.cols {
                out[(i - row_start, j)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Rank via fraction-free Bareiss elimination on the integer matrix
    /// obtained by clearing denominators row by row.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        let mut a: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let lcm = self.row(i).iter().fold(BigInt::one(), |acc, x| num_integer::lcm(acc, x.denom().clone()));
                self.row(i).iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
            })
            .collect();
        let (rows, cols) = (self.rows, self.cols);
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(r, p);
            for i in r + 1..rows {
                for j in c + 1..cols {
                    let num = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                    a[i][j] = num / &prev;
                }
                a[i][c] = BigInt::zero();
            }
            prev = a[r][c].clone();
            r += 1;
        }
        r
    }

    /// Reduced row echelon form; returns (rref, pivot columns).
    pub fn rref(&self) -> (RatMat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else { continue };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let factor = m[(i, c)].clone();
                    for j in c..m.cols {
                        let v = &m[(i, j)] - &factor * &m[(r, j)];
                        m[(i, j)] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    /// Basis (as rows) of the left kernel `{ v : v * self = 0 }`.
    pub fn left_kernel(&self) -> RatMat {
        let (rref, pivots) = self.transpose().rref();
        let n = self.rows;
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let mut basis = RatMat::zeros(free.len(), n);
        for (bi, &f) in free.iter().enumerate() {
            basis[(bi, f)] = BigRational::one();
            for (ri, &p) in pivots.iter().enumerate() {
                basis[(bi, p)] = -rref[(ri, f)].clone();
            }
        }
        basis
    }

    /// Projection `W -> W / rowspace(self)` as a `cols x k` matrix applied on
    /// the right of row vectors, where `k = cols - rank`.
    pub fn cokernel_projection(&self) -> RatMat {
        let (rref, pivots) = self.rref();
        let n = self.cols;
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let mut proj = RatMat::zeros(n, free.len());
        for (fi, &f) in free.iter().enumerate() {
            proj[(f, fi)] = BigRational::one();
        }
        for (ri, &p) in pivots.iter().enumerate() {
            for (fi, &f) in free.iter().enumerate() {
                proj[(p, fi)] = -rref[(ri, f)].clone();
            }
        }
        proj
    }

    /// Solve `self * x = b` for a square invertible matrix; `None` when the
    /// matrix is singular.
    pub fn solve_square(&self, b: &[BigRational]) -> Option<Vec<BigRational>> {
        assert_eq!(self.rows, self.cols);
        assert_eq!(b.len(), self.rows);
        let rhs = RatMat::from_rows(b.iter().map(|x| vec![x.clone()]).collect());
        let aug = self.hstack(&rhs);
        let (rref, pivots) = aug.rref();
        if pivots.len() != self.rows || pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        Some((0..self.rows).map(|i| rref[(i, self.cols)].clone()).collect())
    }

    pub fn abs_max_denominator_is_one(&self) -> bool {
        self.data.iter().all(|x| x.denom().abs() == BigInt::one())
    }
}

impl std::ops::Index<(usize, usize)> for RatMat {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}
