//! Small dense matrices over a [`Scalar`] backend.
//!
//! Sizes here are tiny (ambient dimensions ≤ ~30), so everything is plain
//! Gaussian elimination with full row pivoting by `abs_f64` weight — exact
//! over rationals, numerically sane over floats.

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct Mat<S> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Mat<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
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

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)].clone();
                if a.is_negligible() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = out[(i, j)].clone() + a.clone() * other[(k, j)].clone();
                }
            }
        }
        out
    }

    /// Determinant by Laplace expansion; intended for the tiny square
    /// matrices that appear here (dimension at most ~6).
    pub fn det(&self) -> S {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return S::one();
        }
        if n == 1 {
            return self[(0, 0)].clone();
        }
        let mut acc = S::zero();
        for j in 0..n {
            let c = self[(0, j)].clone();
            if c.is_negligible() && c == S::zero() {
                continue;
            }
            let mut minor = Self::zeros(n - 1, n - 1);
            for i in 1..n {
                let mut cc = 0;
                for k in 0..n {
                    if k == j {
                        continue;
                    }
                    minor[(i - 1, cc)] = self[(i, k)].clone();
                    cc += 1;
                }
            }
            let term = c * minor.det();
            acc = if j % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len(), "matvec shape mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            *x = x.clone() - y.clone();
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            *x = x.clone() + y.clone();
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(Scalar::abs_f64).fold(0.0, f64::max)
    }

    /// Row echelon form in place; returns pivot column indices.
    fn echelon(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            // largest |entry| below r in column c
            let best = (r..self.rows)
                .max_by(|&a, &b| {
                    self[(a, c)]
                        .abs_f64()
                        .partial_cmp(&self[(b, c)].abs_f64())
                        .unwrap()
                })
                .unwrap();
            if self[(best, c)].is_negligible() {
                continue;
            }
            self.swap_rows(r, best);
            let inv_pivot = S::one() / self[(r, c)].clone();
            for j in c..self.cols {
                self[(r, j)] = self[(r, j)].clone() * inv_pivot.clone();
            }
            for i in 0..self.rows {
                if i != r && !self[(i, c)].is_negligible() {
                    let f = self[(i, c)].clone();
                    for j in c..self.cols {
                        let sub = f.clone() * self[(r, j)].clone();
                        self[(i, j)] = self[(i, j)].clone() - sub;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.echelon().len()
    }

    /// One solution of A·x = b, or None if inconsistent. Free variables are
    /// set to zero, so the solution is deterministic.
    pub fn solve(&self, b: &[S]) -> Option<Vec<S>> {
        assert_eq!(self.rows, b.len());
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let pivots = aug.echelon();
        if pivots.last() == Some(&self.cols) {
            return None; // pivot in the constant column: inconsistent
        }
        let mut x = vec![S::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug[(r, self.cols)].clone();
        }
        Some(x)
    }

    /// Basis of the nullspace {x : A·x = 0}, canonical per echelon form.
    pub fn nullspace(&self) -> Vec<Vec<S>> {
        let mut m = self.clone();
        let pivots = m.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![S::zero(); self.cols];
                v[f] = S::one();
                for (r, &c) in pivots.iter().enumerate() {
                    v[c] = -m[(r, f)].clone();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = S::one();
        }
        let pivots = aug.echelon();
        if pivots.len() < n || pivots.iter().any(|&c| c >= n) {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Some(inv)
    }
}

impl<S> std::ops::Index<(usize, usize)> for Mat<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> std::ops::IndexMut<(usize, usize)> for Mat<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat_i, Rat};

    fn m(rows: &[&[i64]]) -> Mat<Rat> {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat_i(x)).collect()).collect())
    }

    #[test]
    fn solve_exact() {
        let a = m(&[&[2, 1], &[1, 3]]);
        let x = a.solve(&[rat_i(5), rat_i(10)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![rat_i(5), rat_i(10)]);
    }

    #[test]
    fn inconsistent_detected() {
        let a = m(&[&[1, 1], &[2, 2]]);
        assert!(a.solve(&[rat_i(1), rat_i(3)]).is_none());
        assert!(a.solve(&[rat_i(1), rat_i(2)]).is_some());
    }

    #[test]
    fn nullspace_orthogonal_to_rows() {
        let a = m(&[&[1, 2, 3], &[0, 1, 1]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        for v in ns {
            assert!(a.mul_vec(&v).iter().all(num_traits::Zero::is_zero));
        }
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Mat::identity(3));
    }

    #[test]
    fn rank_of_singular() {
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank(), 1);
    }
}
