//! Dense exact-rational matrices: just enough linear algebra for the
//! polynomial Poisson solve (minimum-norm underdetermined systems) and
//! harmonic kernel bases. All arithmetic is exact.

use crate::poly::Rational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        self.data[r * self.cols + c] = value;
    }

    /// A * A^t (Gram matrix of the rows).
    pub fn gram(&self) -> RationalMatrix {
        let mut out = RationalMatrix::zero(self.rows, self.rows);
        for i in 0..self.rows {
            for j in i..self.rows {
                let mut acc = Rational::zero();
                for k in 0..self.cols {
                    acc += self.get(i, k) * self.get(j, k);
                }
                out.set(i, j, acc.clone());
                out.set(j, i, acc);
            }
        }
        out
    }

    /// A^t * v.
    pub fn transpose_mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![Rational::zero(); self.cols];
        for r in 0..self.rows {
            if v[r].is_zero() {
                continue;
            }
            for c in 0..self.cols {
                let a = self.get(r, c);
                if !a.is_zero() {
                    out[c] += a * &v[r];
                }
            }
        }
        out
    }

    /// Solves the square system `self * x = rhs` by Gaussian elimination.
    /// Returns `None` when the matrix is singular.
    pub fn solve(&self, rhs: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(self.rows, self.cols);
        assert_eq!(rhs.len(), self.rows);
        let n = self.rows;
        let mut a = self.data.clone();
        let mut b = rhs.to_vec();
        for col in 0..n {
            // pivot: largest absolute value keeps numerators small-ish
            let pivot_row = (col..n)
                .filter(|&r| !a[r * n + col].is_zero())
                .max_by(|&r1, &r2| a[r1 * n + col].abs().cmp(&a[r2 * n + col].abs()))?;
            if pivot_row != col {
                for k in 0..n {
                    a.swap(pivot_row * n + k, col * n + k);
                }
                b.swap(pivot_row, col);
            }
            let pivot = a[col * n + col].clone();
            for r in (col + 1)..n {
                if a[r * n + col].is_zero() {
                    continue;
                }
                let factor = &a[r * n + col] / &pivot;
                for k in col..n {
                    let sub = &factor * &a[col * n + k];
                    a[r * n + k] -= sub;
                }
                let sub = &factor * &b[col];
                b[r] -= sub;
            }
        }
        let mut x = vec![Rational::zero(); n];
        for row in (0..n).rev() {
            let mut acc = b[row].clone();
            for k in (row + 1)..n {
                acc -= &a[row * n + k] * &x[k];
            }
            if a[row * n + row].is_zero() {
                return None;
            }
            x[row] = acc / &a[row * n + row];
        }
        Some(x)
    }

    /// Minimum-Euclidean-norm solution of the underdetermined full-row-rank
    /// system `self * c = rhs`, via the normal equations
    /// `c = A^t (A A^t)^{-1} rhs`.
    pub fn min_norm_solve(&self, rhs: &[Rational]) -> Option<Vec<Rational>> {
        let z = self.gram().solve(rhs)?;
        Some(self.transpose_mul_vec(&z))
    }

    /// Reduced row echelon form in place; returns the pivot column of each
    /// nonzero row.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let pivot_row = match (row..self.rows).find(|&r| !self.get(r, col).is_zero()) {
                Some(r) => r,
                None => continue,
            };
            if pivot_row != row {
                for k in 0..self.cols {
                    let tmp = self.get(pivot_row, k).clone();
                    self.set(pivot_row, k, self.get(row, k).clone());
                    self.set(row, k, tmp);
                }
            }
            let pivot = self.get(row, col).clone();
            if !pivot.is_one() {
                for k in col..self.cols {
                    let v = self.get(row, k) / &pivot;
                    self.set(row, k, v);
                }
            }
            for r in 0..self.rows {
                if r == row || self.get(r, col).is_zero() {
                    continue;
                }
                let factor = self.get(r, col).clone();
                for k in col..self.cols {
                    let v = self.get(r, k) - &factor * self.get(row, k);
                    self.set(r, k, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// Basis of the null space, one vector per free column (ascending).
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let mut reduced = self.clone();
        let pivots = reduced.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -reduced.get(row, free).clone();
            }
            basis.push(v);
        }
        basis
    }
}
