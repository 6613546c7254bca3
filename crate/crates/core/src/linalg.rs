//! Small dense symmetric eigenproblems and singular values.
//!
//! Cyclic Jacobi rotations: dimension-generic and robust for the order-10
//! matrices arising from Jacobians and Hessians at an equilibrium. Singular
//! values go through the eigenvalues of A^t A, matching their definition as
//! square roots of those eigenvalues.

use crate::error::{Error, Result};

/// Relative asymmetry tolerated before a matrix is rejected as input to the
/// symmetric eigensolver.
const SYMMETRY_RTOL: f64 = 1e-12;
/// Off-diagonal Frobenius mass at which Jacobi sweeps stop, relative to the
/// input norm.
const JACOBI_RTOL: f64 = 1e-13;
/// Relative threshold below which an eigenvalue counts as zero when
/// classifying definiteness.
const DEFINITENESS_ZERO_RTOL: f64 = 1e-10;

/// Row-major square matrix of f64 entries.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    order: usize,
    entries: Vec<f64>,
}

impl SquareMatrix {
    pub fn new(order: usize, entries: Vec<f64>) -> Result<Self> {
        if order == 0 {
            return Err(Error::Parameter("matrix order must be at least 1".into()));
        }
        if entries.len() != order * order {
            return Err(Error::Parameter(format!(
                "expected {} entries for order {order}, got {}",
                order * order,
                entries.len()
            )));
        }
        if entries.iter().any(|v| !v.is_finite()) {
            return Err(Error::Parameter("matrix entries must be finite".into()));
        }
        Ok(SquareMatrix { order, entries })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let order = rows.len();
        let mut entries = Vec::with_capacity(order * order);
        for row in rows {
            if row.len() != order {
                return Err(Error::Parameter("rows must form a square matrix".into()));
            }
            entries.extend_from_slice(row);
        }
        SquareMatrix::new(order, entries)
    }

    pub fn zero(order: usize) -> Self {
        SquareMatrix {
            order,
            entries: vec![0.0; order * order],
        }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = SquareMatrix::zero(order);
        for i in 0..order {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.entries[r * self.order + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: f64) {
        self.entries[r * self.order + c] = value;
    }

    pub fn transpose(&self) -> SquareMatrix {
        let mut out = SquareMatrix::zero(self.order);
        for r in 0..self.order {
            for c in 0..self.order {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    pub fn matmul(&self, other: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.order, other.order, "matrix order mismatch");
        let n = self.order;
        let mut out = SquareMatrix::zero(n);
        for r in 0..n {
            for c in 0..n {
                let mut acc = 0.0;
                for k in 0..n {
                    acc += self.get(r, k) * other.get(k, c);
                }
                out.set(r, c, acc);
            }
        }
        out
    }

    pub fn add(&self, other: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.order, other.order, "matrix order mismatch");
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        SquareMatrix {
            order: self.order,
            entries,
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> f64 {
        (0..self.order).map(|i| self.get(i, i)).sum()
    }

    pub fn is_symmetric(&self) -> bool {
        let scale = self.frobenius_norm().max(f64::MIN_POSITIVE);
        for r in 0..self.order {
            for c in (r + 1)..self.order {
                if (self.get(r, c) - self.get(c, r)).abs() > SYMMETRY_RTOL * scale {
                    return false;
                }
            }
        }
        true
    }

    fn off_diagonal_norm(&self) -> f64 {
        let mut acc = 0.0;
        for r in 0..self.order {
            for c in 0..self.order {
                if r != c {
                    let v = self.get(r, c);
                    acc += v * v;
                }
            }
        }
        acc.sqrt()
    }
}

/// Eigen-decomposition of a symmetric matrix: ascending eigenvalues and the
/// matching eigenvectors as columns of an orthogonal matrix.
pub fn symmetric_eigen(m: &SquareMatrix) -> Result<(Vec<f64>, SquareMatrix)> {
    if !m.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = m.order;
    let mut a = m.clone();
    let mut q = SquareMatrix::identity(n);
    let tol = JACOBI_RTOL * m.frobenius_norm().max(f64::MIN_POSITIVE);
    // Convergence is quadratic once sweeps start annihilating; 64 sweeps is
    // far beyond what order <= 10 matrices need.
    for _ in 0..64 {
        if a.off_diagonal_norm() <= tol {
            break;
        }
        for p in 0..n.saturating_sub(1) {
            for r in (p + 1)..n {
                let apr = a.get(p, r);
                if apr == 0.0 {
                    continue;
                }
                let app = a.get(p, p);
                let arr = a.get(r, r);
                let theta = (arr - app) / (2.0 * apr);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a.get(k, p);
                    let akr = a.get(k, r);
                    a.set(k, p, c * akp - s * akr);
                    a.set(k, r, s * akp + c * akr);
                }
                for k in 0..n {
                    let apk = a.get(p, k);
                    let ark = a.get(r, k);
                    a.set(p, k, c * apk - s * ark);
                    a.set(r, k, s * apk + c * ark);
                }
                for k in 0..n {
                    let qkp = q.get(k, p);
                    let qkr = q.get(k, r);
                    q.set(k, p, c * qkp - s * qkr);
                    q.set(k, r, s * qkp + c * qkr);
                }
            }
        }
    }
    let mut pairs: Vec<(f64, usize)> = (0..n).map(|i| (a.get(i, i), i)).collect();
    pairs.sort_by(|x, y| x.0.partial_cmp(&y.0).expect("finite eigenvalues"));
    let values: Vec<f64> = pairs.iter().map(|(v, _)| *v).collect();
    let mut vectors = SquareMatrix::zero(n);
    for (new_col, (_, old_col)) in pairs.iter().enumerate() {
        for row in 0..n {
            vectors.set(row, new_col, q.get(row, *old_col));
        }
    }
    Ok((values, vectors))
}

/// Ascending eigenvalues of a symmetric matrix.
pub fn symmetric_eigenvalues(m: &SquareMatrix) -> Result<Vec<f64>> {
    symmetric_eigen(m).map(|(values, _)| values)
}

/// Singular values in ascending order: square roots of the eigenvalues of
/// A^t A. Small negative eigenvalues from roundoff clamp to zero.
pub fn singular_values(a: &SquareMatrix) -> Vec<f64> {
    let n = a.order;
    let mut gram = SquareMatrix::zero(n);
    for i in 0..n {
        for j in i..n {
            let mut acc = 0.0;
            for k in 0..n {
                acc += a.get(k, i) * a.get(k, j);
            }
            gram.set(i, j, acc);
            gram.set(j, i, acc);
        }
    }
    let values = symmetric_eigenvalues(&gram).expect("Gram matrix is symmetric");
    values.into_iter().map(|v| v.max(0.0).sqrt()).collect()
}

/// Sign classification of a symmetric matrix by its eigenvalue signs, with a
/// relative zero threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Definiteness {
    Positive,
    Negative,
    Indefinite,
    Semidefinite,
}

pub fn definiteness(m: &SquareMatrix) -> Result<Definiteness> {
    let values = symmetric_eigenvalues(m)?;
    let threshold = DEFINITENESS_ZERO_RTOL * m.frobenius_norm().max(f64::MIN_POSITIVE);
    let positives = values.iter().filter(|&&v| v > threshold).count();
    let negatives = values.iter().filter(|&&v| v < -threshold).count();
    let zeros = values.len() - positives - negatives;
    Ok(if zeros == 0 && negatives == 0 {
        Definiteness::Positive
    } else if zeros == 0 && positives == 0 {
        Definiteness::Negative
    } else if positives > 0 && negatives > 0 {
        Definiteness::Indefinite
    } else {
        Definiteness::Semidefinite
    })
}

/// Solves the small dense system `a x = b` by Gaussian elimination with
/// partial pivoting. Returns `None` when the pivot collapses.
pub(crate) fn solve_dense(a: &SquareMatrix, b: &[f64]) -> Option<Vec<f64>> {
    let n = a.order;
    assert_eq!(b.len(), n);
    let mut m = a.entries.clone();
    let mut rhs = b.to_vec();
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&r1, &r2| {
                m[r1 * n + col]
                    .abs()
                    .partial_cmp(&m[r2 * n + col].abs())
                    .expect("finite")
            })
            .expect("nonempty");
        if m[pivot_row * n + col].abs() < 1e-300 {
            return None;
        }
        if pivot_row != col {
            for k in 0..n {
                m.swap(pivot_row * n + k, col * n + k);
            }
            rhs.swap(pivot_row, col);
        }
        for r in (col + 1)..n {
            let factor = m[r * n + col] / m[col * n + col];
            if factor == 0.0 {
                continue;
            }
            for k in col..n {
                m[r * n + k] -= factor * m[col * n + k];
            }
            rhs[r] -= factor * rhs[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut acc = rhs[row];
        for k in (row + 1)..n {
            acc -= m[row * n + k] * x[k];
        }
        x[row] = acc / m[row * n + row];
    }
    Some(x)
}
