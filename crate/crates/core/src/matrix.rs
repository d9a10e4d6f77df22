//! Dense symmetric matrices and a deterministic cyclic Jacobi eigensolver.
//!
//! The solver trades raw speed for reproducibility: rotations are applied in
//! a fixed row-major order with no pivot searching, so identical input
//! produces bit-identical output on every run and platform.

use crate::error::{Error, Result};

/// Dense symmetric matrix, stored row-major in full.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    /// Zero matrix of dimension `n`.
    pub fn zeros(n: usize) -> Self {
        SymMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    /// Identity matrix of dimension `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = SymMatrix::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Set entry (i, j) together with its mirror (j, i).
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.n + j] = value;
        self.data[j * self.n + i] = value;
    }

    /// Matrix-vector product.
    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n, "dimension mismatch");
        (0..self.n)
            .map(|i| {
                self.data[i * self.n..(i + 1) * self.n]
                    .iter()
                    .zip(x)
                    .map(|(aij, xj)| aij * xj)
                    .sum()
            })
            .collect()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Frobenius norm of the strict off-diagonal part.
    pub fn off_diagonal_norm(&self) -> f64 {
        off_norm(&self.data, self.n)
    }

    /// Whitespace-separated dense text, one row per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if j > 0 {
                    out.push(' ');
                }
                out.push_str(&format!("{}", self.data[i * self.n + j]));
            }
            out.push('\n');
        }
        out
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn off_norm(a: &[f64], n: usize) -> f64 {
    let mut sum = 0.0;
    for p in 0..n {
        for q in (p + 1)..n {
            let v = a[p * n + q];
            sum += 2.0 * v * v;
        }
    }
    sum.sqrt()
}

/// Maximum number of Jacobi sweeps before reporting non-convergence.
pub const MAX_SWEEPS: usize = 100;

/// Raw solver output: unsorted eigenvalues with matching eigenvectors
/// (unit norm, mutually orthogonal).
#[derive(Debug, Clone)]
pub struct JacobiEig {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
    /// Off-diagonal norm at termination.
    pub off_norm: f64,
    pub sweeps: usize,
}

/// Cyclic Jacobi eigendecomposition of a symmetric matrix.
///
/// Each sweep rotates out every off-diagonal pair (p, q) in row-major order
/// until the off-diagonal Frobenius norm drops to `tol * ‖A‖_F` (two-sided
/// Jacobi in the classical form of Golub & Van Loan). Convergence is
/// quadratic once the matrix is nearly diagonal, so the [`MAX_SWEEPS`] cap
/// is generous for any size handled here.
pub fn jacobi_eigh(matrix: &SymMatrix, tol: f64) -> Result<JacobiEig> {
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "eigensolver tolerance must be positive and finite, got {tol}"
        )));
    }
    let n = matrix.n;
    let mut a = matrix.data.clone();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let target = tol * matrix.frobenius_norm();
    let mut sweeps = 0;
    let mut off = off_norm(&a, n);
    while off > target {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                off_norm: off,
                sweeps,
            });
        }
        sweeps += 1;
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = 0.5 * (aqq - app) / apq;
                // Stable small root of t² + 2θt − 1 = 0.
                let t = if theta >= 0.0 {
                    1.0 / (theta + (theta * theta + 1.0).sqrt())
                } else {
                    -1.0 / (-theta + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for j in 0..n {
                    if j == p || j == q {
                        continue;
                    }
                    let ajp = a[j * n + p];
                    let ajq = a[j * n + q];
                    let njp = ajp - s * (ajq + tau * ajp);
                    let njq = ajq + s * (ajp - tau * ajq);
                    a[j * n + p] = njp;
                    a[p * n + j] = njp;
                    a[j * n + q] = njq;
                    a[q * n + j] = njq;
                }
                for j in 0..n {
                    let vjp = v[j * n + p];
                    let vjq = v[j * n + q];
                    v[j * n + p] = vjp - s * (vjq + tau * vjp);
                    v[j * n + q] = vjq + s * (vjp - tau * vjq);
                }
            }
        }
        off = off_norm(&a, n);
    }
    let values: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    let vectors: Vec<Vec<f64>> = (0..n)
        .map(|k| (0..n).map(|j| v[j * n + k]).collect())
        .collect();
    Ok(JacobiEig {
        values,
        vectors,
        off_norm: off,
        sweeps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn sorted_desc(mut v: Vec<f64>) -> Vec<f64> {
        v.sort_by(|a, b| b.partial_cmp(a).unwrap());
        v
    }

    #[test]
    fn two_by_two_analytic() {
        let mut m = SymMatrix::zeros(2);
        m.set(0, 0, 2.0);
        m.set(1, 1, 2.0);
        m.set(0, 1, 1.0);
        let eig = jacobi_eigh(&m, 1e-14).unwrap();
        let values = sorted_desc(eig.values);
        assert!((values[0] - 3.0).abs() < 1e-12);
        assert!((values[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn reconstructs_random_symmetric() {
        let n = 12;
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let mut m = SymMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                m.set(i, j, rng.random_range(-1.0..1.0));
            }
        }
        let eig = jacobi_eigh(&m, 1e-14).unwrap();
        // A·v = λ·v for every pair.
        for k in 0..n {
            let av = m.matvec(&eig.vectors[k]);
            for j in 0..n {
                assert!((av[j] - eig.values[k] * eig.vectors[k][j]).abs() < 1e-10);
            }
        }
        // Orthonormal columns.
        for i in 0..n {
            for j in 0..n {
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((dot(&eig.vectors[i], &eig.vectors[j]) - expected).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn reruns_are_bit_identical() {
        let mut m = SymMatrix::zeros(5);
        for i in 0..5 {
            for j in i..5 {
                m.set(i, j, ((i * 7 + j * 3) % 5) as f64 - 2.0);
            }
        }
        let first = jacobi_eigh(&m, 1e-13).unwrap();
        let second = jacobi_eigh(&m, 1e-13).unwrap();
        assert_eq!(first.values, second.values);
        assert_eq!(first.vectors, second.vectors);
    }

    #[test]
    fn zero_and_diagonal_matrices_converge_immediately() {
        let z = SymMatrix::zeros(4);
        let eig = jacobi_eigh(&z, 1e-12).unwrap();
        assert_eq!(eig.values, vec![0.0; 4]);
        assert_eq!(eig.sweeps, 0);

        let id = SymMatrix::identity(3);
        let eig = jacobi_eigh(&id, 1e-12).unwrap();
        assert_eq!(eig.values, vec![1.0; 3]);
        assert_eq!(eig.sweeps, 0);
    }

    #[test]
    fn rejects_bad_tolerance() {
        let m = SymMatrix::identity(2);
        assert!(jacobi_eigh(&m, 0.0).is_err());
        assert!(jacobi_eigh(&m, -1e-9).is_err());
        assert!(jacobi_eigh(&m, f64::NAN).is_err());
    }

    #[test]
    fn text_export_is_integer_friendly() {
        let mut m = SymMatrix::zeros(2);
        m.set(0, 0, 2.0);
        m.set(0, 1, 1.0);
        m.set(1, 1, 2.0);
        assert_eq!(m.to_text(), "2 1\n1 2\n");
    }
}
