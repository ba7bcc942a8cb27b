//! Dense symmetric float kernels: cyclic Jacobi eigendecomposition and
//! projection onto the positive semidefinite cone.

use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::tolerance::Tolerances;

/// Symmetric `f64` matrix. Construction averages `m` with its transpose, so
/// the stored entries are exactly symmetric.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymMatrix(Matrix<f64>);

impl SymMatrix {
    pub fn new(m: Matrix<f64>) -> Result<Self> {
        let n = m.n();
        for (i, j, v) in m.iter_cells() {
            if !v.is_finite() {
                return Err(Error::NonFinite(i, j));
            }
        }
        Ok(SymMatrix(Matrix::from_fn(n, |i, j| {
            if i == j {
                m[(i, i)]
            } else {
                0.5 * (m[(i, j)] + m[(j, i)])
            }
        })))
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        SymMatrix::new(Matrix::from_fn(n, f))
    }

    pub fn identity(n: usize) -> Self {
        SymMatrix(Matrix::identity(n))
    }

    pub fn zeros(n: usize) -> Self {
        SymMatrix(Matrix::zeros(n))
    }

    pub fn as_matrix(&self) -> &Matrix<f64> {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix<f64> {
        self.0
    }

    /// Smallest eigenvalue.
    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(eigh(self)?.values.first().copied().unwrap_or(0.0))
    }
}

impl Deref for SymMatrix {
    type Target = Matrix<f64>;
    fn deref(&self) -> &Matrix<f64> {
        &self.0
    }
}

/// Eigenvalues in ascending order with matching orthonormal eigenvectors
/// stored as the columns of `vectors`.
#[derive(Clone, Debug)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: Matrix<f64>,
}

impl Eigen {
    /// `V diag(f(lambda)) V^T`
    pub fn reconstruct(&self, f: impl Fn(f64) -> f64) -> Matrix<f64> {
        let n = self.values.len();
        let weights: Vec<f64> = self.values.iter().map(|&l| f(l)).collect();
        let v = &self.vectors;
        let mut out = Matrix::zeros(n);
        for k in 0..n {
            let w = weights[k];
            if w == 0.0 {
                continue;
            }
            for i in 0..n {
                let vik = w * v[(i, k)];
                if vik == 0.0 {
                    continue;
                }
                for j in i..n {
                    out[(i, j)] += vik * v[(j, k)];
                }
            }
        }
        for i in 0..n {
            for j in 0..i {
                out[(i, j)] = out[(j, i)];
            }
        }
        out
    }
}

pub fn eigh(m: &SymMatrix) -> Result<Eigen> {
    eigh_with(m, &Tolerances::default())
}

pub fn eigh_with(m: &SymMatrix, tol: &Tolerances) -> Result<Eigen> {
    let n = m.n();
    jacobi(m.as_matrix().clone(), Matrix::identity(n), m.frobenius(), tol)
}

/// Eigendecomposition started from an orthonormal `guess` (for example the
/// eigenvectors of a nearby matrix). Jacobi then runs on `G^T m G`, which is
/// close to diagonal when the guess is good.
pub fn eigh_from_guess(m: &SymMatrix, guess: &Matrix<f64>, tol: &Tolerances) -> Result<Eigen> {
    let rotated = guess.transpose().matmul(m.as_matrix()).matmul(guess);
    let rotated = SymMatrix::new(rotated)?;
    jacobi(rotated.into_matrix(), guess.clone(), m.frobenius(), tol)
}

fn off_diagonal_norm(a: &Matrix<f64>) -> f64 {
    let n = a.n();
    let mut s = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            s += 2.0 * a[(i, j)] * a[(i, j)];
        }
    }
    s.sqrt()
}

fn jacobi(mut a: Matrix<f64>, mut v: Matrix<f64>, scale: f64, tol: &Tolerances) -> Result<Eigen> {
    let n = a.n();
    for (i, j, x) in a.iter_cells() {
        if !x.is_finite() {
            return Err(Error::NonFinite(i, j));
        }
    }
    let threshold = tol.jacobi_rel * scale;
    for _sweep in 0..tol.jacobi_max_sweeps {
        if off_diagonal_norm(&a) <= threshold {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let app = a[(p, p)];
                let aqq = a[(q, q)];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]));
    let values = order.iter().map(|&i| a[(i, i)]).collect();
    let vectors = Matrix::from_fn(n, |i, k| v[(i, order[k])]);
    Ok(Eigen { values, vectors })
}

/// Frobenius-nearest PSD matrix: negative eigenvalues clipped to zero.
pub fn psd_project(m: &SymMatrix) -> Result<SymMatrix> {
    let e = eigh(m)?;
    Ok(SymMatrix(e.reconstruct(|l| l.max(0.0))))
}

/// Group sorted eigenvalues whose neighbours differ by at most `tol`.
pub fn cluster_eigenvalues(sorted: &[f64], tol: f64) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    let mut last = f64::NEG_INFINITY;
    for &l in sorted {
        match out.last_mut() {
            Some((sum, count)) if l - last <= tol => {
                *sum += l;
                *count += 1;
            }
            _ => out.push((l, 1)),
        }
        last = l;
    }
    out.into_iter().map(|(s, c)| (s / c as f64, c)).collect()
}
