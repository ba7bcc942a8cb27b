//! Dense square matrices over a generic scalar.
//!
//! The same container carries exact rational matrices (algebra side) and
//! `f64` matrices (solver side). Inner products are the real trace inner
//! product `<M, N> = tr M N^T = sum_ij M_ij N_ij`.

use std::fmt::{Debug, Display};
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

/// Arithmetic needed by the exact and floating-point code paths.
pub trait Scalar: Clone + Debug + Display + PartialOrd + Num + Neg<Output = Self> + Send + Sync {
    /// True for exact arithmetic; comparisons then use zero tolerance.
    const EXACT: bool;

    fn from_int(v: i64) -> Self;
    fn from_rational(r: &Rational) -> Self;
    /// Tolerance conversion. Exact scalars ignore the value and return zero.
    fn tolerance(tol: f64) -> Self;
    fn to_f64(&self) -> f64;
    /// Exact value; `None` for non-finite floats.
    fn to_rational(&self) -> Option<Rational>;
    fn abs_val(&self) -> Self;
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_int(v: i64) -> Self {
        v as f64
    }
    fn from_rational(r: &Rational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }
    fn tolerance(tol: f64) -> Self {
        tol
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn to_rational(&self) -> Option<Rational> {
        rational_from_f64(*self)
    }
    fn abs_val(&self) -> Self {
        self.abs()
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_int(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn tolerance(_tol: f64) -> Self {
        Rational::zero()
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn abs_val(&self) -> Self {
        self.abs()
    }
}

/// Exact rational from an `f64` (every finite double is a dyadic rational).
pub fn rational_from_f64(v: f64) -> Option<Rational> {
    <Rational as FromPrimitive>::from_f64(v)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Matrix<T> {
    n: usize,
    data: Vec<T>,
}

pub type RationalMatrix = Matrix<Rational>;

impl<T> Matrix<T> {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Matrix { n, data }
    }

    /// Row-major construction. Panics if `data.len() != n * n`.
    pub fn from_row_major(n: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), n * n, "row-major data has wrong length");
        Matrix { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            n: self.n,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn iter_cells(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        let n = self.n;
        self.data.iter().enumerate().map(move |(k, v)| (k / n, k % n, v))
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(n: usize) -> Self {
        Matrix::from_fn(n, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    /// The all-ones matrix `J`.
    pub fn ones(n: usize) -> Self {
        Matrix::from_fn(n, |_, _| T::one())
    }

    /// Rank-one matrix `x x^T`.
    pub fn outer(x: &[T]) -> Self {
        Matrix::from_fn(x.len(), |i, j| x[i].clone() * x[j].clone())
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.n, |i, j| self[(j, i)].clone())
    }

    pub fn trace(&self) -> T {
        (0..self.n).fold(T::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    /// `tr J M`, the sum of all entries.
    pub fn sum(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, v| acc + v.clone())
    }

    /// Trace inner product `tr M N^T`.
    pub fn inner(&self, other: &Self) -> T {
        debug_assert_eq!(self.n, other.n);
        self.data
            .iter()
            .zip(&other.data)
            .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    pub fn frobenius_sq(&self) -> T {
        self.inner(self)
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|v| v.clone() * s.clone())
    }

    pub fn hadamard(&self, other: &Self) -> Self {
        Matrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() * b.clone())
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn row_sums(&self) -> Vec<T> {
        (0..self.n)
            .map(|i| (0..self.n).fold(T::zero(), |acc, j| acc + self[(i, j)].clone()))
            .collect()
    }

    pub fn col_sums(&self) -> Vec<T> {
        (0..self.n)
            .map(|j| (0..self.n).fold(T::zero(), |acc, i| acc + self[(i, j)].clone()))
            .collect()
    }

    /// `self += s * other`
    pub fn add_scaled(&mut self, s: &T, other: &Self) {
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a = a.clone() + s.clone() * b.clone();
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.data[k * n + j];
                    if !b.is_zero() {
                        let idx = i * n + j;
                        out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }
}

impl RationalMatrix {
    /// Integer matrix with exact rational entries.
    pub fn from_integers(n: usize, f: impl Fn(usize, usize) -> i64) -> Self {
        Matrix::from_fn(n, |i, j| Rational::from_int(f(i, j)))
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        self.map(Scalar::to_f64)
    }

    /// Largest denominator bit length over all entries.
    pub fn max_denominator_bits(&self) -> u64 {
        self.data.iter().map(|v| v.denom().bits()).max().unwrap_or(0)
    }
}

impl Matrix<f64> {
    pub fn frobenius(&self) -> f64 {
        self.frobenius_sq().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Exact rational image of a float matrix.
    pub fn to_rational(&self) -> Option<RationalMatrix> {
        let data = self
            .data
            .iter()
            .map(|&v| rational_from_f64(v))
            .collect::<Option<Vec<_>>>()?;
        Some(Matrix { n: self.n, data })
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.n + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.n + j]
    }
}

impl<T: Scalar> Add for &Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: Self) -> Matrix<T> {
        Matrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<T: Scalar> Sub for &Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: Self) -> Matrix<T> {
        Matrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<T: Scalar> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: Self) -> Matrix<T> {
        self.matmul(rhs)
    }
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `true` when `v` is within `tol` of zero (exactly zero for exact scalars).
pub fn negligible<T: Scalar>(v: &T, tol: f64) -> bool {
    if T::EXACT {
        v.is_zero()
    } else {
        v.abs_val() <= T::tolerance(tol)
    }
}
