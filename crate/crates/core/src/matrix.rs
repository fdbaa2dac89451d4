//! Dense square matrices over a [`Scalar`] field: the algebra `M_N(ℂ)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{Scalar, C64};

/// An `N×N` matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct Matrix<S> {
    size: usize,
    entries: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(size: usize) -> Self {
        Matrix {
            size,
            entries: vec![S::zero(); size * size],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size);
        for i in 0..size {
            m.entries[i * size + i] = S::one();
        }
        m
    }

    /// Matrix unit `E_{row,col}`.
    pub fn unit(size: usize, row: usize, col: usize) -> Self {
        let mut m = Self::zeros(size);
        m.entries[row * size + col] = S::one();
        m
    }

    /// Builds from row-major entries; the length must be a perfect square.
    pub fn from_row_major(entries: Vec<S>) -> Result<Self> {
        let size = (entries.len() as f64).sqrt().round() as usize;
        if size * size != entries.len() || size == 0 {
            return Err(Error::Dimension(format!(
                "{} entries do not form a square matrix",
                entries.len()
            )));
        }
        Ok(Matrix { size, entries })
    }

    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut entries = Vec::with_capacity(size * size);
        for r in 0..size {
            for c in 0..size {
                entries.push(f(r, c));
            }
        }
        Matrix { size, entries }
    }

    pub fn scalar(size: usize, value: S) -> Self {
        Self::identity(size).scale(&value)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, row: usize, col: usize) -> &S {
        &self.entries[row * self.size + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: S) {
        self.entries[row * self.size + col] = value;
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    /// Conjugate transpose, the ∗-involution of `M_N(ℂ)`.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.size, |r, c| self.get(c, r).conj())
    }

    pub fn trace(&self) -> S {
        let mut t = S::zero();
        for i in 0..self.size {
            t += self.entries[i * self.size + i].clone();
        }
        t
    }

    pub fn scale(&self, s: &S) -> Self {
        Matrix {
            size: self.size,
            entries: self.entries.iter().map(|e| s.clone() * e.clone()).collect(),
        }
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    /// `true` iff the matrix is a complex multiple of the identity.
    pub fn is_scalar_multiple_of_identity(&self) -> bool {
        let d = self.get(0, 0);
        (0..self.size).all(|r| {
            (0..self.size).all(|c| {
                let e = self.get(r, c);
                if r == c {
                    e == d
                } else {
                    e.is_zero()
                }
            })
        })
    }

    pub fn check_size(&self, size: usize) -> Result<()> {
        if self.size != size {
            return Err(Error::Dimension(format!(
                "matrix is {0}x{0}, expected {1}x{1}",
                self.size, size
            )));
        }
        Ok(())
    }

    /// Squared Frobenius norm.
    pub fn frobenius_sqr(&self) -> f64 {
        self.entries.iter().map(Scalar::norm_sqr_f64).sum()
    }

    pub fn to_c64(&self) -> Matrix<C64> {
        Matrix {
            size: self.size,
            entries: self.entries.iter().map(Scalar::to_c64).collect(),
        }
    }

    /// Non-negative integer power.
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::identity(self.size);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }
}

impl Matrix<C64> {
    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        self.frobenius_sqr().sqrt()
    }
}

impl<S: Scalar> Add for &Matrix<S> {
    type Output = Matrix<S>;
    fn add(self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.size, rhs.size, "matrix size mismatch");
        Matrix {
            size: self.size,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<S: Scalar> Sub for &Matrix<S> {
    type Output = Matrix<S>;
    fn sub(self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.size, rhs.size, "matrix size mismatch");
        Matrix {
            size: self.size,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<S: Scalar> Mul for &Matrix<S> {
    type Output = Matrix<S>;
    fn mul(self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.size, rhs.size, "matrix size mismatch");
        let n = self.size;
        let mut out = Matrix::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = &self.entries[r * n + k];
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    out.entries[r * n + c] += a.clone() * rhs.entries[k * n + c].clone();
                }
            }
        }
        out
    }
}

impl<S: Scalar> Neg for &Matrix<S> {
    type Output = Matrix<S>;
    fn neg(self) -> Matrix<S> {
        Matrix {
            size: self.size,
            entries: self.entries.iter().map(|e| -e.clone()).collect(),
        }
    }
}

impl<S: Scalar> Add for Matrix<S> {
    type Output = Matrix<S>;
    fn add(self, rhs: Matrix<S>) -> Matrix<S> {
        &self + &rhs
    }
}

impl<S: Scalar> Sub for Matrix<S> {
    type Output = Matrix<S>;
    fn sub(self, rhs: Matrix<S>) -> Matrix<S> {
        &self - &rhs
    }
}

impl<S: Scalar> Mul for Matrix<S> {
    type Output = Matrix<S>;
    fn mul(self, rhs: Matrix<S>) -> Matrix<S> {
        &self * &rhs
    }
}

impl<S: Scalar> Neg for Matrix<S> {
    type Output = Matrix<S>;
    fn neg(self) -> Matrix<S> {
        -&self
    }
}

impl<S: fmt::Debug> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[S]> = self.entries.chunks(self.size).collect();
        f.debug_list().entries(rows).finish()
    }
}

/// The Pauli matrices `σ₁, σ₂, σ₃`.
pub fn pauli<S: Scalar>() -> [Matrix<S>; 3] {
    let z = S::zero;
    let o = S::one;
    let i = S::i;
    [
        Matrix::from_row_major(vec![z(), o(), o(), z()]).unwrap(),
        Matrix::from_row_major(vec![z(), -i(), i(), z()]).unwrap(),
        Matrix::from_row_major(vec![o(), z(), z(), -o()]).unwrap(),
    ]
}
