//! Dense vectors and small row-major matrices over `f64`.

use std::ops::{Add, Index, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// The ambient space `R^n` every functional and subspace lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AmbientSpace {
    dim: usize,
}

impl AmbientSpace {
    pub fn new(dim: usize) -> Result<Self, Error> {
        if dim == 0 {
            return Err(Error::InvalidInput(
                "ambient dimension must be at least 1".into(),
            ));
        }
        Ok(Self { dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

/// A point of the ambient space, serialized as a plain JSON array.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector(Vec<f64>);

impl Vector {
    pub fn new(coords: Vec<f64>) -> Self {
        Vector(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        Vector(vec![0.0; dim])
    }

    /// Standard basis vector `e_i` of `R^dim`.
    pub fn basis(dim: usize, i: usize) -> Self {
        assert!(i < dim, "basis index out of range");
        let mut coords = vec![0.0; dim];
        coords[i] = 1.0;
        Vector(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, f64> {
        self.0.iter()
    }

    pub fn dot(&self, other: &Vector) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn scale(&self, s: f64) -> Vector {
        Vector(self.0.iter().map(|a| a * s).collect())
    }

    /// `self + s * other`.
    pub fn axpy(&self, s: f64, other: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), other.dim());
        Vector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + s * b)
                .collect(),
        )
    }

    /// Unit vector in the same direction, or `None` when the norm is at or
    /// below `tol`.
    pub fn normalized(&self, tol: f64) -> Option<Vector> {
        let n = self.norm();
        if n <= tol {
            None
        } else {
            Some(self.scale(1.0 / n))
        }
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.0.iter().all(|a| a.abs() <= tol)
    }

    pub(crate) fn check_dim(&self, expected: usize) -> Result<(), Error> {
        if self.dim() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: self.dim(),
            });
        }
        Ok(())
    }
}

impl From<Vec<f64>> for Vector {
    fn from(coords: Vec<f64>) -> Self {
        Vector(coords)
    }
}

impl Index<usize> for Vector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, other: &Vector) -> Vector {
        self.axpy(1.0, other)
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, other: &Vector) -> Vector {
        self.axpy(-1.0, other)
    }
}

impl Mul<f64> for &Vector {
    type Output = Vector;
    fn mul(self, s: f64) -> Vector {
        self.scale(s)
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        self.scale(-1.0)
    }
}

/// Row-major dense matrix, serialized as an array of rows.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Matrix(Vec<Vec<f64>>);

impl Matrix {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self, Error> {
        if rows.is_empty() {
            return Err(Error::InvalidInput("matrix needs at least one row".into()));
        }
        let ncols = rows[0].len();
        if ncols == 0 {
            return Err(Error::InvalidInput(
                "matrix needs at least one column".into(),
            ));
        }
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::InvalidInput("matrix rows have unequal length".into()));
        }
        Ok(Matrix(rows))
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut r = vec![0.0; n];
                r[i] = 1.0;
                r
            })
            .collect();
        Matrix(rows)
    }

    pub fn nrows(&self) -> usize {
        self.0.len()
    }

    pub fn ncols(&self) -> usize {
        self.0[0].len()
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.0
    }

    pub fn mul_vec(&self, x: &Vector) -> Vector {
        debug_assert_eq!(self.ncols(), x.dim());
        Vector(
            self.0
                .iter()
                .map(|r| r.iter().zip(x.iter()).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    /// Euclidean norm of `self * x`, the workhorse of the norm-shaped functionals.
    pub fn mul_vec_norm(&self, x: &[f64]) -> f64 {
        let mut acc = 0.0;
        for r in &self.0 {
            let mut s = 0.0;
            for (a, b) in r.iter().zip(x) {
                s += a * b;
            }
            acc += s * s;
        }
        acc.sqrt()
    }
}
