use std::fmt;

use num_complex::Complex64;

use super::scalar::{Field, Mode, Rational, Scalar};
use crate::error::{Error, Result};

/// Dense row-major matrix over a [`Field`].
#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

/// Outcome of [`Matrix::solve`]: an inconsistent system is a normal answer.
#[derive(Clone, Debug, PartialEq)]
pub enum LinearSolution<F> {
    Solved(Vec<F>),
    Inconsistent,
}

impl<F> LinearSolution<F> {
    pub fn solution(self) -> Option<Vec<F>> {
        match self {
            LinearSolution::Solved(x) => Some(x),
            LinearSolution::Inconsistent => None,
        }
    }
}

impl<F: Field> Matrix<F> {
    pub fn new(rows: usize, cols: usize, data: Vec<F>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    /// Builds a matrix from equal-length rows. `cols` is needed for the
    /// zero-row case.
    pub fn from_rows(cols: usize, rows: &[Vec<F>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            data.extend(r.iter().cloned());
        }
        Ok(Matrix { rows: rows.len(), cols, data })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[Vec<F>]) -> Result<Self> {
        Ok(Self::from_rows(rows, cols)?.transpose())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn data(&self) -> &[F] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<F>> {
        (0..self.cols).map(|j| self.column(j)).collect()
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

    pub fn mul_vec(&self, x: &[F]) -> Result<Vec<F>> {
        if x.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    pub fn mul(&self, other: &Matrix<F>) -> Result<Matrix<F>> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = out[(i, j)].clone() + a.clone() * other[(k, j)].clone();
                }
            }
        }
        Ok(out)
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix<F>) -> Result<Matrix<F>> {
        if self.cols != other.cols {
            return Err(Error::Dimension("vstack column mismatch".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix { rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        super::vec_norm(&self.data)
    }

    pub fn to_complex(&self) -> Matrix<Complex64> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(Field::to_complex).collect(),
        }
    }

    /// Rank; `tol` must be 0 in exact mode and positive (relative to the
    /// largest singular value) in floating mode.
    pub fn rank(&self, tol: f64) -> Result<usize> {
        F::rank(self, tol)
    }

    /// Matrix whose columns form a basis of the right kernel.
    pub fn kernel_basis(&self, tol: f64) -> Result<Matrix<F>> {
        F::kernel(self, tol)
    }

    pub fn solve(&self, rhs: &[F], tol: f64) -> Result<LinearSolution<F>> {
        if rhs.len() != self.rows {
            return Err(Error::Dimension(format!(
                "rhs of length {} against {} rows",
                rhs.len(),
                self.rows
            )));
        }
        F::solve(self, rhs, tol)
    }
}

impl<F> std::ops::Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<F> std::ops::IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

/// A matrix whose mode was chosen at runtime.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyMatrix {
    Exact(Matrix<Rational>),
    Float(Matrix<Complex64>),
}

impl AnyMatrix {
    /// Builds from runtime scalars; all entries must share one mode.
    /// An empty matrix defaults to exact mode.
    pub fn from_scalars(rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        let mode = entries.first().map(Scalar::mode).unwrap_or(Mode::ExactRational);
        if let Some(bad) = entries.iter().find(|s| s.mode() != mode) {
            return Err(Error::ModeMismatch(mode, bad.mode()));
        }
        match mode {
            Mode::ExactRational => {
                let data = entries
                    .into_iter()
                    .map(|s| match s {
                        Scalar::Rational(q) => q,
                        Scalar::Complex(_) => unreachable!(),
                    })
                    .collect();
                Ok(AnyMatrix::Exact(Matrix::new(rows, cols, data)?))
            }
            Mode::ComplexDouble => {
                let data = entries
                    .into_iter()
                    .map(|s| match s {
                        Scalar::Complex(z) => z,
                        Scalar::Rational(_) => unreachable!(),
                    })
                    .collect();
                Ok(AnyMatrix::Float(Matrix::new(rows, cols, data)?))
            }
        }
    }

    pub fn mode(&self) -> Mode {
        match self {
            AnyMatrix::Exact(_) => Mode::ExactRational,
            AnyMatrix::Float(_) => Mode::ComplexDouble,
        }
    }

    pub fn rank(&self, tol: f64) -> Result<usize> {
        match self {
            AnyMatrix::Exact(m) => m.rank(tol),
            AnyMatrix::Float(m) => m.rank(tol),
        }
    }

    pub fn kernel_basis(&self, tol: f64) -> Result<AnyMatrix> {
        Ok(match self {
            AnyMatrix::Exact(m) => AnyMatrix::Exact(m.kernel_basis(tol)?),
            AnyMatrix::Float(m) => AnyMatrix::Float(m.kernel_basis(tol)?),
        })
    }

    pub fn solve(&self, rhs: &[Scalar], tol: f64) -> Result<LinearSolution<Scalar>> {
        let mode = self.mode();
        if let Some(bad) = rhs.iter().find(|s| s.mode() != mode) {
            return Err(Error::ModeMismatch(mode, bad.mode()));
        }
        match self {
            AnyMatrix::Exact(m) => {
                let rhs: Vec<Rational> = rhs
                    .iter()
                    .map(|s| match s {
                        Scalar::Rational(q) => q.clone(),
                        Scalar::Complex(_) => unreachable!(),
                    })
                    .collect();
                Ok(match m.solve(&rhs, tol)? {
                    LinearSolution::Solved(x) => {
                        LinearSolution::Solved(x.into_iter().map(Scalar::from).collect())
                    }
                    LinearSolution::Inconsistent => LinearSolution::Inconsistent,
                })
            }
            AnyMatrix::Float(m) => {
                let rhs: Vec<Complex64> = rhs
                    .iter()
                    .map(|s| match s {
                        Scalar::Complex(z) => *z,
                        Scalar::Rational(_) => unreachable!(),
                    })
                    .collect();
                Ok(match m.solve(&rhs, tol)? {
                    LinearSolution::Solved(x) => {
                        LinearSolution::Solved(x.into_iter().map(Scalar::from).collect())
                    }
                    LinearSolution::Inconsistent => LinearSolution::Inconsistent,
                })
            }
        }
    }
}
