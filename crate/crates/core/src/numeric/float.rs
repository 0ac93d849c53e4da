use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Zero;

use super::matrix::{LinearSolution, Matrix};
use crate::error::Result;

/// Right singular vectors paired with singular values, largest first.
/// Zero rows are appended so that the decomposition always returns a full
/// set of `cols` right singular vectors.
fn full_svd(m: &Matrix<Complex64>) -> (Vec<f64>, Vec<Vec<Complex64>>) {
    let cols = m.cols();
    if cols == 0 {
        return (Vec::new(), Vec::new());
    }
    let rows = m.rows().max(cols);
    let a = DMatrix::from_fn(rows, cols, |i, j| {
        if i < m.rows() {
            m[(i, j)]
        } else {
            Complex64::zero()
        }
    });
    let svd = a.svd(false, true);
    let v_t = svd.v_t.expect("requested V^H");
    let mut pairs: Vec<(f64, Vec<Complex64>)> = (0..svd.singular_values.len())
        .map(|k| {
            // row k of V^H is the conjugate of the k-th right singular vector
            let v = (0..cols).map(|j| v_t[(k, j)].conj()).collect();
            (svd.singular_values[k], v)
        })
        .collect();
    pairs.sort_by(|x, y| y.0.total_cmp(&x.0));
    pairs.into_iter().unzip()
}

/// Singular values, largest first; `min(rows, cols)` of them.
pub fn singular_values(m: &Matrix<Complex64>) -> Vec<f64> {
    if m.rows() == 0 || m.cols() == 0 {
        return Vec::new();
    }
    let a = DMatrix::from_row_slice(m.rows(), m.cols(), m.data());
    let mut s: Vec<f64> = a.singular_values().iter().copied().collect();
    s.sort_by(|x, y| y.total_cmp(x));
    s
}

fn numerical_rank(sigma: &[f64], tol: f64) -> usize {
    match sigma.first() {
        Some(&top) if top > 0.0 => sigma.iter().filter(|&&s| s > tol * top).count(),
        _ => 0,
    }
}

pub(crate) fn rank(m: &Matrix<Complex64>, tol: f64) -> usize {
    numerical_rank(&singular_values(m), tol)
}

pub(crate) fn kernel(m: &Matrix<Complex64>, tol: f64) -> Matrix<Complex64> {
    let cols = m.cols();
    let (sigma, vs) = full_svd(m);
    let r = numerical_rank(&sigma, tol);
    let basis: Vec<Vec<Complex64>> = vs.into_iter().skip(r).collect();
    Matrix::from_columns(cols, &basis).expect("singular vectors have length cols")
}

/// Minimum-norm least-squares solution via the truncated SVD; the system is
/// declared inconsistent when the residual exceeds `tol` relative to the data.
pub(crate) fn solve(
    m: &Matrix<Complex64>,
    rhs: &[Complex64],
    tol: f64,
) -> Result<LinearSolution<Complex64>> {
    let (rows, cols) = (m.rows(), m.cols());
    let rhs_norm = super::vec_norm(rhs);
    if cols == 0 || rows == 0 {
        return Ok(if rhs_norm == 0.0 {
            LinearSolution::Solved(vec![Complex64::zero(); cols])
        } else {
            LinearSolution::Inconsistent
        });
    }
    let a = DMatrix::from_row_slice(rows, cols, m.data());
    let b = nalgebra::DVector::from_column_slice(rhs);
    let svd = a.svd(true, true);
    let top = svd.singular_values.max();
    let x = svd
        .solve(&b, tol * top)
        .map_err(|e| crate::error::Error::Precondition(e.to_string()))?;
    let x: Vec<Complex64> = x.iter().copied().collect();
    let residual = super::vec_norm(
        &m.mul_vec(&x)?
            .iter()
            .zip(rhs)
            .map(|(p, q)| p - q)
            .collect::<Vec<_>>(),
    );
    let scale = m.norm() * super::vec_norm(&x) + rhs_norm;
    if residual > tol * scale.max(f64::MIN_POSITIVE) {
        Ok(LinearSolution::Inconsistent)
    } else {
        Ok(LinearSolution::Solved(x))
    }
}

/// Solves a square system by LU with partial (largest-modulus) pivoting.
/// Returns `None` when a pivot vanishes relative to the matrix scale.
pub fn lu_solve(m: &Matrix<Complex64>, rhs: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = m.rows();
    debug_assert_eq!(n, m.cols());
    debug_assert_eq!(n, rhs.len());
    let mut a = m.data().to_vec();
    let mut b = rhs.to_vec();
    let scale = a.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return None;
    }
    for k in 0..n {
        let (p, best) = (k..n)
            .map(|i| (i, a[i * n + k].norm()))
            .max_by(|x, y| x.1.total_cmp(&y.1))?;
        if best <= scale * 1e-14 {
            return None;
        }
        if p != k {
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            b.swap(k, p);
        }
        let inv = a[k * n + k].inv();
        for i in k + 1..n {
            let f = a[i * n + k] * inv;
            if f.is_zero() {
                continue;
            }
            for j in k..n {
                let v = a[k * n + j];
                a[i * n + j] -= f * v;
            }
            let v = b[k];
            b[i] -= f * v;
        }
    }
    let mut x = vec![Complex64::zero(); n];
    for k in (0..n).rev() {
        let mut s = b[k];
        for j in k + 1..n {
            s -= a[k * n + j] * x[j];
        }
        x[k] = s / a[k * n + k];
    }
    Some(x)
}
