use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::matrix::{LinearSolution, Matrix};
use super::scalar::Rational;
use crate::error::Result;

/// Scales each row by the lcm of its denominators to get an integer matrix
/// with the same row space.
fn integer_rows(m: &Matrix<Rational>) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect()
        })
        .collect()
}

/// Rank by fraction-free Gaussian elimination (Bareiss). Pivot choice is the
/// first nonzero entry in the column.
pub(crate) fn bareiss_rank(m: &Matrix<Rational>) -> usize {
    let mut a = integer_rows(m);
    let (rows, cols) = (m.rows(), m.cols());
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank][col].clone();
        for r in rank + 1..rows {
            let factor = a[r][col].clone();
            for c in col..cols {
                let v = &pivot * &a[r][c] - &factor * &a[rank][c];
                // exact by Sylvester's identity
                a[r][c] = v / &prev;
            }
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Reduced row echelon form over the rationals. Returns the reduced rows and
/// the pivot column of each nonzero row.
pub(crate) fn rref(m: &Matrix<Rational>) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<Rational>> = (0..rows).map(|i| m.row(i).to_vec()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][col].recip();
        for c in col..cols {
            a[r][c] = &a[r][c] * &inv;
        }
        for i in 0..rows {
            if i == r || a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].clone();
            for c in col..cols {
                let v = &a[r][c] * &f;
                a[i][c] -= v;
            }
        }
        pivots.push(col);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

/// Kernel basis from the RREF: one column per free variable, with a 1 in that
/// variable's slot.
pub(crate) fn kernel(m: &Matrix<Rational>) -> Matrix<Rational> {
    let cols = m.cols();
    let (reduced, pivots) = rref(m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let basis: Vec<Vec<Rational>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (row, &p) in reduced.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect();
    Matrix::from_columns(cols, &basis).expect("kernel vectors have length cols")
}

pub(crate) fn solve(m: &Matrix<Rational>, rhs: &[Rational]) -> Result<LinearSolution<Rational>> {
    let cols = m.cols();
    let rows: Vec<Vec<Rational>> = (0..m.rows())
        .map(|i| {
            let mut r = m.row(i).to_vec();
            r.push(rhs[i].clone());
            r
        })
        .collect();
    let aug = Matrix::from_rows(cols + 1, &rows)?;
    let (reduced, pivots) = rref(&aug);
    if pivots.last() == Some(&cols) {
        return Ok(LinearSolution::Inconsistent);
    }
    let mut x = vec![Rational::zero(); cols];
    for (row, &p) in reduced.iter().zip(&pivots) {
        x[p] = row[cols].clone();
    }
    Ok(LinearSolution::Solved(x))
}
