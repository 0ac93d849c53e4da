//! Field-generic dense linear algebra in two modes: exact rationals over
//! arbitrary-precision integers, and complex doubles.
//!
//! Exact rank uses fraction-free (Bareiss) elimination with first-nonzero
//! pivoting. Floating rank counts singular values above `tol * sigma_max`.

mod exact;
mod float;
mod matrix;
mod scalar;

pub use float::{lu_solve, singular_values};
pub use matrix::{AnyMatrix, LinearSolution, Matrix};
pub use scalar::{format_rational, parse_rational, Field, Mode, Rational, Scalar};

pub use num_complex::Complex64;

/// Default relative tolerance for floating-mode rank decisions.
pub const DEFAULT_RANK_TOL: f64 = 1e-8;

/// Euclidean norm of a vector of field elements (via magnitudes).
pub fn vec_norm<F: Field>(v: &[F]) -> f64 {
    v.iter().map(|x| x.magnitude().powi(2)).sum::<f64>().sqrt()
}

pub fn is_zero_vec<F: Field>(v: &[F]) -> bool {
    v.iter().all(|x| x.is_zero())
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;
    use num_traits::Zero;
    use rand::Rng;

    use super::*;
    use crate::rng::stream;

    fn q(v: i64) -> Rational {
        Rational::from_integer(BigInt::from(v))
    }

    fn qm(rows: &[&[i64]]) -> Matrix<Rational> {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect();
        Matrix::from_rows(cols, &rows).unwrap()
    }

    /// Random integer matrix in [-9, 9] with some rows replaced by copies or
    /// negations of earlier rows (and sometimes columns), so ranks vary.
    fn random_int_matrix(rng: &mut impl Rng) -> Vec<Vec<i64>> {
        let rows = rng.random_range(1..=6);
        let cols = rng.random_range(1..=6);
        let mut m: Vec<Vec<i64>> = (0..rows)
            .map(|_| (0..cols).map(|_| rng.random_range(-9..=9)).collect())
            .collect();
        for i in 1..rows {
            if rng.random_bool(0.4) {
                let src = rng.random_range(0..i);
                let sign = if rng.random_bool(0.5) { 1 } else { -1 };
                m[i] = m[src].iter().map(|v| sign * v).collect();
            }
        }
        for j in 1..cols {
            if rng.random_bool(0.3) {
                let src = rng.random_range(0..j);
                for row in m.iter_mut() {
                    row[j] = row[src];
                }
            }
        }
        m
    }

    fn to_exact(m: &[Vec<i64>]) -> Matrix<Rational> {
        let cols = m[0].len();
        let rows: Vec<Vec<Rational>> = m.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect();
        Matrix::from_rows(cols, &rows).unwrap()
    }

    fn to_float(m: &[Vec<i64>], rng: &mut impl Rng) -> Matrix<Complex64> {
        // random complex row scaling keeps the rank but exercises complex arithmetic
        let cols = m[0].len();
        let rows: Vec<Vec<Complex64>> = m
            .iter()
            .map(|r| {
                let s = Complex64::from_polar(rng.random_range(0.5..2.0), rng.random_range(0.0..std::f64::consts::TAU));
                r.iter().map(|&v| s * v as f64).collect()
            })
            .collect();
        Matrix::from_rows(cols, &rows).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::<Rational>::identity(3).rank(0.0).unwrap(), 3);
        assert_eq!(Matrix::<Rational>::zeros(2, 2).rank(0.0).unwrap(), 0);
        assert_eq!(qm(&[&[1, 2], &[2, 4]]).rank(0.0).unwrap(), 1);
        assert_eq!(qm(&[&[1, 2], &[2, 4]]).to_complex().rank(1e-10).unwrap(), 1);
    }

    #[test]
    fn rank_rejects_wrong_tolerance() {
        assert!(qm(&[&[1]]).rank(1e-8).is_err());
        assert!(qm(&[&[1]]).to_complex().rank(0.0).is_err());
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::<Rational>::identity(2).kernel_basis(0.0).unwrap().cols(), 0);

        let k = qm(&[&[1, 1]]).kernel_basis(0.0).unwrap();
        assert_eq!(k.cols(), 1);
        assert_eq!(k[(0, 0)], -k[(1, 0)].clone());

        let k = qm(&[&[1, 2], &[2, 4]]).kernel_basis(0.0).unwrap();
        assert_eq!(k.cols(), 1);
        // proportional to (2, -1)
        assert_eq!(k[(0, 0)].clone() + q(2) * k[(1, 0)].clone(), q(0));

        let k = qm(&[&[1, 2], &[2, 4]]).to_complex().kernel_basis(1e-10).unwrap();
        assert_eq!(k.cols(), 1);
        assert!((k[(0, 0)] + 2.0 * k[(1, 0)]).norm() < 1e-12);
    }

    #[test]
    fn solve_examples() {
        let id = Matrix::<Rational>::identity(2);
        assert_eq!(
            id.solve(&[q(1), q(2)], 0.0).unwrap(),
            LinearSolution::Solved(vec![q(1), q(2)])
        );
        let x = qm(&[&[1, 1]]).solve(&[q(3)], 0.0).unwrap().solution().unwrap();
        assert_eq!(x[0].clone() + x[1].clone(), q(3));
        assert_eq!(qm(&[&[1], &[1]]).solve(&[q(1), q(2)], 0.0).unwrap(), LinearSolution::Inconsistent);

        let f = qm(&[&[1], &[1]]).to_complex();
        let rhs = [Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)];
        assert_eq!(f.solve(&rhs, 1e-10).unwrap(), LinearSolution::Inconsistent);
        let f = qm(&[&[1, 1]]).to_complex();
        let x = f.solve(&[Complex64::new(3.0, 0.0)], 1e-10).unwrap().solution().unwrap();
        assert!((x[0] + x[1] - 3.0).norm() < 1e-12);
    }

    #[test]
    fn any_matrix_rejects_mixed_modes() {
        let entries = vec![Scalar::from(q(1)), Scalar::from(Complex64::new(1.0, 0.0))];
        assert!(matches!(
            AnyMatrix::from_scalars(1, 2, entries),
            Err(crate::Error::ModeMismatch(..))
        ));
        let m = AnyMatrix::from_scalars(1, 2, vec![Scalar::from(q(1)), Scalar::from(q(1))]).unwrap();
        assert_eq!(m.rank(0.0).unwrap(), 1);
        assert!(m.solve(&[Scalar::from(Complex64::new(1.0, 0.0))], 0.0).is_err());
        assert!(matches!(m.solve(&[Scalar::from(q(2))], 0.0).unwrap(), LinearSolution::Solved(_)));
    }

    #[test]
    fn rank_nullity_and_transpose_exact() {
        let mut rng = stream(11, 0);
        for _ in 0..200 {
            let m = to_exact(&random_int_matrix(&mut rng));
            let r = m.rank(0.0).unwrap();
            let k = m.kernel_basis(0.0).unwrap();
            assert_eq!(r + k.cols(), m.cols());
            assert_eq!(k.rank(0.0).unwrap(), k.cols());
            let prod = m.mul(&k).unwrap();
            assert!(prod.data().iter().all(|x| x.is_zero()));
            assert_eq!(m.transpose().rank(0.0).unwrap(), r);
        }
    }

    #[test]
    fn rank_nullity_and_transpose_float() {
        let mut rng = stream(12, 0);
        for _ in 0..200 {
            let m = to_float(&random_int_matrix(&mut rng), &mut rng);
            let tol = 1e-10;
            let r = m.rank(tol).unwrap();
            let k = m.kernel_basis(tol).unwrap();
            assert_eq!(r + k.cols(), m.cols());
            for col in k.columns() {
                let res = vec_norm(&m.mul_vec(&col).unwrap());
                assert!(res <= tol * m.norm() * vec_norm(&col), "{m:?} {res}");
            }
            assert_eq!(m.transpose().rank(tol).unwrap(), r);
        }
    }

    #[test]
    fn exact_and_float_ranks_agree() {
        let mut rng = stream(13, 0);
        for _ in 0..200 {
            let ints = random_int_matrix(&mut rng);
            let exact = to_exact(&ints).rank(0.0).unwrap();
            let float = to_float(&ints, &mut rng).rank(1e-10).unwrap();
            assert_eq!(exact, float, "{ints:?}");
        }
    }

    #[test]
    fn lu_solves_and_detects_singularity() {
        let m = Matrix::new(
            2,
            2,
            vec![
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(2.0, 1.0),
                Complex64::new(1.0, 0.0),
            ],
        )
        .unwrap();
        let rhs = [Complex64::new(1.0, 0.0), Complex64::new(3.0, 1.0)];
        let x = lu_solve(&m, &rhs).unwrap();
        let back = m.mul_vec(&x).unwrap();
        assert!((back[0] - rhs[0]).norm() < 1e-14 && (back[1] - rhs[1]).norm() < 1e-14);
        let singular = qm(&[&[1, 2], &[2, 4]]).to_complex();
        assert!(lu_solve(&singular, &rhs).is_none());
    }
}
