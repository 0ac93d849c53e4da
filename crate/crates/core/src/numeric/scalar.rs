use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::{LinearSolution, Matrix};
use super::{exact, float};
use crate::error::{Error, Result};

/// Exact rational; `BigRational` keeps values reduced with a positive denominator.
pub type Rational = BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    ExactRational,
    ComplexDouble,
}

/// A scalar field usable by the dense linear algebra.
///
/// The two implementations pick different elimination kernels: exact
/// fraction-free elimination for [`Rational`], SVD-based numerical rank for
/// [`Complex64`]. Mixing the two inside one matrix is impossible at the type
/// level; the dynamic [`Scalar`] enum reports it as [`Error::ModeMismatch`].
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const MODE: Mode;
    /// Tolerance to use when the caller has no opinion.
    const DEFAULT_TOL: f64;

    fn from_i64(v: i64) -> Self;
    fn from_rational(q: &Rational) -> Self;
    /// Exact for rationals (every finite double is a dyadic rational).
    fn from_f64(x: f64) -> Self;
    fn to_complex(&self) -> Complex64;
    /// Absolute value (approximate for rationals).
    fn magnitude(&self) -> f64;
    fn conj(&self) -> Self;

    fn check_tol(tol: f64) -> Result<()>;
    fn rank(m: &Matrix<Self>, tol: f64) -> Result<usize>;
    fn kernel(m: &Matrix<Self>, tol: f64) -> Result<Matrix<Self>>;
    fn solve(m: &Matrix<Self>, rhs: &[Self], tol: f64) -> Result<LinearSolution<Self>>;
}

impl Field for Rational {
    const MODE: Mode = Mode::ExactRational;
    const DEFAULT_TOL: f64 = 0.0;

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn from_f64(x: f64) -> Self {
        Rational::from_float(x).expect("finite double")
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn check_tol(tol: f64) -> Result<()> {
        if tol == 0.0 {
            Ok(())
        } else {
            Err(Error::Tolerance { mode: Self::MODE, tol })
        }
    }
    fn rank(m: &Matrix<Self>, tol: f64) -> Result<usize> {
        Self::check_tol(tol)?;
        Ok(exact::bareiss_rank(m))
    }
    fn kernel(m: &Matrix<Self>, tol: f64) -> Result<Matrix<Self>> {
        Self::check_tol(tol)?;
        Ok(exact::kernel(m))
    }
    fn solve(m: &Matrix<Self>, rhs: &[Self], tol: f64) -> Result<LinearSolution<Self>> {
        Self::check_tol(tol)?;
        exact::solve(m, rhs)
    }
}

impl Field for Complex64 {
    const MODE: Mode = Mode::ComplexDouble;
    const DEFAULT_TOL: f64 = super::DEFAULT_RANK_TOL;

    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }
    fn from_rational(q: &Rational) -> Self {
        q.to_complex()
    }
    fn from_f64(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn check_tol(tol: f64) -> Result<()> {
        if tol > 0.0 && tol.is_finite() {
            Ok(())
        } else {
            Err(Error::Tolerance { mode: Self::MODE, tol })
        }
    }
    fn rank(m: &Matrix<Self>, tol: f64) -> Result<usize> {
        Self::check_tol(tol)?;
        Ok(float::rank(m, tol))
    }
    fn kernel(m: &Matrix<Self>, tol: f64) -> Result<Matrix<Self>> {
        Self::check_tol(tol)?;
        Ok(float::kernel(m, tol))
    }
    fn solve(m: &Matrix<Self>, rhs: &[Self], tol: f64) -> Result<LinearSolution<Self>> {
        Self::check_tol(tol)?;
        float::solve(m, rhs, tol)
    }
}

/// A field element whose mode is only known at runtime (e.g. read from JSON).
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Rational(Rational),
    Complex(Complex64),
}

impl Scalar {
    pub fn mode(&self) -> Mode {
        match self {
            Scalar::Rational(_) => Mode::ExactRational,
            Scalar::Complex(_) => Mode::ComplexDouble,
        }
    }

    fn binary(
        &self,
        other: &Scalar,
        q: impl Fn(&Rational, &Rational) -> Rational,
        c: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Ok(Scalar::Rational(q(x, y))),
            (Scalar::Complex(x), Scalar::Complex(y)) => Ok(Scalar::Complex(c(*x, *y))),
            _ => Err(Error::ModeMismatch(self.mode(), other.mode())),
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.binary(other, |x, y| x + y, |x, y| x + y)
    }
    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.binary(other, |x, y| x - y, |x, y| x - y)
    }
    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.binary(other, |x, y| x * y, |x, y| x * y)
    }
    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        let zero = match other {
            Scalar::Rational(y) => y.is_zero(),
            Scalar::Complex(y) => y.is_zero(),
        };
        if zero {
            return Err(Error::ZeroInput("divisor"));
        }
        self.binary(other, |x, y| x / y, |x, y| x / y)
    }
}

impl From<Rational> for Scalar {
    fn from(q: Rational) -> Self {
        Scalar::Rational(q)
    }
}

impl From<Complex64> for Scalar {
    fn from(z: Complex64) -> Self {
        Scalar::Complex(z)
    }
}

/// Parses `"p/q"`, `"p"` or a decimal integer into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Formats a rational as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn rationals_are_reduced_with_positive_denominator() {
        let x = parse_rational("6/-4").unwrap();
        assert_eq!(x, q(-3, 2));
        assert!(x.denom().is_positive());
        assert_eq!(format_rational(&x), "-3/2");
        assert_eq!(format_rational(&parse_rational("8/4").unwrap()), "2");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1.5").is_err());
    }

    #[test]
    fn mixing_modes_is_an_error() {
        let a = Scalar::from(q(1, 2));
        let b = Scalar::from(Complex64::new(1.0, 0.0));
        assert_eq!(
            a.checked_add(&b),
            Err(Error::ModeMismatch(Mode::ExactRational, Mode::ComplexDouble))
        );
        assert_eq!(a.checked_mul(&a).unwrap(), Scalar::from(q(1, 4)));
        assert!(a.checked_div(&Scalar::from(q(0, 1))).is_err());
    }

    #[test]
    fn tolerance_preconditions() {
        assert!(Rational::check_tol(0.0).is_ok());
        assert!(Rational::check_tol(1e-8).is_err());
        assert!(Complex64::check_tol(0.0).is_err());
        assert!(Complex64::check_tol(1e-8).is_ok());
    }
}
