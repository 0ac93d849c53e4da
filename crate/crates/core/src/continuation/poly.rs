use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::numeric::Matrix;

/// A sparse polynomial in `vars` complex variables.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiPoly {
    vars: usize,
    terms: Vec<(Vec<u32>, Complex64)>,
}

impl MultiPoly {
    /// Merges repeated exponents and drops zero coefficients.
    pub fn new(vars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Complex64)>) -> Result<Self> {
        let mut merged: BTreeMap<Vec<u32>, Complex64> = BTreeMap::new();
        for (exp, c) in terms {
            if exp.len() != vars {
                return Err(Error::Dimension(format!(
                    "exponent of length {} in a polynomial of {vars} variables",
                    exp.len()
                )));
            }
            *merged.entry(exp).or_insert(Complex64::zero()) += c;
        }
        let terms = merged.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(MultiPoly { vars, terms })
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn terms(&self) -> &[(Vec<u32>, Complex64)] {
        &self.terms
    }

    /// Maximal total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|(e, _)| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn eval(&self, z: &[Complex64]) -> Complex64 {
        self.terms.iter().map(|(e, c)| c * monomial(e, z)).sum()
    }

    /// Value and gradient at `z`.
    pub fn eval_with_gradient(&self, z: &[Complex64]) -> (Complex64, Vec<Complex64>) {
        let mut value = Complex64::zero();
        let mut grad = vec![Complex64::zero(); self.vars];
        for (e, c) in &self.terms {
            value += c * monomial(e, z);
            for (j, g) in grad.iter_mut().enumerate() {
                if e[j] == 0 {
                    continue;
                }
                let mut m = *c * f64::from(e[j]);
                for (k, (&p, zk)) in e.iter().zip(z).enumerate() {
                    let p = if k == j { p - 1 } else { p };
                    m *= zk.powu(p);
                }
                *g += m;
            }
        }
        (value, grad)
    }

    /// `Σ |c| · |z|^α`: the size of the terms, used to scale residuals.
    pub fn term_scale(&self, z: &[Complex64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| c.norm() * e.iter().zip(z).map(|(&p, x)| x.norm().powi(p as i32)).product::<f64>())
            .sum()
    }
}

fn monomial(e: &[u32], z: &[Complex64]) -> Complex64 {
    e.iter().zip(z).map(|(&p, x)| x.powu(p)).product()
}

/// A list of polynomials in the same variables.
#[derive(Clone, Debug, PartialEq)]
pub struct PolySystem {
    vars: usize,
    polys: Vec<MultiPoly>,
}

impl PolySystem {
    pub fn new(vars: usize, polys: Vec<MultiPoly>) -> Result<Self> {
        if let Some(p) = polys.iter().find(|p| p.vars != vars) {
            return Err(Error::Dimension(format!(
                "polynomial in {} variables inside a system of {vars}",
                p.vars
            )));
        }
        Ok(PolySystem { vars, polys })
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn polys(&self) -> &[MultiPoly] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn is_square(&self) -> bool {
        self.polys.len() == self.vars
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.polys.iter().map(MultiPoly::degree).collect()
    }

    fn check_point(&self, z: &[Complex64]) -> Result<()> {
        if z.len() != self.vars {
            return Err(Error::Dimension(format!(
                "point of length {} for a system in {} variables",
                z.len(),
                self.vars
            )));
        }
        Ok(())
    }

    pub fn evaluate(&self, z: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_point(z)?;
        Ok(self.polys.iter().map(|p| p.eval(z)).collect())
    }

    /// Entry `(i, j)` is `∂f_i/∂z_j`.
    pub fn jacobian(&self, z: &[Complex64]) -> Result<Matrix<Complex64>> {
        Ok(self.evaluate_with_jacobian(z)?.1)
    }

    pub fn evaluate_with_jacobian(&self, z: &[Complex64]) -> Result<(Vec<Complex64>, Matrix<Complex64>)> {
        self.check_point(z)?;
        let mut values = Vec::with_capacity(self.polys.len());
        let mut data = Vec::with_capacity(self.polys.len() * self.vars);
        for p in &self.polys {
            let (v, g) = p.eval_with_gradient(z);
            values.push(v);
            data.extend(g);
        }
        Ok((values, Matrix::new(self.polys.len(), self.vars, data)?))
    }

    /// `max_i |f_i(z)| / (1 + Σ |c| |z|^α)`: a residual that does not grow
    /// with the size of the coefficients or of the point.
    pub fn scaled_residual(&self, z: &[Complex64]) -> Result<f64> {
        self.check_point(z)?;
        Ok(self
            .polys
            .iter()
            .map(|p| p.eval(z).norm() / (1.0 + p.term_scale(z)))
            .fold(0.0, f64::max))
    }
}
