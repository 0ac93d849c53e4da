use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::JsonScalar;
use crate::numeric::{Matrix, Rational};

/// Homogeneous binary form of degree `d`; `coeffs[i]` multiplies
/// `x0^(d−i) x1^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    coeffs: Vec<Rational>,
}

impl BinaryForm {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Dimension("a binary form needs at least one coefficient".into()));
        }
        Ok(BinaryForm { coeffs })
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero(degree: usize) -> Self {
        BinaryForm { coeffs: vec![Rational::zero(); degree + 1] }
    }

    /// `x0^(d−i) x1^i`.
    pub fn monomial(degree: usize, i: usize) -> Self {
        let mut f = Self::zero(degree);
        f.coeffs[i] = Rational::one();
        f
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, p) in self.coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for (j, q) in other.coeffs.iter().enumerate() {
                out[i + j] += p * q;
            }
        }
        BinaryForm { coeffs: out }
    }

    pub fn sub(&self, other: &BinaryForm) -> Result<BinaryForm> {
        if self.degree() != other.degree() {
            return Err(Error::Dimension(format!(
                "forms of degree {} and {} cannot be subtracted",
                self.degree(),
                other.degree()
            )));
        }
        Ok(BinaryForm { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(p, q)| p - q).collect() })
    }

    /// Power of `x0` dividing the form: `d` minus the last nonzero index.
    fn x0_multiplicity(&self) -> usize {
        let last = self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
        self.degree() - last
    }

    /// `f(1, t)` with trailing zeros removed, ascending in `t`.
    fn dehomogenize(&self) -> Vec<Rational> {
        let mut p = self.coeffs.clone();
        trim(&mut p);
        p
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.coeffs.iter().map(|c| c.to_json()).collect())
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        Self::new(crate::exterior::vec_from_json(v)?)
    }
}

fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Remainder of `p` by nonzero `q` (ascending coefficients, trimmed).
fn poly_rem(mut p: Vec<Rational>, q: &[Rational]) -> Vec<Rational> {
    let lead = q.last().expect("nonzero divisor");
    while p.len() >= q.len() {
        let coef = p.last().unwrap().clone() / lead;
        let shift = p.len() - q.len();
        for (i, c) in q.iter().enumerate() {
            p[shift + i] -= &coef * c;
        }
        p.pop();
        trim(&mut p);
    }
    p
}

fn poly_gcd_degree(mut p: Vec<Rational>, mut q: Vec<Rational>) -> usize {
    while !q.is_empty() {
        let r = poly_rem(p, &q);
        p = q;
        q = r;
    }
    p.len().saturating_sub(1)
}

/// Degree of the homogeneous gcd, by Euclid on `f(1, t)` plus the shared
/// power of `x0`. A zero argument has the other form as gcd, so
/// `gcd_degree(0, q) = deg q`.
pub fn gcd_degree(p: &BinaryForm, q: &BinaryForm) -> Result<usize> {
    match (p.is_zero(), q.is_zero()) {
        (true, true) => Err(Error::ZeroInput("pair of binary forms")),
        (true, false) => Ok(q.degree()),
        (false, true) => Ok(p.degree()),
        (false, false) => {
            let shared = p.x0_multiplicity().min(q.x0_multiplicity());
            Ok(shared + poly_gcd_degree(p.dehomogenize(), q.dehomogenize()))
        }
    }
}

/// Homogeneous Sylvester matrix, `(deg p + deg q)` square. Its determinant
/// vanishes iff `p` and `q` share a root in `ℙ¹` (or one of them is zero).
pub fn sylvester_matrix(p: &BinaryForm, q: &BinaryForm) -> Matrix<Rational> {
    let (m, k) = (p.degree(), q.degree());
    let size = m + k;
    let mut rows = Vec::with_capacity(size);
    for (form, copies) in [(p, k), (q, m)] {
        for s in 0..copies {
            let mut row = vec![Rational::zero(); size];
            for (i, c) in form.coeffs.iter().enumerate() {
                row[s + i] = c.clone();
            }
            rows.push(row);
        }
    }
    Matrix::from_rows(size, &rows).expect("rows have the declared width")
}

/// Both forms nonzero and without a common root.
pub fn coprime(p: &BinaryForm, q: &BinaryForm) -> bool {
    if p.is_zero() || q.is_zero() {
        return false;
    }
    let s = sylvester_matrix(p, q);
    s.rank(0.0).expect("exact rank") == s.rows()
}

/// A global section `h1 ⊕ h2` of `O(a) ⊕ O(b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryFormPair {
    pub h1: BinaryForm,
    pub h2: BinaryForm,
}

impl BinaryFormPair {
    pub fn new(h1: BinaryForm, h2: BinaryForm) -> Result<Self> {
        if h1.is_zero() && h2.is_zero() {
            return Err(Error::ZeroInput("section h1 ⊕ h2"));
        }
        Ok(BinaryFormPair { h1, h2 })
    }

    pub fn a(&self) -> usize {
        self.h1.degree()
    }

    pub fn b(&self) -> usize {
        self.h2.degree()
    }

    /// Coordinates in `Sym^a ⊕ Sym^b`: the coefficients of `h1` then of `h2`.
    pub fn to_vector(&self) -> Vec<Rational> {
        self.h1.coeffs.iter().chain(&self.h2.coeffs).cloned().collect()
    }

    pub fn from_vector(a: usize, b: usize, v: &[Rational]) -> Result<Self> {
        if v.len() != a + b + 2 {
            return Err(Error::Dimension(format!("section of length {} for (a, b) = ({a}, {b})", v.len())));
        }
        Self::new(BinaryForm::new(v[..=a].to_vec())?, BinaryForm::new(v[a + 1..].to_vec())?)
    }

    /// `h1 · k2 − h2 · k1`, a form of degree `a + b`.
    pub fn cross_determinant(&self, other: &BinaryFormPair) -> Result<BinaryForm> {
        if self.a() != other.a() || self.b() != other.b() {
            return Err(Error::Dimension("sections of different bundles".into()));
        }
        self.h1.mul(&other.h2).sub(&self.h2.mul(&other.h1))
    }
}

/// JSON form of a section: `{"h1": [...], "h2": [...]}` with `"p/q"` entries.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SectionJson {
    pub h1: serde_json::Value,
    pub h2: serde_json::Value,
}

impl From<&BinaryFormPair> for SectionJson {
    fn from(s: &BinaryFormPair) -> Self {
        SectionJson { h1: s.h1.to_json(), h2: s.h2.to_json() }
    }
}
