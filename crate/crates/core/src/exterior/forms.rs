use serde::{Deserialize, Serialize};

use super::basis::{binomial, WedgeBasis};
use crate::error::{Error, Result};
use crate::numeric::{is_zero_vec, vec_norm, Field, Matrix};

/// Which space a form lives on: `Λ^k V` or `Λ^k V∨`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Primal,
    Dual,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Primal => Side::Dual,
            Side::Dual => Side::Primal,
        }
    }
}

/// Element of `Λ²` in lexicographic Plücker coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoForm<F> {
    n: usize,
    coords: Vec<F>,
    side: Side,
}

/// Element of `Λ⁴` in lexicographic coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct FourForm<F> {
    n: usize,
    coords: Vec<F>,
    side: Side,
}

impl<F: Field> TwoForm<F> {
    pub fn new(n: usize, coords: Vec<F>, side: Side) -> Result<Self> {
        if coords.len() != binomial(n, 2) {
            return Err(Error::Dimension(format!(
                "two-form on n={n} needs {} coordinates, got {}",
                binomial(n, 2),
                coords.len()
            )));
        }
        Ok(TwoForm { n, coords, side })
    }

    pub fn zero(n: usize, side: Side) -> Self {
        TwoForm { n, coords: vec![F::zero(); binomial(n, 2)], side }
    }

    /// The basis form `e_{i+1} ∧ e_{j+1}` (0-based `i < j`).
    pub fn basis(n: usize, i: usize, j: usize, side: Side) -> Self {
        let mut w = Self::zero(n, side);
        w.coords[WedgeBasis::new(n).pair_index(i, j)] = F::one();
        w
    }

    /// `a ∧ b` with coordinate `a_i b_j − a_j b_i` at `(i, j)`.
    pub fn wedge(a: &[F], b: &[F], side: Side) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::Dimension(format!(
                "wedge of vectors of lengths {} and {}",
                a.len(),
                b.len()
            )));
        }
        let n = a.len();
        let coords = WedgeBasis::new(n)
            .pairs()
            .iter()
            .map(|&(i, j)| a[i].clone() * b[j].clone() - a[j].clone() * b[i].clone())
            .collect();
        Ok(TwoForm { n, coords, side })
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn side(&self) -> Side {
        self.side
    }
    pub fn coords(&self) -> &[F] {
        &self.coords
    }
    pub fn into_coords(self) -> Vec<F> {
        self.coords
    }

    pub fn with_side(mut self, side: Side) -> Self {
        self.side = side;
        self
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.coords)
    }

    pub fn norm(&self) -> f64 {
        vec_norm(&self.coords)
    }

    pub fn scale(&self, s: &F) -> Self {
        TwoForm {
            n: self.n,
            coords: self.coords.iter().map(|c| c.clone() * s.clone()).collect(),
            side: self.side,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(TwoForm {
            n: self.n,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(x, y)| x.clone() + y.clone())
                .collect(),
            side: self.side,
        })
    }

    /// `Σ weights[i] · forms[i]`.
    pub fn combination(n: usize, side: Side, weights: &[F], forms: &[TwoForm<F>]) -> Result<Self> {
        if weights.len() != forms.len() {
            return Err(Error::Dimension("weights and forms differ in length".into()));
        }
        let mut acc = Self::zero(n, side);
        for (w, f) in weights.iter().zip(forms) {
            acc = acc.add(&f.scale(w))?;
        }
        Ok(acc)
    }

    /// The natural pairing of a form on one side with a form on the other:
    /// lexicographic bases are dual, `⟨e_I, e*_J⟩ = δ_IJ`.
    pub fn pair_with(&self, other: &Self) -> Result<F> {
        if self.n != other.n || self.side == other.side {
            return Err(Error::Dimension("pairing needs equal n and opposite sides".into()));
        }
        Ok(dot(&self.coords, &other.coords))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.side != other.side {
            return Err(Error::Dimension(format!(
                "forms on (n={}, {:?}) and (n={}, {:?})",
                self.n, self.side, other.n, other.side
            )));
        }
        Ok(())
    }

    /// The `n × n` skew matrix `A` with `A_ij = ω_(i,j)` for `i < j`.
    pub fn skew_matrix(&self) -> Matrix<F> {
        let mut a = Matrix::zeros(self.n, self.n);
        for (&(i, j), c) in WedgeBasis::new(self.n).pairs().iter().zip(&self.coords) {
            a[(i, j)] = c.clone();
            a[(j, i)] = -c.clone();
        }
        a
    }

    pub fn to_complex(&self) -> TwoForm<num_complex::Complex64> {
        TwoForm {
            n: self.n,
            coords: self.coords.iter().map(Field::to_complex).collect(),
            side: self.side,
        }
    }
}

impl<F: Field> FourForm<F> {
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn side(&self) -> Side {
        self.side
    }
    pub fn coords(&self) -> &[F] {
        &self.coords
    }
    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.coords)
    }
}

pub(crate) fn dot<F: Field>(x: &[F], y: &[F]) -> F {
    x.iter()
        .zip(y)
        .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
}

/// `a ∧ b` for vectors of `V∨`.
pub fn wedge_vectors<F: Field>(a: &[F], b: &[F]) -> Result<TwoForm<F>> {
    TwoForm::wedge(a, b, Side::Dual)
}

/// `ω ∧ η ∈ Λ⁴`. The coordinate at `(i,j,k,l)` is the signed sum over the
/// three splittings of the quadruple into two pairs, taken both ways round.
pub fn wedge_two_forms<F: Field>(omega: &TwoForm<F>, eta: &TwoForm<F>) -> Result<FourForm<F>> {
    omega.check_compatible(eta)?;
    let basis = WedgeBasis::new(omega.n);
    let w = |i, j| &omega.coords[basis.pair_index(i, j)];
    let e = |i, j| &eta.coords[basis.pair_index(i, j)];
    let coords = basis
        .quads()
        .iter()
        .map(|&[i, j, k, l]| {
            w(i, j).clone() * e(k, l).clone() - w(i, k).clone() * e(j, l).clone()
                + w(i, l).clone() * e(j, k).clone()
                + w(j, k).clone() * e(i, l).clone()
                - w(j, l).clone() * e(i, k).clone()
                + w(k, l).clone() * e(i, j).clone()
        })
        .collect();
    Ok(FourForm { n: omega.n, coords, side: omega.side })
}

/// Plücker test: `ω ∧ ω = 0` exactly, or every coordinate below
/// `tol · ‖ω‖²` in floating mode.
pub fn is_decomposable<F: Field>(omega: &TwoForm<F>, tol: f64) -> Result<bool> {
    F::check_tol(tol)?;
    if omega.is_zero() {
        return Err(Error::ZeroInput("two-form"));
    }
    let sq = wedge_two_forms(omega, omega)?;
    if tol == 0.0 {
        return Ok(sq.is_zero());
    }
    let bound = tol * omega.norm().powi(2);
    Ok(sq.coords.iter().all(|c| c.magnitude() < bound))
}

/// Recovers `(a, b)` with `a ∧ b ∝ ω` from two independent columns of the
/// skew matrix of `ω`, whose column span is `⟨a, b⟩`.
///
/// Exact mode returns the reduced echelon basis of the span, so the first
/// nonzero coordinate of `a` is 1 and `b` vanishes there. Floating mode
/// returns an orthonormal basis (Hermitian inner product).
pub fn decompose<F: Field>(omega: &TwoForm<F>, tol: f64) -> Result<(Vec<F>, Vec<F>)> {
    if !is_decomposable(omega, tol)? {
        return Err(Error::NotDecomposable);
    }
    let cols = omega.skew_matrix().columns();
    if tol == 0.0 {
        let first = cols.iter().position(|c| !is_zero_vec(c)).expect("nonzero form");
        let second = cols
            .iter()
            .skip(first + 1)
            .find(|c| {
                Matrix::from_rows(omega.n, &[cols[first].clone(), (*c).clone()])
                    .and_then(|m| m.rank(0.0))
                    .map(|r| r == 2)
                    .unwrap_or(false)
            })
            .ok_or(Error::NotDecomposable)?;
        let span = Matrix::from_rows(omega.n, &[cols[first].clone(), second.clone()])?;
        let mut it = echelon_rows(&span).into_iter();
        let a = it.next().ok_or(Error::NotDecomposable)?;
        let b = it.next().ok_or(Error::NotDecomposable)?;
        return Ok((a, b));
    }
    let (i1, c1) = cols
        .iter()
        .enumerate()
        .max_by(|x, y| vec_norm(x.1).total_cmp(&vec_norm(y.1)))
        .expect("n >= 1");
    let a = normalize(c1);
    let (_, b) = cols
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != i1)
        .map(|(i, c)| (i, remove_component(c, &a)))
        .max_by(|x, y| vec_norm(&x.1).total_cmp(&vec_norm(&y.1)))
        .ok_or(Error::NotDecomposable)?;
    if vec_norm(&b) <= tol.sqrt() * vec_norm(c1) {
        return Err(Error::NotDecomposable);
    }
    Ok((a, normalize(&b)))
}

/// Nonzero rows of the reduced echelon form (first-nonzero pivoting).
fn echelon_rows<F: Field>(m: &Matrix<F>) -> Vec<Vec<F>> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<F>> = (0..rows).map(|i| m.row(i).to_vec()).collect();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = F::one() / a[r][col].clone();
        for c in 0..cols {
            a[r][c] = a[r][c].clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for c in 0..cols {
                    a[i][c] = a[i][c].clone() - a[r][c].clone() * f.clone();
                }
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}

fn normalize<F: Field>(v: &[F]) -> Vec<F> {
    let inv = F::one() / F::from_f64(vec_norm(v));
    v.iter().map(|x| x.clone() * inv.clone()).collect()
}

/// `c − ⟨a, c⟩ a` for unit `a` (Hermitian inner product).
fn remove_component<F: Field>(c: &[F], a: &[F]) -> Vec<F> {
    let proj = a
        .iter()
        .zip(c)
        .fold(F::zero(), |acc, (x, y)| acc + x.conj() * y.clone());
    c.iter()
        .zip(a)
        .map(|(y, x)| y.clone() - proj.clone() * x.clone())
        .collect()
}

/// Basis of the annihilator of `basis` under the lexicographic pairing; the
/// result lives on the opposite side. `n` and `side` describe the input (they
/// matter when `basis` is empty).
pub fn orthogonal_complement<F: Field>(
    n: usize,
    side: Side,
    basis: &[TwoForm<F>],
    tol: f64,
) -> Result<Vec<TwoForm<F>>> {
    let dim = binomial(n, 2);
    for f in basis {
        if f.n != n || f.side != side {
            return Err(Error::Dimension("basis forms disagree on n or side".into()));
        }
    }
    let rows: Vec<Vec<F>> = basis.iter().map(|f| f.coords.clone()).collect();
    let m = Matrix::from_rows(dim, &rows)?;
    if m.rank(tol)? != basis.len() {
        return Err(Error::DependentRows);
    }
    let ker = m.kernel_basis(tol)?;
    Ok(ker
        .columns()
        .into_iter()
        .map(|c| TwoForm { n, coords: c, side: side.flip() })
        .collect())
}
