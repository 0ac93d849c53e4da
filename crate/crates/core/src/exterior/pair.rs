use num_complex::Complex64;

use super::basis::binomial;
use super::forms::{orthogonal_complement, Side, TwoForm};
use crate::error::{Error, Result};
use crate::numeric::{Field, Matrix};

/// A pair `(V, K)` with `K ⊆ Λ²V`, together with a basis of `K⊥ ⊆ Λ²V∨`.
///
/// `K⊥` is always derived from `K` (or the other way round when built with
/// [`PairVK::from_kperp`]); both bases have independent rows.
#[derive(Clone, Debug, PartialEq)]
pub struct PairVK<F> {
    n: usize,
    k_basis: Vec<TwoForm<F>>,
    kperp_basis: Vec<TwoForm<F>>,
}

impl<F: Field> PairVK<F> {
    /// Builds the pair from rows of `K` (on the primal side).
    pub fn from_k(n: usize, k_basis: Vec<TwoForm<F>>, tol: f64) -> Result<Self> {
        check_n(n)?;
        let k_basis: Vec<_> = k_basis.into_iter().map(|f| f.with_side(Side::Primal)).collect();
        let kperp_basis = orthogonal_complement(n, Side::Primal, &k_basis, tol)?;
        Ok(PairVK { n, k_basis, kperp_basis })
    }

    /// Builds the pair from rows of `K⊥` (on the dual side); `K` is derived.
    pub fn from_kperp(n: usize, kperp_basis: Vec<TwoForm<F>>, tol: f64) -> Result<Self> {
        check_n(n)?;
        let kperp_basis: Vec<_> = kperp_basis.into_iter().map(|f| f.with_side(Side::Dual)).collect();
        let k_basis = orthogonal_complement(n, Side::Dual, &kperp_basis, tol)?;
        Ok(PairVK { n, k_basis, kperp_basis })
    }

    /// Builds from raw coordinate rows of `K`.
    pub fn from_k_rows(n: usize, rows: &[Vec<F>], tol: f64) -> Result<Self> {
        let forms = rows
            .iter()
            .map(|r| TwoForm::new(n, r.clone(), Side::Primal))
            .collect::<Result<Vec<_>>>()?;
        Self::from_k(n, forms, tol)
    }

    pub fn from_kperp_rows(n: usize, rows: &[Vec<F>], tol: f64) -> Result<Self> {
        let forms = rows
            .iter()
            .map(|r| TwoForm::new(n, r.clone(), Side::Dual))
            .collect::<Result<Vec<_>>>()?;
        Self::from_kperp(n, forms, tol)
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn dim_k(&self) -> usize {
        self.k_basis.len()
    }
    pub fn dim_kperp(&self) -> usize {
        self.kperp_basis.len()
    }
    pub fn k_basis(&self) -> &[TwoForm<F>] {
        &self.k_basis
    }
    pub fn kperp_basis(&self) -> &[TwoForm<F>] {
        &self.kperp_basis
    }

    /// Rows of `K` as a `dim K × C(n,2)` matrix.
    pub fn k_matrix(&self) -> Matrix<F> {
        rows_matrix(self.n, &self.k_basis)
    }

    /// Rows of `K⊥` as a `dim K⊥ × C(n,2)` matrix.
    pub fn kperp_matrix(&self) -> Matrix<F> {
        rows_matrix(self.n, &self.kperp_basis)
    }

    /// The pair `(V∨, K⊥)`: the roles of `K` and `K⊥` are exchanged and both
    /// bases are relabelled to the opposite side. An involution.
    pub fn dual(&self) -> Self {
        PairVK {
            n: self.n,
            k_basis: self.kperp_basis.iter().map(|f| f.clone().with_side(Side::Primal)).collect(),
            kperp_basis: self.k_basis.iter().map(|f| f.clone().with_side(Side::Dual)).collect(),
        }
    }

    pub fn to_complex(&self) -> PairVK<Complex64> {
        PairVK {
            n: self.n,
            k_basis: self.k_basis.iter().map(TwoForm::to_complex).collect(),
            kperp_basis: self.kperp_basis.iter().map(TwoForm::to_complex).collect(),
        }
    }
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Dimension(format!("need n >= 2, got {n}")));
    }
    Ok(())
}

fn rows_matrix<F: Field>(n: usize, forms: &[TwoForm<F>]) -> Matrix<F> {
    let rows: Vec<Vec<F>> = forms.iter().map(|f| f.coords().to_vec()).collect();
    Matrix::from_rows(binomial(n, 2), &rows).expect("forms have C(n,2) coordinates")
}
