use serde::{Deserialize, Serialize};

use super::forms::{dot, Side, TwoForm};
use super::pair::PairVK;
use crate::error::{Error, Result};
use crate::numeric::{format_rational, is_zero_vec, vec_norm, Field, Matrix, Rational};
use crate::rng::{random_rational_vec, stream, RATIONAL_BOUND};

/// Outcome of the pointwise membership test.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Membership<W> {
    pub resonant: bool,
    /// Rank of the resonance matrix; at most `n − 1`.
    pub rank: usize,
    /// A vector `b` independent of `a` with `a ∧ b ∈ K⊥`, when resonant.
    pub witness: Option<W>,
}

/// The `dim K × n` matrix with entry `(r, j) = ⟨K_r, a ∧ e*_j⟩`. Its kernel is
/// `{b : a ∧ b ∈ K⊥}` and always contains `a`.
pub fn resonance_matrix<F: Field>(a: &[F], pair: &PairVK<F>) -> Result<Matrix<F>> {
    let n = pair.n();
    if a.len() != n {
        return Err(Error::Dimension(format!("point of length {} for n={n}", a.len())));
    }
    if is_zero_vec(a) {
        return Err(Error::ZeroInput("point a"));
    }
    let columns: Vec<TwoForm<F>> = (0..n)
        .map(|j| {
            let mut e = vec![F::zero(); n];
            e[j] = F::one();
            TwoForm::wedge(a, &e, Side::Dual)
        })
        .collect::<Result<_>>()?;
    let rows: Vec<Vec<F>> = pair
        .k_basis()
        .iter()
        .map(|k| columns.iter().map(|c| dot(k.coords(), c.coords())).collect())
        .collect();
    Matrix::from_rows(n, &rows)
}

/// `[a]` is resonant iff the resonance matrix has a kernel of dimension at
/// least 2, i.e. rank at most `n − 2`.
pub fn is_resonant<F: Field>(a: &[F], pair: &PairVK<F>, tol: f64) -> Result<Membership<Vec<F>>> {
    let m = resonance_matrix(a, pair)?;
    let n = pair.n();
    let rank = m.rank(tol)?;
    if rank + 2 > n {
        return Ok(Membership { resonant: false, rank, witness: None });
    }
    let kernel = m.kernel_basis(tol)?.columns();
    let witness = if tol == 0.0 {
        kernel.into_iter().find(|v| {
            Matrix::from_rows(n, &[a.to_vec(), v.clone()])
                .and_then(|s| s.rank(0.0))
                .map(|r| r == 2)
                .unwrap_or(false)
        })
    } else {
        let na = vec_norm(a);
        let unit: Vec<F> = a.iter().map(|x| x.clone() / F::from_f64(na)).collect();
        kernel
            .iter()
            .map(|v| {
                let proj = unit
                    .iter()
                    .zip(v)
                    .fold(F::zero(), |acc, (x, y)| acc + x.conj() * y.clone());
                v.iter()
                    .zip(&unit)
                    .map(|(y, x)| y.clone() - proj.clone() * x.clone())
                    .collect::<Vec<F>>()
            })
            .max_by(|x, y| vec_norm(x).total_cmp(&vec_norm(y)))
            .map(|v| {
                let s = F::from_f64(vec_norm(&v));
                v.into_iter().map(|x| x / s.clone()).collect()
            })
    };
    Ok(Membership { resonant: true, rank, witness })
}

/// The path-graph pair: `K` spanned by `e_i ∧ e_{i+1}`, `i = 1, …, n−1`.
///
/// Its resonance is the union of the interior coordinate hyperplanes
/// `{a_i = 0}`, `2 ≤ i ≤ n−1` (1-based).
pub fn raag_path_pair<F: Field>(n: usize) -> Result<PairVK<F>> {
    if n < 4 {
        return Err(Error::Precondition(format!("path-graph pair needs n >= 4, got {n}")));
    }
    let k = (0..n - 1).map(|i| TwoForm::basis(n, i, i + 1, Side::Primal)).collect();
    PairVK::from_k(n, k, F::DEFAULT_TOL)
}

/// Membership predicted by the hyperplane description of the path-graph
/// resonance: some interior coordinate vanishes.
pub fn raag_hyperplane_membership<F: Field>(a: &[F]) -> bool {
    a.len() >= 3 && a[1..a.len() - 1].iter().any(|x| x.is_zero())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RaagReport {
    pub n: usize,
    /// 0-based coordinates `i` whose hyperplanes `{a_i = 0}` make up the
    /// resonance.
    pub hyperplane_coordinates: Vec<usize>,
    pub points: usize,
    pub resonant: usize,
    pub non_resonant: usize,
    /// Points where the rank test and the hyperplane description disagree.
    pub mismatches: Vec<Vec<String>>,
}

impl RaagReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.non_resonant > 0
    }
}

/// Compares the exact rank test on the path-graph pair with the hyperplane
/// description at `points` random rational points (stream 0 of `seed`).
pub fn raag_classification(n: usize, points: usize, seed: u64) -> Result<RaagReport> {
    let pair = raag_path_pair::<Rational>(n)?;
    let mut rng = stream(seed, 0);
    let mut report = RaagReport {
        n,
        hyperplane_coordinates: (1..n - 1).collect(),
        points,
        resonant: 0,
        non_resonant: 0,
        mismatches: Vec::new(),
    };
    for _ in 0..points {
        let a = random_rational_vec(&mut rng, n, RATIONAL_BOUND);
        let rank_test = is_resonant(&a, &pair, 0.0)?.resonant;
        if rank_test {
            report.resonant += 1;
        } else {
            report.non_resonant += 1;
        }
        if rank_test != raag_hyperplane_membership(&a) {
            report.mismatches.push(a.iter().map(format_rational).collect());
        }
    }
    Ok(report)
}
