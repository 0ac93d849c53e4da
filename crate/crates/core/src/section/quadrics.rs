use num_complex::Complex64;

use crate::continuation::MultiPoly;
use crate::error::{Error, Result};
use crate::exterior::{binomial, wedge_two_forms, PairVK};
use crate::numeric::Field;

/// Degree of `Gr₂` of an `n`-dimensional space: the Catalan number
/// `(2m)! / (m! (m+1)!)` with `m = n − 2`.
pub fn catalan_degree(n: usize) -> Result<u64> {
    if n < 4 {
        return Err(Error::Precondition(format!("catalan_degree needs n >= 4, got {n}")));
    }
    let m = (n - 2) as u64;
    // C_m = binom(2m, m) / (m + 1), accumulated exactly
    let mut c: u64 = 1;
    for i in 0..m {
        c = c * (2 * m - i) / (i + 1);
    }
    Ok(c / (m + 1))
}

/// Expected dimension of `Gr₂(V∨) ∩ ℙK⊥`: `(m − 1) + 2(n − 2) − (C(n,2) − 1)`
/// with `m = dim K⊥`. Negative means the section is expected to be empty.
pub fn expected_section_dim<F: Field>(pair: &PairVK<F>) -> i64 {
    let n = pair.n() as i64;
    pair.dim_kperp() as i64 + 2 * n - 4 - binomial(pair.n(), 2) as i64
}

/// One quadric in `t ∈ ℂ^m` per coordinate of `Λ⁴`: the coordinates of
/// `ω ∧ ω` for `ω = Σ t_i k_i`, with `k_i` the rows of `K⊥`. The cross term
/// `t_i t_j` (`i < j`) carries `2 · k_i ∧ k_j`.
pub fn build_quadric_system<F: Field>(pair: &PairVK<F>) -> Result<Vec<MultiPoly>> {
    let kp = pair.kperp_basis();
    let m = kp.len();
    if m < 2 {
        return Err(Error::Precondition(format!("quadric system needs dim K⊥ >= 2, got {m}")));
    }
    let quads = binomial(pair.n(), 4);
    let mut terms: Vec<Vec<(Vec<u32>, Complex64)>> = vec![Vec::new(); quads];
    for i in 0..m {
        for j in i..m {
            let w = wedge_two_forms(&kp[i], &kp[j])?;
            let factor = if i == j { 1.0 } else { 2.0 };
            let mut exp = vec![0u32; m];
            exp[i] += 1;
            exp[j] += 1;
            for (q, c) in w.coords().iter().enumerate() {
                if !c.is_zero() {
                    terms[q].push((exp.clone(), c.to_complex() * factor));
                }
            }
        }
    }
    terms.into_iter().map(|t| MultiPoly::new(m, t)).collect()
}
