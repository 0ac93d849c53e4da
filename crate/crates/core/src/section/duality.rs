use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::finite::{solve_finite_section, transversality_at, SectionConfig, SectionReport, Transversality};
use super::quadrics::expected_section_dim;
use crate::error::{Error, Result};
use crate::exterior::{binomial, wedge_vectors, PairVK, Side, TwoForm};
use crate::numeric::{Field, Matrix, Rational};
use crate::rng::{random_rational, random_rational_vec, stream, RATIONAL_BOUND};

/// The pair with `K` and `K⊥` exchanged, so that the section machinery runs
/// on `Gr₂(V) ∩ ℙK`. An involution.
pub fn dual_pair<F: Field>(pair: &PairVK<F>) -> PairVK<F> {
    pair.dual()
}

/// Cuts `ℙK⊥` with `d` random rational hyperplanes, `d` the expected
/// section dimension, leaving an expected-finite section.
pub fn slice_to_finite<F: Field, R: Rng + ?Sized>(pair: &PairVK<F>, rng: &mut R) -> Result<PairVK<F>> {
    let d = expected_section_dim(pair);
    if d <= 0 {
        return Err(Error::Precondition(format!("nothing to slice: expected section dimension is {d}")));
    }
    let d = d as usize;
    let m = pair.dim_kperp();
    loop {
        let conditions: Vec<Vec<F>> = (0..d)
            .map(|_| {
                (0..m)
                    .map(|_| F::from_rational(&random_rational(rng, RATIONAL_BOUND)))
                    .collect()
            })
            .collect();
        let c = Matrix::from_rows(m, &conditions)?;
        if c.rank(F::DEFAULT_TOL)? < d {
            continue;
        }
        let kept = c.kernel_basis(F::DEFAULT_TOL)?.columns();
        let rows = kept
            .iter()
            .map(|w| TwoForm::combination(pair.n(), Side::Dual, w, pair.kperp_basis()))
            .collect::<Result<Vec<_>>>()?;
        return PairVK::from_kperp(pair.n(), rows, F::DEFAULT_TOL);
    }
}

/// Random `K` of the given dimension with rational entries in `[-10, 10]`.
pub fn random_rational_pair<R: Rng + ?Sized>(n: usize, dim_k: usize, rng: &mut R) -> Result<PairVK<Rational>> {
    let dim = binomial(n, 2);
    if dim_k > dim {
        return Err(Error::Precondition(format!("dim K = {dim_k} exceeds C({n},2) = {dim}")));
    }
    loop {
        let rows: Vec<Vec<Rational>> = (0..dim_k).map(|_| random_rational_vec(rng, dim, RATIONAL_BOUND)).collect();
        match PairVK::from_k_rows(n, &rows, 0.0) {
            Err(Error::DependentRows) => continue,
            other => return other,
        }
    }
}

/// A pair whose `K` contains a decomposable `μ₀ = c ∧ d` together with two
/// further directions `c ∧ u_k + d ∧ v_k` of the tangent space to `Gr₂(V)` at
/// `μ₀`; the remaining rows are random. This makes `ℙK ∩ Gr₂(V)` fail to be
/// transversal at `[μ₀]` whenever the dimension count is tight.
#[derive(Clone, Debug, PartialEq)]
pub struct DegeneratePair {
    pub pair: PairVK<Rational>,
    pub c: Vec<Rational>,
    pub d: Vec<Rational>,
}

pub fn degenerate_pair<R: Rng + ?Sized>(n: usize, dim_k: usize, rng: &mut R) -> Result<DegeneratePair> {
    let dim = binomial(n, 2);
    if !(3..=dim).contains(&dim_k) {
        return Err(Error::Precondition(format!("degenerate construction needs 3 <= dim K <= {dim}")));
    }
    loop {
        let mut v = || random_rational_vec(rng, n, RATIONAL_BOUND);
        let (c, d) = (v(), v());
        let mu0 = wedge_vectors(&c, &d)?;
        if mu0.is_zero() {
            continue;
        }
        let mut rows = vec![mu0.into_coords()];
        for _ in 0..2 {
            let (u, w) = (v(), v());
            let tangent = wedge_vectors(&c, &u)?.add(&wedge_vectors(&d, &w)?)?;
            rows.push(tangent.into_coords());
        }
        for _ in 3..dim_k {
            rows.push(random_rational_vec(rng, dim, RATIONAL_BOUND));
        }
        match PairVK::from_k_rows(n, &rows, 0.0) {
            Ok(pair) => return Ok(DegeneratePair { pair, c, d }),
            Err(Error::DependentRows) => continue,
            Err(e) => return Err(e),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualityTrial {
    pub trial: usize,
    /// The side whose section is finite: `"K-perp"` (on `Gr₂(V∨)`) or `"K"`.
    pub finite_side: String,
    pub finite: SectionReport,
    pub finite_transversal: bool,
    /// Section of the sliced positive-dimensional side.
    pub sliced: Option<SectionReport>,
    pub sliced_dimension: i64,
    /// Transversality of the unsliced side at each sliced point.
    pub dual_checks: Vec<Transversality>,
    /// Transversal at every computed point (and the expected count found).
    pub dual_transversal: bool,
    pub agree: bool,
    /// Degenerate mode: rank of the tangent test at `μ₀` on the side that
    /// contains it.
    pub known_bad_point: Option<Transversality>,
    pub finite_flagged_degenerate: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualityReport {
    pub n: usize,
    pub dim_k: usize,
    pub degenerate_mode: bool,
    pub trials: Vec<DualityTrial>,
    pub agreements: usize,
    pub flagged_degenerate: usize,
}

/// Tests both sides of the duality on random (or deliberately degenerate)
/// rational pairs. Trials run in parallel, each on its own random stream.
pub fn duality_experiment(
    n: usize,
    dim_k: usize,
    trials: usize,
    degenerate: bool,
    seed: u64,
    config: &SectionConfig,
) -> Result<DualityReport> {
    if n < 4 {
        return Err(Error::Precondition(format!("duality experiment needs n >= 4, got {n}")));
    }
    let rows = (0..trials)
        .into_par_iter()
        .map(|trial| duality_trial(n, dim_k, trial, degenerate, seed, config))
        .collect::<Result<Vec<_>>>()?;
    Ok(DualityReport {
        n,
        dim_k,
        degenerate_mode: degenerate,
        agreements: rows.iter().filter(|r| r.agree).count(),
        flagged_degenerate: rows.iter().filter(|r| r.finite_flagged_degenerate).count(),
        trials: rows,
    })
}

fn duality_trial(
    n: usize,
    dim_k: usize,
    trial: usize,
    degenerate: bool,
    seed: u64,
    config: &SectionConfig,
) -> Result<DualityTrial> {
    let mut rng = stream(seed, trial as u64);
    let (pair, bad) = if degenerate {
        let dp = degenerate_pair(n, dim_k, &mut rng)?;
        (dp.pair, Some((dp.c, dp.d)))
    } else {
        (random_rational_pair(n, dim_k, &mut rng)?, None)
    };
    let dual = dual_pair(&pair);
    let (finite_side, finite_pair, positive_pair) = if expected_section_dim(&pair) == 0 {
        ("K-perp", &pair, &dual)
    } else if expected_section_dim(&dual) == 0 {
        ("K", &dual, &pair)
    } else {
        return Err(Error::Precondition(format!(
            "neither side is expected finite for n={n}, dim K={dim_k}"
        )));
    };
    let trial_config = SectionConfig {
        solver: crate::continuation::SolverConfig {
            seed: seed ^ (trial as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15),
            ..config.solver.clone()
        },
        ..config.clone()
    };
    let finite = solve_finite_section(finite_pair, &trial_config)?;
    let finite_transversal = finite.is_transversal();

    // μ₀ lies in K, so its tangent test runs on the pair whose "K⊥" is K.
    let known_bad_point = match &bad {
        Some((c, d)) => Some(transversality_at(c, d, &dual, 0.0)?),
        None => None,
    };

    let sliced_dimension = expected_section_dim(positive_pair);
    let (sliced, dual_checks) = if sliced_dimension > 0 && !degenerate {
        let cut = slice_to_finite(positive_pair, &mut rng)?;
        let report = solve_finite_section(&cut, &trial_config)?;
        let cp = positive_pair.to_complex();
        let checks = report
            .solutions
            .iter()
            .map(|s| transversality_at(&s.a, &s.b, &cp, config.rank_tol))
            .collect::<Result<Vec<_>>>()?;
        (Some(report), checks)
    } else {
        (None, Vec::new())
    };
    let dual_transversal = match &sliced {
        Some(r) => {
            r.solutions.len() as u64 == r.expected_count
                && !r.cluster_flag
                && dual_checks.iter().all(|c| c.transversal)
        }
        None => false,
    };
    Ok(DualityTrial {
        trial,
        finite_side: finite_side.into(),
        finite_flagged_degenerate: finite.degenerate(),
        finite,
        finite_transversal,
        sliced,
        sliced_dimension,
        dual_checks,
        dual_transversal,
        agree: !degenerate && finite_transversal == dual_transversal,
        known_bad_point,
    })
}
