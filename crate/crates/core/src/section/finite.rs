use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::quadrics::{build_quadric_system, catalan_degree, expected_section_dim};
use crate::continuation::{solve_total_degree, MultiPoly, PolySystem, SolverConfig, Status};
use crate::error::{Error, Result};
use crate::exterior::{binomial, decompose, is_resonant, wedge_vectors, PairVK, Side, TwoForm};
use crate::numeric::{vec_norm, Field, Matrix};
use crate::rng::stream;

/// Tolerances for section computations.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SectionConfig {
    pub solver: SolverConfig,
    /// Scaled residual every point must reach on all `C(n,4)` quadrics.
    pub residual_tol: f64,
    /// Relative singular-value cutoff for floating rank decisions.
    pub rank_tol: f64,
    /// Square-down attempts (fresh chart, combination and γ each time) whose
    /// solutions are pooled while fewer than the expected count are found.
    pub attempts: usize,
}

impl Default for SectionConfig {
    fn default() -> Self {
        SectionConfig { solver: SolverConfig::default(), residual_tol: 1e-8, rank_tol: 1e-8, attempts: 3 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SectionPoint {
    /// Coordinates in the `K⊥` basis, largest-modulus entry equal to 1.
    pub t: Vec<Complex64>,
    pub omega: Vec<Complex64>,
    pub a: Vec<Complex64>,
    pub b: Vec<Complex64>,
    pub full_residual: f64,
    pub transversal: bool,
    pub tangent_rank: usize,
    /// Raised when the solver saw a multiple root here.
    pub multiplicity_flag: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Transversality {
    pub transversal: bool,
    pub rank: usize,
    pub expected_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SectionReport {
    pub n: usize,
    pub dim_k: usize,
    pub dim_kperp: usize,
    pub expected_count: u64,
    pub solutions: Vec<SectionPoint>,
    pub paths_run: usize,
    pub paths_diverged: usize,
    pub paths_max_steps: usize,
    pub paths_cluster_suspect: usize,
    pub attempts_used: usize,
    pub all_transversal: bool,
    pub lines_pairwise_disjoint: bool,
    /// Entry `(i, j)` is true when lines `i` and `j` are disjoint.
    pub disjointness: Vec<Vec<bool>>,
    pub count_deficit: bool,
    pub cluster_flag: bool,
    pub rank_deficit: bool,
}

impl SectionReport {
    /// Any of the three degeneracy signals.
    pub fn degenerate(&self) -> bool {
        self.count_deficit || self.cluster_flag || self.rank_deficit
    }

    /// Exactly the expected number of points, all simple and transversal.
    pub fn is_transversal(&self) -> bool {
        !self.degenerate() && self.solutions.len() as u64 == self.expected_count
    }
}

/// Unit vector with the same direction.
fn unit<F: Field>(v: &[F]) -> Vec<F> {
    let s = F::from_f64(vec_norm(v));
    v.iter().map(|x| x.clone() / s.clone()).collect()
}

/// Rank test of `T_ω Gr₂ + K⊥` against `Λ²`: stacks `a ∧ e_j`, `b ∧ e_j` and
/// the rows of `K⊥`. Transversal iff the rank is `C(n,2)`.
///
/// Requires `a ∧ b ∈ K⊥` (exactly, or to `tol` relative in floating mode).
pub fn transversality_at<F: Field>(a: &[F], b: &[F], pair: &PairVK<F>, tol: f64) -> Result<Transversality> {
    F::check_tol(tol)?;
    let n = pair.n();
    let dim = binomial(n, 2);
    let omega = wedge_vectors(a, b)?;
    if omega.is_zero() {
        return Err(Error::ZeroInput("a ∧ b"));
    }
    let kp: Vec<Vec<F>> = pair.kperp_basis().iter().map(|f| unit(f.coords())).collect();
    let base = Matrix::from_rows(dim, &kp)?;
    let mut with_omega = kp.clone();
    with_omega.push(unit(omega.coords()));
    if Matrix::from_rows(dim, &with_omega)?.rank(tol)? > base.rank(tol)? {
        return Err(Error::Precondition("a ∧ b is not in K⊥".into()));
    }
    let (ua, ub) = if tol == 0.0 { (a.to_vec(), b.to_vec()) } else { (unit(a), unit(b)) };
    let mut rows = kp;
    for v in [&ua, &ub] {
        for j in 0..n {
            let mut e = vec![F::zero(); n];
            e[j] = F::one();
            rows.push(wedge_vectors(v, &e)?.into_coords());
        }
    }
    let rank = Matrix::from_rows(dim, &rows)?.rank(tol)?;
    Ok(Transversality { transversal: rank == dim, rank, expected_rank: dim })
}

/// Lines `ℙ⟨a, b⟩` are pairwise disjoint iff every stacked `4 × n` matrix
/// has rank 4. Returns the disjointness matrix (diagonal false) and whether
/// all off-diagonal entries hold.
pub fn lines_and_disjointness<F: Field>(lines: &[(Vec<F>, Vec<F>)], tol: f64) -> Result<(Vec<Vec<bool>>, bool)> {
    let k = lines.len();
    let mut matrix = vec![vec![false; k]; k];
    let mut all = true;
    for i in 0..k {
        for j in i + 1..k {
            let n = lines[i].0.len();
            let rows = [
                unit(&lines[i].0),
                unit(&lines[i].1),
                unit(&lines[j].0),
                unit(&lines[j].1),
            ];
            let disjoint = Matrix::from_rows(n, &rows)?.rank(tol)? == 4;
            matrix[i][j] = disjoint;
            matrix[j][i] = disjoint;
            all &= disjoint;
        }
    }
    Ok((matrix, all))
}

/// Rescales so the largest-modulus coordinate is 1.
fn projective_normalize(t: &[Complex64]) -> Vec<Complex64> {
    let pivot = t
        .iter()
        .copied()
        .max_by(|x, y| x.norm().total_cmp(&y.norm()))
        .unwrap_or(Complex64::new(1.0, 0.0));
    t.iter().map(|x| x / pivot).collect()
}

/// Sine of the angle between two complex lines.
fn projective_distance(x: &[Complex64], y: &[Complex64]) -> f64 {
    let ip: Complex64 = x.iter().zip(y).map(|(u, v)| u.conj() * v).sum();
    let c = ip.norm() / (vec_norm(x) * vec_norm(y));
    (1.0 - (c * c).min(1.0)).sqrt()
}

fn full_residual(quadrics: &[MultiPoly], t: &[Complex64]) -> f64 {
    quadrics
        .iter()
        .map(|q| q.eval(t).norm() / (1.0 + q.term_scale(t)))
        .fold(0.0, f64::max)
}

/// A candidate point before certification.
struct Candidate {
    t: Vec<Complex64>,
    residual: f64,
    cluster: bool,
}

/// One square-down attempt: a random affine chart `Σ c_i t_i = 1` and
/// `m − 1` random combinations of the quadrics.
fn square_down_attempt(
    quadrics: &[MultiPoly],
    m: usize,
    config: &SectionConfig,
    attempt: usize,
) -> Result<(Vec<Candidate>, crate::continuation::PathCounts)> {
    let mut rng = stream(config.solver.seed, 1 + attempt as u64);
    let mut draw = || Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
    let mut polys = Vec::with_capacity(m);
    let mut chart: Vec<(Vec<u32>, Complex64)> = (0..m)
        .map(|i| {
            let mut e = vec![0; m];
            e[i] = 1;
            (e, draw())
        })
        .collect();
    chart.push((vec![0; m], Complex64::new(-1.0, 0.0)));
    polys.push(MultiPoly::new(m, chart)?);
    for _ in 0..m - 1 {
        let terms = quadrics
            .iter()
            .flat_map(|q| {
                let w = draw();
                q.terms().iter().map(move |(e, c)| (e.clone(), c * w)).collect::<Vec<_>>()
            })
            .collect::<Vec<_>>();
        polys.push(MultiPoly::new(m, terms)?);
    }
    let system = PolySystem::new(m, polys)?;
    let solver = SolverConfig { seed: config.solver.seed.wrapping_add(attempt as u64), ..config.solver.clone() };
    let outcome = solve_total_degree(&system, &solver)?;
    let candidates = outcome
        .solutions
        .iter()
        .map(|s| {
            let t = projective_normalize(&s.point);
            Candidate {
                residual: full_residual(quadrics, &t),
                t,
                cluster: s.status == Status::ClusterSuspect || s.multiplicity > 1,
            }
        })
        .filter(|c| c.residual < config.residual_tol)
        .collect();
    Ok((candidates, outcome.counts()))
}

/// Solves `Gr₂(V∨) ∩ ℙK⊥` when it is expected to be finite and certifies
/// every point found.
pub fn solve_finite_section<F: Field>(pair: &PairVK<F>, config: &SectionConfig) -> Result<SectionReport> {
    let d = expected_section_dim(pair);
    if d != 0 {
        return Err(Error::Precondition(format!(
            "expected section dimension is {d}, not 0 (n={}, dim K⊥={})",
            pair.n(),
            pair.dim_kperp()
        )));
    }
    let n = pair.n();
    let m = pair.dim_kperp();
    let expected_count = catalan_degree(n)?;
    let quadrics = build_quadric_system(pair)?;
    if quadrics.iter().all(|q| q.terms().is_empty()) {
        return Err(Error::Precondition("ℙK⊥ lies inside the Grassmannian; the section is not finite".into()));
    }
    let complex_pair = pair.to_complex();

    let mut pool: Vec<Candidate> = Vec::new();
    let mut report_counts = crate::continuation::PathCounts::default();
    let mut attempts_used = 0;
    for attempt in 0..config.attempts.max(1) {
        attempts_used += 1;
        let (found, counts) = square_down_attempt(&quadrics, m, config, attempt)?;
        report_counts.total += counts.total;
        report_counts.diverged += counts.diverged;
        report_counts.max_steps += counts.max_steps;
        report_counts.cluster_suspect += counts.cluster_suspect;
        for c in found {
            match pool
                .iter_mut()
                .find(|p| projective_distance(&p.t, &c.t) <= config.solver.dedup_tol)
            {
                Some(p) => p.cluster |= c.cluster,
                None => pool.push(c),
            }
        }
        if pool.len() as u64 >= expected_count {
            break;
        }
    }

    let mut solutions = Vec::with_capacity(pool.len());
    for c in pool {
        let omega = TwoForm::combination(n, Side::Dual, &c.t, complex_pair.kperp_basis())?;
        let (a, b) = decompose(&omega, 1e-6)?;
        let tr = transversality_at(&a, &b, &complex_pair, config.rank_tol)?;
        solutions.push(SectionPoint {
            t: c.t,
            omega: omega.into_coords(),
            a,
            b,
            full_residual: c.residual,
            transversal: tr.transversal,
            tangent_rank: tr.rank,
            multiplicity_flag: c.cluster,
        });
    }
    let lines: Vec<(Vec<Complex64>, Vec<Complex64>)> =
        solutions.iter().map(|s| (s.a.clone(), s.b.clone())).collect();
    let (disjointness, lines_pairwise_disjoint) = lines_and_disjointness(&lines, config.rank_tol)?;
    let all_transversal = solutions.iter().all(|s| s.transversal);
    Ok(SectionReport {
        n,
        dim_k: pair.dim_k(),
        dim_kperp: m,
        expected_count,
        paths_run: report_counts.total,
        paths_diverged: report_counts.diverged,
        paths_max_steps: report_counts.max_steps,
        paths_cluster_suspect: report_counts.cluster_suspect,
        attempts_used,
        all_transversal,
        lines_pairwise_disjoint,
        disjointness,
        count_deficit: (solutions.len() as u64) < expected_count,
        cluster_flag: solutions.iter().any(|s| s.multiplicity_flag),
        rank_deficit: !all_transversal,
        solutions,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub samples: usize,
    pub resonant_samples: usize,
    /// Samples whose resonance matrix has rank exactly `n − 2` with a witness
    /// inside the sampled line.
    pub witness_matches_line: usize,
    pub off_line_samples: usize,
    pub off_line_nonresonant: usize,
}

impl CrossCheck {
    pub fn passed(&self) -> bool {
        self.resonant_samples == self.samples
            && self.witness_matches_line == self.samples
            && self.off_line_nonresonant == self.off_line_samples
    }
}

/// Samples random points on each line, checks them with the pointwise rank
/// test, and checks that a small random perturbation off the line is not
/// resonant.
pub fn membership_cross_check<F: Field>(
    solutions: &[SectionPoint],
    pair: &PairVK<F>,
    samples_per_line: usize,
    rank_tol: f64,
    seed: u64,
) -> Result<CrossCheck> {
    let p = pair.to_complex();
    let n = p.n();
    let mut rng = stream(seed, 0);
    let mut draw = |s: f64| Complex64::new(rng.random_range(-s..s), rng.random_range(-s..s));
    let mut out = CrossCheck {
        samples: 0,
        resonant_samples: 0,
        witness_matches_line: 0,
        off_line_samples: 0,
        off_line_nonresonant: 0,
    };
    for s in solutions {
        for _ in 0..samples_per_line {
            let (x, y) = (draw(1.0), draw(1.0));
            let point: Vec<Complex64> = s.a.iter().zip(&s.b).map(|(u, v)| u * x + v * y).collect();
            out.samples += 1;
            let m = is_resonant(&point, &p, rank_tol)?;
            if m.resonant {
                out.resonant_samples += 1;
                if let Some(w) = &m.witness {
                    let span = Matrix::from_rows(n, &[s.a.clone(), s.b.clone(), w.clone()])?;
                    if m.rank + 2 == n && span.rank(rank_tol)? == 2 {
                        out.witness_matches_line += 1;
                    }
                }
            }
            let off: Vec<Complex64> = point.iter().map(|v| v + draw(1e-3)).collect();
            out.off_line_samples += 1;
            if !is_resonant(&off, &p, rank_tol)?.resonant {
                out.off_line_nonresonant += 1;
            }
        }
    }
    Ok(out)
}
