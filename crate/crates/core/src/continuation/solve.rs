use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::poly::PolySystem;
use crate::error::{Error, Result};
use crate::numeric::{lu_solve, singular_values, vec_norm, Matrix};
use crate::rng::stream;

/// Solver tolerances and limits.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Relative Newton-step tolerance for the corrector along a path.
    pub path_tol: f64,
    /// Scaled residual an endpoint must reach on the target system.
    pub final_tol: f64,
    /// Relative distance below which two endpoints are the same solution.
    pub dedup_tol: f64,
    /// Step budget per path.
    pub max_steps: usize,
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { path_tol: 1e-8, final_tol: 1e-11, dedup_tol: 1e-6, max_steps: 20_000, seed: 0 }
    }
}

const INITIAL_STEP: f64 = 0.05;
const MAX_STEP: f64 = 0.1;
const MIN_STEP: f64 = 1e-7;
const GROW: f64 = 1.5;
const GROW_AFTER: usize = 4;
const CORRECTOR_ITERS: usize = 3;
const DIVERGENCE_NORM: f64 = 1e8;
const REFINE_ITERS: usize = 30;
const SINGULAR_RATIO: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Converged,
    Diverged,
    MaxSteps,
    ClusterSuspect,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrackedSolution {
    pub point: Vec<Complex64>,
    /// Scaled residual on the target system.
    pub residual: f64,
    pub newton_iterations: usize,
    pub status: Status,
    /// Number of endpoints merged into this solution by deduplication.
    pub multiplicity: usize,
}

impl TrackedSolution {
    pub fn is_finite_solution(&self) -> bool {
        matches!(self.status, Status::Converged | Status::ClusterSuspect)
    }
}

/// Everything a total-degree run produced.
#[derive(Clone, Debug, PartialEq)]
pub struct SolveOutcome {
    /// Deduplicated finite solutions, in order of first appearance.
    pub solutions: Vec<TrackedSolution>,
    /// One entry per path, in start-solution order.
    pub endpoints: Vec<TrackedSolution>,
    pub gamma: Complex64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathCounts {
    pub total: usize,
    pub converged: usize,
    pub diverged: usize,
    pub max_steps: usize,
    pub cluster_suspect: usize,
}

impl SolveOutcome {
    pub fn counts(&self) -> PathCounts {
        let mut c = PathCounts { total: self.endpoints.len(), ..Default::default() };
        for e in &self.endpoints {
            match e.status {
                Status::Converged => c.converged += 1,
                Status::Diverged => c.diverged += 1,
                Status::MaxSteps => c.max_steps += 1,
                Status::ClusterSuspect => c.cluster_suspect += 1,
            }
        }
        c
    }
}

/// Newton's method on a square system.
///
/// Stops once the scaled residual is below `tol` and the last correction is
/// below `tol · (1 + ‖z‖)`, or after `max_iter` corrections. The result is
/// flagged cluster-suspect when the Jacobian is singular along the way or at
/// the limit, or when the corrections shrink only linearly (the signature of
/// a multiple root).
pub fn newton_refine(sys: &PolySystem, z0: &[Complex64], max_iter: usize, tol: f64) -> Result<TrackedSolution> {
    if !sys.is_square() {
        return Err(Error::Precondition("Newton refinement needs a square system".into()));
    }
    let mut z = z0.to_vec();
    let mut steps: Vec<f64> = Vec::new();
    let mut singular = false;
    loop {
        let (f, jac) = sys.evaluate_with_jacobian(&z)?;
        let residual = sys.scaled_residual(&z)?;
        let scale = 1.0 + vec_norm(&z);
        let settled = steps.last().is_none_or(|&s| s <= tol * scale);
        if (residual < tol && settled) || steps.len() >= max_iter || !residual.is_finite() {
            break;
        }
        let rhs: Vec<Complex64> = f.iter().map(|v| -v).collect();
        let Some(dz) = lu_solve(&jac, &rhs) else {
            singular = true;
            break;
        };
        for (zi, d) in z.iter_mut().zip(&dz) {
            *zi += d;
        }
        steps.push(vec_norm(&dz));
    }
    let residual = sys.scaled_residual(&z)?;
    let status = if !residual.is_finite() || vec_norm(&z) > DIVERGENCE_NORM {
        Status::Diverged
    } else if singular || linear_convergence(&steps, &z) || near_singular(&sys.jacobian(&z)?) {
        Status::ClusterSuspect
    } else if residual < tol {
        Status::Converged
    } else {
        Status::MaxSteps
    };
    Ok(TrackedSolution { point: z, residual, newton_iterations: steps.len(), status, multiplicity: 1 })
}

/// The last two step ratios sit well above the quadratic regime while the
/// steps themselves are still above rounding noise.
fn linear_convergence(steps: &[f64], z: &[Complex64]) -> bool {
    let noise = 1e-13 * (1.0 + vec_norm(z));
    let live: Vec<f64> = steps.iter().copied().filter(|&s| s > noise).collect();
    if live.len() < 3 {
        return false;
    }
    let k = live.len();
    let r1 = live[k - 1] / live[k - 2];
    let r2 = live[k - 2] / live[k - 3];
    (0.2..1.0).contains(&r1) && (0.2..1.0).contains(&r2)
}

fn near_singular(jac: &Matrix<Complex64>) -> bool {
    let s = singular_values(jac);
    match (s.first(), s.last()) {
        (Some(&top), Some(&bottom)) => bottom < SINGULAR_RATIO * top.max(1.0),
        _ => false,
    }
}

/// The total-degree homotopy `H(z, t) = (1 − t) γ g(z) + t f(z)` with
/// `g_i = z_i^{d_i} − 1`.
struct Homotopy<'a> {
    target: &'a PolySystem,
    degrees: Vec<u32>,
    gamma: Complex64,
}

impl Homotopy<'_> {
    /// `(H, ∂H/∂z, ∂H/∂t)` at `(z, t)`.
    fn eval(&self, z: &[Complex64], t: f64) -> Result<(Vec<Complex64>, Matrix<Complex64>, Vec<Complex64>)> {
        let (f, jf) = self.target.evaluate_with_jacobian(z)?;
        let n = z.len();
        let s = 1.0 - t;
        let mut h = Vec::with_capacity(n);
        let mut ht = Vec::with_capacity(n);
        let mut jac = Matrix::zeros(n, n);
        for i in 0..n {
            let d = self.degrees[i];
            let g = z[i].powu(d) - 1.0;
            h.push(self.gamma * g * s + f[i] * t);
            ht.push(f[i] - self.gamma * g);
            for j in 0..n {
                jac[(i, j)] = jf[(i, j)] * t;
            }
            jac[(i, i)] += self.gamma * s * f64::from(d) * z[i].powu(d - 1);
        }
        Ok((h, jac, ht))
    }

    /// Up to three Newton corrections at fixed `t`; fails when a correction
    /// does not contract or the tolerance is not reached.
    fn correct(&self, z: &mut [Complex64], t: f64, tol: f64) -> Result<bool> {
        let mut prev = f64::INFINITY;
        for _ in 0..CORRECTOR_ITERS {
            let (h, jac, _) = self.eval(z, t)?;
            let rhs: Vec<Complex64> = h.iter().map(|v| -v).collect();
            let Some(dz) = lu_solve(&jac, &rhs) else {
                return Ok(false);
            };
            for (zi, d) in z.iter_mut().zip(&dz) {
                *zi += d;
            }
            let step = vec_norm(&dz);
            let scale = 1.0 + vec_norm(z);
            if step > 0.5 * prev || step > 0.1 * scale {
                return Ok(false);
            }
            if step <= tol * scale {
                return Ok(true);
            }
            prev = step;
        }
        Ok(false)
    }

    fn track(&self, start: Vec<Complex64>, config: &SolverConfig) -> Result<TrackedSolution> {
        let mut z = start;
        let mut t = 0.0;
        let mut h = INITIAL_STEP;
        let mut successes = 0;
        let mut steps = 0;
        let fail = |z: Vec<Complex64>, status| -> Result<TrackedSolution> {
            let residual = self.target.scaled_residual(&z)?;
            Ok(TrackedSolution { point: z, residual, newton_iterations: 0, status, multiplicity: 1 })
        };
        while t < 1.0 {
            if steps >= config.max_steps {
                return fail(z, Status::MaxSteps);
            }
            steps += 1;
            let dt = h.min(1.0 - t);
            let (_, jac, ht) = self.eval(&z, t)?;
            let rhs: Vec<Complex64> = ht.iter().map(|v| -v).collect();
            let mut accepted = false;
            if let Some(dz) = lu_solve(&jac, &rhs) {
                let mut trial: Vec<Complex64> = z.iter().zip(&dz).map(|(zi, d)| zi + d * dt).collect();
                let t1 = if dt >= 1.0 - t { 1.0 } else { t + dt };
                if self.correct(&mut trial, t1, config.path_tol)? {
                    z = trial;
                    t = t1;
                    accepted = true;
                }
            }
            if accepted {
                if vec_norm(&z) > DIVERGENCE_NORM {
                    return fail(z, Status::Diverged);
                }
                successes += 1;
                if successes >= GROW_AFTER {
                    h = (h * GROW).min(MAX_STEP);
                    successes = 0;
                }
            } else {
                h /= 2.0;
                successes = 0;
                if h < MIN_STEP {
                    return fail(z, Status::MaxSteps);
                }
            }
        }
        newton_refine(self.target, &z, REFINE_ITERS, config.final_tol)
    }
}

/// The `k`-th start solution: `z_i = exp(2πi · digit_i / d_i)` where the
/// digits are `k` in mixed radix `(d_1, …, d_N)`.
fn start_point(mut k: usize, degrees: &[u32]) -> Vec<Complex64> {
    degrees
        .iter()
        .map(|&d| {
            let digit = k % d as usize;
            k /= d as usize;
            Complex64::from_polar(1.0, TAU * digit as f64 / f64::from(d))
        })
        .collect()
}

/// Solves a square system by total-degree homotopy continuation.
///
/// Launches `∏ d_i` paths (in parallel; results are ordered by start index),
/// refines the endpoints on the target and deduplicates the finite ones.
pub fn solve_total_degree(sys: &PolySystem, config: &SolverConfig) -> Result<SolveOutcome> {
    if !sys.is_square() {
        return Err(Error::Precondition(format!(
            "total-degree homotopy needs a square system, got {} equations in {} unknowns",
            sys.len(),
            sys.vars()
        )));
    }
    let degrees = sys.degrees();
    if degrees.contains(&0) {
        return Err(Error::Precondition("every equation needs degree at least 1".into()));
    }
    let paths: usize = degrees.iter().map(|&d| d as usize).product();
    let mut rng = stream(config.seed, u64::MAX);
    let gamma = Complex64::from_polar(1.0, rng.random_range(0.0..TAU));
    let homotopy = Homotopy { target: sys, degrees: degrees.clone(), gamma };
    let endpoints = (0..paths)
        .into_par_iter()
        .map(|k| homotopy.track(start_point(k, &degrees), config))
        .collect::<Result<Vec<_>>>()?;
    let solutions = dedup(&endpoints, config.dedup_tol);
    Ok(SolveOutcome { solutions, endpoints, gamma })
}

fn relative_distance(x: &[Complex64], y: &[Complex64]) -> f64 {
    let d: Vec<Complex64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
    vec_norm(&d) / vec_norm(x).max(vec_norm(y)).max(1.0)
}

/// Merges finite solutions closer than `tol` (relative). A merged group
/// keeps its first member, records the group size as multiplicity and is
/// flagged cluster-suspect when it has more than one member.
pub fn dedup(solutions: &[TrackedSolution], tol: f64) -> Vec<TrackedSolution> {
    let mut out: Vec<TrackedSolution> = Vec::new();
    for s in solutions.iter().filter(|s| s.is_finite_solution()) {
        match out.iter_mut().find(|o| relative_distance(&o.point, &s.point) <= tol) {
            Some(o) => {
                o.multiplicity += s.multiplicity;
                o.status = Status::ClusterSuspect;
            }
            None => out.push(s.clone()),
        }
    }
    out
}

/// Hausdorff distance between two finite point sets under the relative
/// metric used by [`dedup`]; infinite if exactly one set is empty.
pub fn hausdorff(xs: &[Vec<Complex64>], ys: &[Vec<Complex64>]) -> f64 {
    if xs.is_empty() && ys.is_empty() {
        return 0.0;
    }
    if xs.is_empty() || ys.is_empty() {
        return f64::INFINITY;
    }
    let one_way = |a: &[Vec<Complex64>], b: &[Vec<Complex64>]| {
        a.iter()
            .map(|x| b.iter().map(|y| relative_distance(x, y)).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    one_way(xs, ys).max(one_way(ys, xs))
}
