//! Dense polynomial systems over `ℂ` and a total-degree homotopy solver
//! (γ-trick, Euler predictor, Newton corrector, adaptive steps).

mod poly;
mod solve;

pub use poly::{MultiPoly, PolySystem};
pub use solve::{
    dedup, hausdorff, newton_refine, solve_total_degree, PathCounts, SolveOutcome, SolverConfig, Status,
    TrackedSolution,
};
