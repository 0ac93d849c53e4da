//! Envelope shared by every JSON report the CLI writes.

use serde::{Deserialize, Serialize};

use crate::section::SectionConfig;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub path_tol: f64,
    pub final_tol: f64,
    pub dedup_tol: f64,
    pub rank_tol: f64,
    pub residual_tol: f64,
}

impl From<&SectionConfig> for Tolerances {
    fn from(c: &SectionConfig) -> Self {
        Tolerances {
            path_tol: c.solver.path_tol,
            final_tol: c.solver.final_tol,
            dedup_tol: c.solver.dedup_tol,
            rank_tol: c.rank_tol,
            residual_tol: c.residual_tol,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report<T> {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub seed: u64,
    pub tolerances: Tolerances,
    /// Wall-clock seconds; `None` when timing is suppressed for reproducible
    /// output.
    pub elapsed_seconds: Option<f64>,
    pub result: T,
}

impl<T: Serialize> Report<T> {
    pub fn new(command: &str, seed: u64, config: &SectionConfig, elapsed_seconds: Option<f64>, result: T) -> Self {
        Report {
            tool: "resonance".into(),
            version: VERSION.into(),
            command: command.into(),
            seed,
            tolerances: config.into(),
            elapsed_seconds,
            result,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}
