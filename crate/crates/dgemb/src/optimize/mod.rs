//! Robustness maximization: both margin programs solved by bisection on
//! delta over low-rank-factorized feasibility problems, plus unboundedness
//! detection, a heuristic translational fitter, and tiny-instance oracles.

mod adam;
mod closeness;
mod distance;
mod oracle;
mod similarity;
mod translational;

pub use closeness::{closeness_components, distance_robustness_unbounded};
pub use distance::max_distance_robustness;
pub use oracle::{oracle_robustness_tiny, OracleKind};
pub use similarity::max_similarity_robustness;
pub use translational::fit_translational;

use crate::embed::{DistanceEmbedding, Robustness, SimilarityEmbedding};
use crate::error::{Error, Result};

/// Solver knobs. `max_rank` and `delta_cap` default per graph (2n and (2n)^2).
#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    /// Factorization width; `None` means 2n.
    pub max_rank: Option<usize>,
    /// Relative width at which the bisection interval closes.
    pub bisection_tolerance: f64,
    /// Ascent iterations per feasibility attempt.
    pub max_iterations: usize,
    /// Restarts per feasibility level.
    pub restarts: usize,
    pub seed: u64,
    /// Certified-unbounded level; `None` means (2n)^2, which any bounded
    /// optimum stays under (a closeness chain has at most 2n unit-capped
    /// hops).
    pub delta_cap: Option<f64>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_rank: None,
            bisection_tolerance: 1e-4,
            max_iterations: 3000,
            restarts: 6,
            seed: 0,
            delta_cap: None,
        }
    }
}

impl SolverConfig {
    pub fn rank_for(&self, n: usize) -> usize {
        self.max_rank.unwrap_or(2 * n.max(1)).max(1)
    }

    pub fn cap_for(&self, n: usize) -> f64 {
        self.delta_cap
            .unwrap_or_else(|| (2.0 * n.max(1) as f64).powi(2))
    }

    /// Parse `key=value` lines (blank lines and `#` comments allowed).
    pub fn parse_config_text(&mut self, text: &str) -> Result<()> {
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got `{line}`")))?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |what: &str| Error::Parse(format!("bad {what} value `{value}`"));
            match key {
                "max_rank" => {
                    self.max_rank = Some(value.parse().map_err(|_| bad("max_rank"))?);
                }
                "bisection_tolerance" => {
                    self.bisection_tolerance =
                        value.parse().map_err(|_| bad("bisection_tolerance"))?;
                }
                "max_iterations" => {
                    self.max_iterations = value.parse().map_err(|_| bad("max_iterations"))?;
                }
                "restarts" => {
                    self.restarts = value.parse().map_err(|_| bad("restarts"))?;
                }
                "seed" => {
                    self.seed = value.parse().map_err(|_| bad("seed"))?;
                }
                "delta_cap" => {
                    self.delta_cap = Some(value.parse().map_err(|_| bad("delta_cap"))?);
                }
                other => {
                    return Err(Error::Parse(format!("unknown config key `{other}`")));
                }
            }
        }
        if self.bisection_tolerance <= 0.0 {
            return Err(Error::InvalidParams(
                "bisection_tolerance must be > 0".into(),
            ));
        }
        if self.rank_for(1) < 1 {
            return Err(Error::InvalidParams("max_rank must be >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
    Feasible,
    Unbounded,
    Infeasible,
}

#[derive(Debug, Clone)]
pub enum SolvedEmbedding {
    Distance(DistanceEmbedding),
    Similarity(SimilarityEmbedding),
}

impl SolvedEmbedding {
    pub fn as_distance(&self) -> Option<&DistanceEmbedding> {
        match self {
            SolvedEmbedding::Distance(e) => Some(e),
            _ => None,
        }
    }

    pub fn as_similarity(&self) -> Option<&SimilarityEmbedding> {
        match self {
            SolvedEmbedding::Similarity(e) => Some(e),
            _ => None,
        }
    }
}

/// Solver outcome. `delta` is always the measured robustness of the returned
/// embedding, never an internal estimate.
#[derive(Debug, Clone)]
pub struct SolveResult {
    pub delta: Robustness,
    pub embedding: SolvedEmbedding,
    /// Max constraint violation of the returned embedding at its threshold.
    pub residual: f64,
    pub status: SolveStatus,
}
