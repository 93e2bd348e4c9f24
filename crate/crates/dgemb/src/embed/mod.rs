//! Embedding data types, exact verification of the defining biconditionals,
//! robustness measurement, diameter statistics, and per-node-threshold
//! uniformization.

mod json;
mod measure;
mod obstruction;
mod uniformize;
mod verify;

pub use json::{read_embedding, write_embedding, EmbeddingFile, Metadata, StoredEmbedding};
pub use measure::{
    diameter_stats, measure_distance_robustness, measure_similarity_robustness, scale_similarity,
};
pub use obstruction::translational_obstruction;
pub use uniformize::uniformize_thresholds;
pub use verify::{verify_distance, verify_similarity, verify_translational, Verdict};

use crate::error::{Error, Result};
use crate::linalg::{norm, norm_sq};

/// Absolute comparison tolerance on squared distances and dot products.
/// The defining biconditionals are exact in real arithmetic; this slack keeps
/// boundary cases (edge exactly at the threshold) stable under floating point.
pub const TOLERANCE: f64 = 1e-9;

/// Uniform or per-source-node distance thresholds.
#[derive(Debug, Clone, PartialEq)]
pub enum Threshold {
    Uniform(f64),
    PerSource(Vec<f64>),
}

impl Threshold {
    pub fn for_source(&self, u: usize) -> f64 {
        match self {
            Threshold::Uniform(t) => *t,
            Threshold::PerSource(ts) => ts[u],
        }
    }
}

/// Paired out/in vector families with a distance threshold: edges are exactly
/// the pairs with `|phi_out(u) - phi_in(v)| <= t`.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceEmbedding {
    pub phi_out: Vec<Vec<f64>>,
    pub phi_in: Vec<Vec<f64>>,
    pub threshold: Threshold,
}

impl DistanceEmbedding {
    pub fn new(
        phi_out: Vec<Vec<f64>>,
        phi_in: Vec<Vec<f64>>,
        threshold: Threshold,
    ) -> Result<Self> {
        if phi_out.len() != phi_in.len() {
            return Err(Error::InvalidParams(format!(
                "phi_out has {} vectors, phi_in has {}",
                phi_out.len(),
                phi_in.len()
            )));
        }
        let dim = phi_out.first().or(phi_in.first()).map_or(0, Vec::len);
        if phi_out.iter().chain(&phi_in).any(|v| v.len() != dim) {
            return Err(Error::InvalidParams("vectors of mixed dimension".into()));
        }
        match &threshold {
            Threshold::Uniform(t) => {
                if *t < 0.0 || !t.is_finite() {
                    return Err(Error::InvalidParams(format!("threshold {t} must be >= 0")));
                }
            }
            Threshold::PerSource(ts) => {
                if ts.len() != phi_out.len() {
                    return Err(Error::InvalidParams(format!(
                        "{} per-source thresholds for {} nodes",
                        ts.len(),
                        phi_out.len()
                    )));
                }
                if ts.iter().any(|t| *t < 0.0 || !t.is_finite()) {
                    return Err(Error::InvalidParams("negative per-source threshold".into()));
                }
            }
        }
        Ok(DistanceEmbedding {
            phi_out,
            phi_in,
            threshold,
        })
    }

    pub fn node_count(&self) -> usize {
        self.phi_out.len()
    }

    /// Dimension d; d = 0 is legal (all vectors are the empty point).
    pub fn dim(&self) -> usize {
        self.phi_out.first().map_or(0, Vec::len)
    }

    pub fn uniform_threshold(&self) -> Option<f64> {
        match &self.threshold {
            Threshold::Uniform(t) => Some(*t),
            Threshold::PerSource(_) => None,
        }
    }

    /// True when every vector has unit norm within 1e-9.
    pub fn is_spherical(&self) -> bool {
        self.phi_out
            .iter()
            .chain(&self.phi_in)
            .all(|v| (norm(v) - 1.0).abs() <= 1e-9)
    }
}

/// Paired L/R vector families with a dot-product threshold (any sign): edges
/// are exactly the pairs with `phi_l(u) . phi_r(v) >= t`.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityEmbedding {
    pub phi_l: Vec<Vec<f64>>,
    pub phi_r: Vec<Vec<f64>>,
    pub threshold: f64,
    /// All vectors unit-norm within 1e-9; computed at construction.
    pub spherical: bool,
}

impl SimilarityEmbedding {
    pub fn new(phi_l: Vec<Vec<f64>>, phi_r: Vec<Vec<f64>>, threshold: f64) -> Result<Self> {
        if phi_l.len() != phi_r.len() {
            return Err(Error::InvalidParams(format!(
                "phi_l has {} vectors, phi_r has {}",
                phi_l.len(),
                phi_r.len()
            )));
        }
        let dim = phi_l.first().or(phi_r.first()).map_or(0, Vec::len);
        if phi_l.iter().chain(&phi_r).any(|v| v.len() != dim) {
            return Err(Error::InvalidParams("vectors of mixed dimension".into()));
        }
        if !threshold.is_finite() {
            return Err(Error::InvalidParams("threshold must be finite".into()));
        }
        let spherical = phi_l
            .iter()
            .chain(&phi_r)
            .all(|v| (norm(v) - 1.0).abs() <= 1e-9);
        Ok(SimilarityEmbedding {
            phi_l,
            phi_r,
            threshold,
            spherical,
        })
    }

    pub fn node_count(&self) -> usize {
        self.phi_l.len()
    }

    pub fn dim(&self) -> usize {
        self.phi_l.first().map_or(0, Vec::len)
    }

    /// Largest squared vector norm (the normalizer in the robustness
    /// definition).
    pub fn max_norm_sq(&self) -> f64 {
        self.phi_l
            .iter()
            .chain(&self.phi_r)
            .map(|v| norm_sq(v))
            .fold(0.0, f64::max)
    }
}

/// Single vector family with a unit direction and per-node thresholds: for
/// u != v, edges are exactly the pairs with `|phi(v) - (phi(u) + z)| <= t_u`.
#[derive(Debug, Clone, PartialEq)]
pub struct TranslationalEmbedding {
    pub phi: Vec<Vec<f64>>,
    pub z: Vec<f64>,
    pub thresholds: Vec<f64>,
    /// All per-node thresholds equal; computed at construction.
    pub uniform: bool,
}

impl TranslationalEmbedding {
    pub fn new(phi: Vec<Vec<f64>>, z: Vec<f64>, thresholds: Vec<f64>) -> Result<Self> {
        let dim = z.len();
        if phi.iter().any(|v| v.len() != dim) {
            return Err(Error::InvalidParams("vectors of mixed dimension".into()));
        }
        if (norm(&z) - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidParams(format!(
                "direction must be a unit vector (norm {})",
                norm(&z)
            )));
        }
        if thresholds.len() != phi.len() {
            return Err(Error::InvalidParams(format!(
                "{} thresholds for {} nodes",
                thresholds.len(),
                phi.len()
            )));
        }
        if thresholds.iter().any(|t| *t < 0.0 || !t.is_finite()) {
            return Err(Error::InvalidParams("thresholds must be >= 0".into()));
        }
        let uniform = thresholds.windows(2).all(|w| w[0] == w[1]);
        Ok(TranslationalEmbedding {
            phi,
            z,
            thresholds,
            uniform,
        })
    }

    pub fn node_count(&self) -> usize {
        self.phi.len()
    }

    pub fn dim(&self) -> usize {
        self.z.len()
    }
}

/// A robustness value: finite non-negative, or unbounded.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Robustness {
    Finite(f64),
    Infinite,
}

impl Robustness {
    pub fn is_finite(&self) -> bool {
        matches!(self, Robustness::Finite(_))
    }

    /// Finite value, or `f64::INFINITY` for the sentinel.
    pub fn value(&self) -> f64 {
        match self {
            Robustness::Finite(d) => *d,
            Robustness::Infinite => f64::INFINITY,
        }
    }

    pub fn at_least(&self, bound: f64) -> bool {
        self.value() >= bound
    }
}

impl std::fmt::Display for Robustness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Robustness::Finite(d) => write!(f, "{d}"),
            Robustness::Infinite => write!(f, "inf"),
        }
    }
}

/// Measured robustness plus certificate data.
#[derive(Debug, Clone, PartialEq)]
pub struct RobustnessResult {
    /// The embedding satisfies its defining biconditional.
    pub valid: bool,
    /// Margin at the embedding's own threshold; meaningful when valid.
    pub delta: Robustness,
    /// Lexicographically least violating pair when invalid.
    pub witness: Option<(u32, u32)>,
    /// The tightest threshold the edge set allows (max edge distance, or min
    /// edge dot for similarity embeddings).
    pub effective_threshold: f64,
    /// Margin the embedding would have at the effective threshold.
    pub effective_delta: Robustness,
}

/// Diameter statistics of a distance embedding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiameterStats {
    /// Max pairwise distance among all 2n embedded vectors.
    pub diameter: f64,
    /// diameter / t.
    pub diameter_ratio: f64,
    /// Largest vector norm B.
    pub max_norm: f64,
    /// max(B / t, 1).
    pub scaled_diameter: f64,
}
