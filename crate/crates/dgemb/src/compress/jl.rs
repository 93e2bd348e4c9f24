//! Seeded Gaussian random projection with a verified robustness contract.

use crate::embed::{measure_distance_robustness, verify_distance, DistanceEmbedding, Threshold};
use crate::error::{Error, Result};
use crate::graph::DiGraph;
use crate::rng::{gaussian_at, mix};

/// Distortion budget for a target robustness `delta`.
///
/// delta/8 makes the projected embedding (delta/2)-robust in the small-delta
/// regime; the 1/8 cap keeps the distortion inside the valid range and makes
/// the same (delta/2) bound hold for large delta as well.
pub fn jl_epsilon(delta: f64) -> f64 {
    (delta / 8.0).min(0.125)
}

/// Target dimension: a union bound over all 4n^2 ordered vector pairs with
/// the standard (eps^2/2 - eps^3/3) exponent,
/// `m = ceil(4 ln(4 n^2) / (eps^2/2 - eps^3/3))`.
pub fn jl_target_dimension(n: usize, delta: f64) -> usize {
    let eps = jl_epsilon(delta);
    let denom = eps * eps / 2.0 - eps * eps * eps / 3.0;
    let pairs = 4.0 * (n as f64) * (n as f64);
    (4.0 * pairs.ln() / denom).ceil() as usize
}

/// Project a delta-robust distance embedding down to the JL dimension.
///
/// Inputs already at or below the target dimension come back unchanged.
/// Otherwise a seeded Gaussian matrix (entries N(0,1)/sqrt(m) from the
/// counter generator) is applied to every vector, the threshold is inflated
/// to `t sqrt(1+eps)` to absorb edge-side distortion, and the result must
/// both verify on g and measure at least (delta/2)-robust; up to 16 fresh
/// sub-seeds are tried before giving up.
pub fn jl_project(
    g: &DiGraph,
    e: &DistanceEmbedding,
    delta: f64,
    seed: u64,
) -> Result<DistanceEmbedding> {
    let t = match &e.threshold {
        Threshold::Uniform(t) => *t,
        Threshold::PerSource(_) => return Err(Error::PerSourceUnsupported),
    };
    if delta <= 0.0 || !delta.is_finite() {
        return Err(Error::InvalidParams(format!(
            "jl_project needs a finite delta > 0, got {delta}"
        )));
    }
    let measured = measure_distance_robustness(g, e)?;
    if !measured.valid || !measured.delta.at_least(delta - 1e-12) {
        return Err(Error::NotRobust(format!(
            "input measures {} but delta = {delta} was requested",
            measured.delta
        )));
    }

    let n = g.node_count();
    let d = e.dim();
    let m = jl_target_dimension(n, delta);
    if m >= d {
        return Ok(e.clone());
    }

    let eps = jl_epsilon(delta);
    let t_out = t * (1.0 + eps).sqrt();
    let inv_sqrt_m = 1.0 / (m as f64).sqrt();
    for attempt in 0..16u64 {
        let matrix_seed = mix(seed, attempt);
        let project = |v: &Vec<f64>| -> Vec<f64> {
            (0..m)
                .map(|row| {
                    let mut acc = 0.0;
                    for (col, &x) in v.iter().enumerate() {
                        acc += gaussian_at(matrix_seed, (row * d + col) as u64) * x;
                    }
                    acc * inv_sqrt_m
                })
                .collect()
        };
        let candidate = DistanceEmbedding::new(
            e.phi_out.iter().map(project).collect(),
            e.phi_in.iter().map(project).collect(),
            Threshold::Uniform(t_out),
        )?;
        if verify_distance(g, &candidate)?.ok {
            let r = measure_distance_robustness(g, &candidate)?;
            if r.valid && r.delta.at_least(delta / 2.0) {
                return Ok(candidate);
            }
        }
    }
    Err(Error::RetriesExhausted(
        "no Gaussian projection met the delta/2 contract in 16 attempts".into(),
    ))
}
