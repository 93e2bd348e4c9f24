//! Per-source-threshold elimination.

use super::{DistanceEmbedding, Threshold};

/// Convert a per-source-threshold embedding into a uniform one by appending a
/// compensating coordinate: out vectors gain `sqrt(t^2 - t_u^2)` with
/// `t = max_u t_u`, in vectors gain 0. The verifier verdict is preserved on
/// every pair since the appended coordinate contributes exactly `t^2 - t_u^2`
/// to each squared distance from source u.
///
/// Already-uniform inputs pass through with an all-zero appended coordinate.
pub fn uniformize_thresholds(e: &DistanceEmbedding) -> DistanceEmbedding {
    let thresholds: Vec<f64> = match &e.threshold {
        Threshold::Uniform(t) => vec![*t; e.node_count()],
        Threshold::PerSource(ts) => ts.clone(),
    };
    let t_max = thresholds.iter().copied().fold(0.0, f64::max);
    let phi_out = e
        .phi_out
        .iter()
        .zip(&thresholds)
        .map(|(v, &tu)| {
            let mut w = v.clone();
            w.push((t_max * t_max - tu * tu).max(0.0).sqrt());
            w
        })
        .collect();
    let phi_in = e
        .phi_in
        .iter()
        .map(|v| {
            let mut w = v.clone();
            w.push(0.0);
            w
        })
        .collect();
    DistanceEmbedding::new(phi_out, phi_in, Threshold::Uniform(t_max))
        .expect("uniformization preserves well-formedness")
}
