//! Robustness measurement and diameter statistics.
//!
//! Each measure reports the margin at the embedding's own threshold and the
//! margin at the tightest legal threshold (constructions choose t freely, so
//! both views matter). `valid` always agrees with the verifier's verdict.

use super::verify::{distance_close, similarity_close};
use super::{
    DiameterStats, DistanceEmbedding, Robustness, RobustnessResult, SimilarityEmbedding, Threshold,
};
use crate::error::{Error, Result};
use crate::graph::DiGraph;
use crate::linalg::{dist_sq, dot, norm};

fn check_size(g: &DiGraph, nodes: usize) -> Result<()> {
    if g.node_count() != nodes {
        return Err(Error::SizeMismatch {
            graph_nodes: g.node_count(),
            embedding_nodes: nodes,
        });
    }
    Ok(())
}

/// Distance margin at threshold `t`, given the minimum non-edge squared
/// distance (`None` when there are no non-edges).
fn distance_margin(t: f64, min_nonedge_sq: Option<f64>) -> Robustness {
    match min_nonedge_sq {
        None => Robustness::Infinite,
        Some(d2) => {
            if t == 0.0 {
                if d2 > 0.0 {
                    Robustness::Infinite
                } else {
                    Robustness::Finite(0.0)
                }
            } else {
                Robustness::Finite((d2 / (t * t) - 1.0).max(0.0))
            }
        }
    }
}

/// Measure delta-robustness of a uniform-threshold distance embedding:
/// non-edges must sit at squared distance >= t^2 (1 + delta).
pub fn measure_distance_robustness(g: &DiGraph, e: &DistanceEmbedding) -> Result<RobustnessResult> {
    check_size(g, e.node_count())?;
    let t = match &e.threshold {
        Threshold::Uniform(t) => *t,
        Threshold::PerSource(_) => return Err(Error::PerSourceUnsupported),
    };

    let mut witness = None;
    let mut max_edge_sq: f64 = 0.0;
    let mut min_nonedge_sq: Option<f64> = None;
    for (u, v) in g.all_pairs() {
        let d2 = dist_sq(&e.phi_out[u as usize], &e.phi_in[v as usize]);
        if g.has_edge(u, v) {
            max_edge_sq = max_edge_sq.max(d2);
        } else {
            min_nonedge_sq = Some(min_nonedge_sq.map_or(d2, |m: f64| m.min(d2)));
        }
        if witness.is_none() && g.has_edge(u, v) != distance_close(e, u as usize, v as usize) {
            witness = Some((u, v));
        }
    }

    let valid = witness.is_none();
    let delta = if valid {
        distance_margin(t, min_nonedge_sq)
    } else {
        Robustness::Finite(0.0)
    };
    let effective_threshold = max_edge_sq.sqrt();
    Ok(RobustnessResult {
        valid,
        delta,
        witness,
        effective_threshold,
        effective_delta: distance_margin(effective_threshold, min_nonedge_sq),
    })
}

/// Similarity margin at threshold `t` normalized by the max squared norm.
fn similarity_margin(t: f64, max_nonedge_dot: Option<f64>, max_norm_sq: f64) -> Robustness {
    match max_nonedge_dot {
        None => Robustness::Infinite,
        Some(d) => Robustness::Finite(((t - d) / max_norm_sq).max(0.0)),
    }
}

/// Measure delta-robustness of a similarity embedding: non-edge dots must
/// fall below t by at least delta times the maximum squared vector norm.
pub fn measure_similarity_robustness(
    g: &DiGraph,
    e: &SimilarityEmbedding,
) -> Result<RobustnessResult> {
    check_size(g, e.node_count())?;
    let m = e.max_norm_sq();

    let mut witness = None;
    let mut min_edge_dot: Option<f64> = None;
    let mut max_nonedge_dot: Option<f64> = None;
    for (u, v) in g.all_pairs() {
        let d = dot(&e.phi_l[u as usize], &e.phi_r[v as usize]);
        if g.has_edge(u, v) {
            min_edge_dot = Some(min_edge_dot.map_or(d, |x: f64| x.min(d)));
        } else {
            max_nonedge_dot = Some(max_nonedge_dot.map_or(d, |x: f64| x.max(d)));
        }
        if witness.is_none() && g.has_edge(u, v) != similarity_close(e, u as usize, v as usize) {
            witness = Some((u, v));
        }
    }

    if m == 0.0 && max_nonedge_dot.is_some() {
        return Err(Error::ZeroEmbedding);
    }

    let valid = witness.is_none();
    let delta = if valid {
        similarity_margin(e.threshold, max_nonedge_dot, m)
    } else {
        Robustness::Finite(0.0)
    };
    // The optimal threshold is the smallest edge dot; with no edges any
    // threshold above the non-edge dots works, so the margin is unbounded.
    let (effective_threshold, effective_delta) = match min_edge_dot {
        Some(t_star) => (t_star, similarity_margin(t_star, max_nonedge_dot, m)),
        None => (f64::INFINITY, Robustness::Infinite),
    };
    Ok(RobustnessResult {
        valid,
        delta,
        witness,
        effective_threshold,
        effective_delta,
    })
}

/// Exact diameter scan over all 2n embedded vectors.
pub fn diameter_stats(e: &DistanceEmbedding) -> Result<DiameterStats> {
    let t = match &e.threshold {
        Threshold::Uniform(t) => *t,
        Threshold::PerSource(_) => return Err(Error::PerSourceUnsupported),
    };
    if t == 0.0 {
        return Err(Error::ZeroThreshold);
    }
    let all: Vec<&Vec<f64>> = e.phi_out.iter().chain(&e.phi_in).collect();
    let mut diameter_sq: f64 = 0.0;
    for i in 0..all.len() {
        for j in (i + 1)..all.len() {
            diameter_sq = diameter_sq.max(dist_sq(all[i], all[j]));
        }
    }
    let diameter = diameter_sq.sqrt();
    let max_norm = all.iter().map(|v| norm(v)).fold(0.0, f64::max);
    Ok(DiameterStats {
        diameter,
        diameter_ratio: diameter / t,
        max_norm,
        scaled_diameter: (max_norm / t).max(1.0),
    })
}

/// Uniform rescale of a similarity embedding (vectors by s, threshold and the
/// implied dots by s^2). Robustness at the optimal threshold is invariant.
pub fn scale_similarity(e: &SimilarityEmbedding, s: f64) -> SimilarityEmbedding {
    SimilarityEmbedding::new(
        e.phi_l.iter().map(|v| crate::linalg::scale(v, s)).collect(),
        e.phi_r.iter().map(|v| crate::linalg::scale(v, s)).collect(),
        e.threshold * s * s,
    )
    .expect("scaling preserves embedding well-formedness")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    fn scalar(values: &[f64]) -> Vec<Vec<f64>> {
        values.iter().map(|&x| vec![x]).collect()
    }

    fn loopy2() -> DiGraph {
        DiGraph::from_edges(2, vec![(0, 0), (0, 1), (1, 1)]).unwrap()
    }

    fn self2() -> DiGraph {
        DiGraph::from_edges(2, vec![(0, 0), (1, 1)]).unwrap()
    }

    #[test]
    fn loopy2_collinear_chain_measures_eight() {
        // Triangle-inequality oracle: the non-edge (1, 0) spans three
        // unit-capped hops, so its distance is at most 3 and the collinear
        // layout x = (1, 3), y = (0, 2) attains it: delta = 9/1 - 1 = 8.
        let e = DistanceEmbedding::new(
            scalar(&[1.0, 3.0]),
            scalar(&[0.0, 2.0]),
            Threshold::Uniform(1.0),
        )
        .unwrap();
        let r = measure_distance_robustness(&loopy2(), &e).unwrap();
        assert!(r.valid);
        assert_eq!(r.delta, Robustness::Finite(8.0));
        assert_eq!(r.effective_threshold, 1.0);
        assert_eq!(r.effective_delta, Robustness::Finite(8.0));
    }

    #[test]
    fn complete_graph_has_unbounded_distance_robustness() {
        let g = generate(&Family::BidirectedCompleteWithLoops { n: 3 }, 0).unwrap();
        let e = DistanceEmbedding::new(
            scalar(&[0.0, 0.1, 0.2]),
            scalar(&[0.0, 0.1, 0.2]),
            Threshold::Uniform(1.0),
        )
        .unwrap();
        let r = measure_distance_robustness(&g, &e).unwrap();
        assert!(r.valid);
        assert_eq!(r.delta, Robustness::Infinite);
    }

    #[test]
    fn margin_arithmetic_matches_definition() {
        // Edges at squared distance 1, non-edges at 2, t = 1 => delta = 1.
        let g = DiGraph::from_edges(2, vec![(0, 0), (1, 1)]).unwrap();
        let e = DistanceEmbedding::new(
            vec![vec![0.0, 0.0], vec![2.0, 1.0]],
            vec![vec![1.0, 0.0], vec![1.0, 1.0]],
            Threshold::Uniform(1.0),
        )
        .unwrap();
        // dist^2: (0,0) -> 1, (1,1) -> 1, (0,1) -> 2, (1,0) -> 2.
        let r = measure_distance_robustness(&g, &e).unwrap();
        assert!(r.valid);
        assert_eq!(r.delta, Robustness::Finite(1.0));
    }

    #[test]
    fn invalid_edge_sets_witness() {
        let g = DiGraph::from_edges(2, vec![(0, 1)]).unwrap();
        let e = DistanceEmbedding::new(
            scalar(&[0.0, 5.0]),
            scalar(&[9.0, 9.0]),
            Threshold::Uniform(1.0),
        )
        .unwrap();
        let r = measure_distance_robustness(&g, &e).unwrap();
        assert!(!r.valid);
        assert_eq!(r.witness, Some((0, 1)));
    }

    #[test]
    fn per_source_thresholds_rejected() {
        let g = DiGraph::from_edges(1, vec![]).unwrap();
        let e = DistanceEmbedding::new(
            scalar(&[0.0]),
            scalar(&[2.0]),
            Threshold::PerSource(vec![1.0]),
        )
        .unwrap();
        assert!(matches!(
            measure_distance_robustness(&g, &e),
            Err(Error::PerSourceUnsupported)
        ));
    }

    #[test]
    fn self2_antipodal_similarity_measures_two() {
        let e = SimilarityEmbedding::new(scalar(&[1.0, -1.0]), scalar(&[1.0, -1.0]), 1.0).unwrap();
        let r = measure_similarity_robustness(&self2(), &e).unwrap();
        assert!(r.valid);
        assert_eq!(r.delta, Robustness::Finite(2.0));
        assert_eq!(r.effective_threshold, 1.0);
    }

    #[test]
    fn similarity_scaling_leaves_effective_delta_unchanged() {
        let e = SimilarityEmbedding::new(scalar(&[1.0, -1.0]), scalar(&[1.0, -1.0]), 1.0).unwrap();
        let scaled = scale_similarity(&e, 2.0);
        let a = measure_similarity_robustness(&self2(), &e).unwrap();
        let b = measure_similarity_robustness(&self2(), &scaled).unwrap();
        let (da, db) = (a.effective_delta.value(), b.effective_delta.value());
        assert!((da - db).abs() <= 1e-9 * da.abs().max(1.0));
    }

    #[test]
    fn zero_embedding_with_nonedges_errors() {
        let g = DiGraph::from_edges(2, vec![(0, 0)]).unwrap();
        let e = SimilarityEmbedding::new(scalar(&[0.0, 0.0]), scalar(&[0.0, 0.0]), 0.0).unwrap();
        assert!(matches!(
            measure_similarity_robustness(&g, &e),
            Err(Error::ZeroEmbedding)
        ));
    }

    #[test]
    fn diameter_stats_exhaustive_scan() {
        let e = DistanceEmbedding::new(
            scalar(&[1.0, 3.0]),
            scalar(&[0.0, 2.0]),
            Threshold::Uniform(1.0),
        )
        .unwrap();
        let d = diameter_stats(&e).unwrap();
        assert_eq!(d.diameter, 3.0);
        assert_eq!(d.diameter_ratio, 3.0);
        assert_eq!(d.max_norm, 3.0);
        assert_eq!(d.scaled_diameter, 3.0);
    }

    #[test]
    fn diameter_of_identical_vectors_is_zero() {
        let e = DistanceEmbedding::new(
            vec![vec![0.5, 0.5]; 3],
            vec![vec![0.5, 0.5]; 3],
            Threshold::Uniform(2.0),
        )
        .unwrap();
        let d = diameter_stats(&e).unwrap();
        assert_eq!(d.diameter, 0.0);
        assert_eq!(d.scaled_diameter, 1.0);
    }

    #[test]
    fn unit_sphere_diameter_norm_bound() {
        // All vectors on the sphere: B = 1 and the scaled diameter is
        // max(1/t, 1).
        let e = DistanceEmbedding::new(
            vec![vec![1.0, 0.0], vec![0.0, 1.0]],
            vec![vec![-1.0, 0.0], vec![0.0, -1.0]],
            Threshold::Uniform(0.5),
        )
        .unwrap();
        let d = diameter_stats(&e).unwrap();
        assert!((d.max_norm - 1.0).abs() < 1e-12);
        assert_eq!(d.scaled_diameter, 2.0);
        let wide =
            DistanceEmbedding::new(e.phi_out.clone(), e.phi_in.clone(), Threshold::Uniform(3.0))
                .unwrap();
        assert_eq!(diameter_stats(&wide).unwrap().scaled_diameter, 1.0);
    }

    #[test]
    fn diameter_rejects_zero_threshold() {
        let e = DistanceEmbedding::new(scalar(&[0.0]), scalar(&[0.0]), Threshold::Uniform(0.0))
            .unwrap();
        assert!(matches!(diameter_stats(&e), Err(Error::ZeroThreshold)));
    }
}
