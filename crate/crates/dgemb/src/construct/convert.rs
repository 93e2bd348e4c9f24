//! Conversions between embedding types with explicit robustness constants.

use crate::embed::{
    measure_distance_robustness, measure_similarity_robustness, verify_similarity,
    DistanceEmbedding, SimilarityEmbedding, Threshold,
};
use crate::error::{Error, Result};
use crate::graph::DiGraph;
use crate::linalg::{dot, norm, norm_sq, numerical_rank, svd, Matrix};

/// Extract a spherical distance embedding from a verifying similarity
/// embedding.
///
/// The shifted dot matrix `M - tJ` is positive exactly on edges and has rank
/// at most d+1; factoring it through a truncated SVD and normalizing both
/// factor sides to unit length preserves each entry's sign, so edges are
/// exactly the pairs within distance sqrt(2). Output dimension is the
/// numerical rank, capped at d+1.
///
/// A numerically zero factor column (a node whose shifted dots all vanish) is
/// a measure-zero degeneracy handled by nudging t down by `1e-7 (1 + |t|)`
/// and refactoring, a few times before giving up.
pub fn similarity_to_spherical_distance(
    g: &DiGraph,
    e: &SimilarityEmbedding,
) -> Result<DistanceEmbedding> {
    if !verify_similarity(g, e)?.ok {
        return Err(Error::NotRobust(
            "input similarity embedding does not verify on the graph".into(),
        ));
    }
    let n = g.node_count();
    let cap = e.dim() + 1;

    let mut t = e.threshold;
    for _ in 0..4 {
        let mut shifted = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                shifted.set(i, j, dot(&e.phi_l[i], &e.phi_r[j]) - t);
            }
        }
        let dec = svd(&shifted);
        let r = numerical_rank(&dec.sigma).min(cap);

        let mut phi_out = vec![vec![0.0; r]; n];
        let mut phi_in = vec![vec![0.0; r]; n];
        for i in 0..n {
            for l in 0..r {
                phi_out[i][l] = dec.u.get(i, l) * dec.sigma[l].sqrt();
                phi_in[i][l] = dec.v.get(i, l) * dec.sigma[l].sqrt();
            }
        }
        let scale_cutoff = 1e-12 * dec.sigma.first().copied().unwrap_or(0.0).max(1.0).sqrt();
        let degenerate = r > 0
            && phi_out
                .iter()
                .chain(&phi_in)
                .any(|v| norm(v) <= scale_cutoff);
        if degenerate {
            t -= 1e-7 * (1.0 + t.abs());
            continue;
        }
        if r > 0 {
            for v in phi_out.iter_mut().chain(phi_in.iter_mut()) {
                let len = norm(v);
                v.iter_mut().for_each(|x| *x /= len);
            }
        }
        return DistanceEmbedding::new(phi_out, phi_in, Threshold::Uniform(2.0_f64.sqrt()));
    }
    Err(Error::ZeroColumn)
}

/// Lift a delta-robust distance embedding (t > 0) to a spherical similarity
/// embedding with robustness at least `delta^2 / (18 scaled_diameter^4)`.
///
/// After rescaling to t = 1, each vector v maps to `(c v, 1)` normalized,
/// with `c = sqrt(delta / (3 D^4))` for `D = max(B, 1)` and B the largest
/// rescaled norm. Edge dots stay above `1 - c^2/2` (the output threshold)
/// while non-edge dots fall below it by the guaranteed margin.
pub fn distance_to_similarity(
    g: &DiGraph,
    e: &DistanceEmbedding,
    delta: f64,
) -> Result<SimilarityEmbedding> {
    let t = match &e.threshold {
        Threshold::Uniform(t) => *t,
        Threshold::PerSource(_) => return Err(Error::PerSourceUnsupported),
    };
    if t == 0.0 {
        return Err(Error::ZeroThreshold);
    }
    if delta <= 0.0 || !delta.is_finite() {
        return Err(Error::InvalidParams(format!(
            "distance_to_similarity needs a finite delta > 0, got {delta}"
        )));
    }
    let measured = measure_distance_robustness(g, e)?;
    if !measured.valid || !measured.delta.at_least(delta - 1e-12) {
        return Err(Error::NotRobust(format!(
            "input measures {} but delta = {delta} was requested",
            measured.delta
        )));
    }

    let rescale = 1.0 / t;
    let b = e
        .phi_out
        .iter()
        .chain(&e.phi_in)
        .map(|v| norm(v) * rescale)
        .fold(0.0, f64::max);
    let scaled_diameter = b.max(1.0);
    let c = (delta / (3.0 * scaled_diameter.powi(4))).sqrt();

    let lift = |v: &Vec<f64>| -> Vec<f64> {
        let mut w: Vec<f64> = v.iter().map(|x| x * rescale * c).collect();
        w.push(1.0);
        let len = norm(&w);
        w.iter_mut().for_each(|x| *x /= len);
        w
    };
    SimilarityEmbedding::new(
        e.phi_out.iter().map(lift).collect(),
        e.phi_in.iter().map(lift).collect(),
        1.0 - c * c / 2.0,
    )
}

/// Convert a delta-robust similarity embedding into a spherical distance
/// embedding with robustness at least delta/2.
///
/// Vectors are rescaled to norms <= 1 and completed to unit length with one
/// fresh axis per side (dots are untouched since the two completion axes are
/// orthogonal); on the sphere, dot >= t is distance^2 <= 2 - 2t, so the
/// distance threshold is `sqrt(2 - 2t')` for the rescaled threshold t'.
pub fn similarity_to_distance(
    g: &DiGraph,
    e: &SimilarityEmbedding,
    delta: f64,
) -> Result<DistanceEmbedding> {
    if delta <= 0.0 || !delta.is_finite() {
        return Err(Error::InvalidParams(format!(
            "similarity_to_distance needs a finite delta > 0, got {delta}"
        )));
    }
    let measured = measure_similarity_robustness(g, e)?;
    if !measured.valid || !measured.delta.at_least(delta - 1e-12) {
        return Err(Error::NotRobust(format!(
            "input measures {} but delta = {delta} was requested",
            measured.delta
        )));
    }

    let n = g.node_count();
    if g.edge_count() == 0 {
        // No edges: park the two sides on distinct fresh axes; with t = 0
        // every cross pair sits at distance sqrt(2) > 0.
        let mut phi_out = vec![vec![1.0, 0.0]; n];
        let mut phi_in = vec![vec![0.0, 1.0]; n];
        if n == 0 {
            phi_out.clear();
            phi_in.clear();
        }
        return DistanceEmbedding::new(phi_out, phi_in, Threshold::Uniform(0.0));
    }

    // Rescale so the largest norm is exactly 1: dots, threshold, and the
    // normalizer all scale together, so the measured delta is unchanged and
    // the post-completion additive margin equals it.
    let max_norm = e
        .phi_l
        .iter()
        .chain(&e.phi_r)
        .map(|v| norm(v))
        .fold(0.0, f64::max);
    let (scale, t_rescaled) = if max_norm > 0.0 {
        (1.0 / max_norm, e.threshold / (max_norm * max_norm))
    } else {
        (1.0, e.threshold)
    };

    let complete = |v: &Vec<f64>, left: bool| -> Vec<f64> {
        let mut w: Vec<f64> = v.iter().map(|x| x * scale).collect();
        let pad = (1.0 - norm_sq(&w)).max(0.0).sqrt();
        if left {
            w.push(pad);
            w.push(0.0);
        } else {
            w.push(0.0);
            w.push(pad);
        }
        w
    };
    let t_out = (2.0 - 2.0 * t_rescaled).max(0.0).sqrt();
    DistanceEmbedding::new(
        e.phi_l.iter().map(|v| complete(v, true)).collect(),
        e.phi_r.iter().map(|v| complete(v, false)).collect(),
        Threshold::Uniform(t_out),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::{verify_distance, Robustness};
    use crate::graph::{generate, Family};

    fn scalar(values: &[f64]) -> Vec<Vec<f64>> {
        values.iter().map(|&x| vec![x]).collect()
    }

    fn self2() -> DiGraph {
        DiGraph::from_edges(2, vec![(0, 0), (1, 1)]).unwrap()
    }

    fn loopy2() -> DiGraph {
        DiGraph::from_edges(2, vec![(0, 0), (0, 1), (1, 1)]).unwrap()
    }

    #[test]
    fn self2_shifted_matrix_factorization() {
        // M - tJ = [[0, -2], [-2, 0]]: rank 2, so the output lives in
        // dimension 2 and must verify at threshold sqrt(2).
        let e = SimilarityEmbedding::new(scalar(&[1.0, -1.0]), scalar(&[1.0, -1.0]), 1.0).unwrap();
        let d = similarity_to_spherical_distance(&self2(), &e).unwrap();
        assert_eq!(d.dim(), 2);
        assert!(d.is_spherical());
        assert!(verify_distance(&self2(), &d).unwrap().ok);
    }

    #[test]
    fn output_dimension_bounded_by_input_plus_one() {
        for seed in 0..15 {
            let g = generate(&Family::RandomGnp { n: 10, p: 0.35 }, seed).unwrap();
            let (_, s) = crate::construct::svd_construct(&g).unwrap();
            let d = similarity_to_spherical_distance(&g, &s).unwrap();
            assert!(
                d.dim() <= s.dim() + 1,
                "seed {seed}: {} > {}",
                d.dim(),
                s.dim() + 1
            );
            assert!(verify_distance(&g, &d).unwrap().ok, "seed {seed}");
        }
    }

    #[test]
    fn spherical_zero_threshold_keeps_the_sign_pattern() {
        // With t = 0 the shift term vanishes and the factorization works on
        // the raw dot matrix; the edge relation is its sign pattern.
        let e = SimilarityEmbedding::new(scalar(&[1.0, -1.0]), scalar(&[1.0, -1.0]), 0.0).unwrap();
        assert!(e.spherical);
        let g = self2();
        assert!(crate::embed::verify_similarity(&g, &e).unwrap().ok);
        let d = similarity_to_spherical_distance(&g, &e).unwrap();
        assert!(verify_distance(&g, &d).unwrap().ok);
        for (u, v) in g.all_pairs() {
            let before = dot(&e.phi_l[u as usize], &e.phi_r[v as usize]) >= 0.0;
            let after = dot(&d.phi_out[u as usize], &d.phi_in[v as usize]) >= -1e-9;
            assert_eq!(before, after, "pair ({u},{v})");
        }
    }

    #[test]
    fn rejects_non_verifying_input() {
        let e = SimilarityEmbedding::new(scalar(&[1.0, -1.0]), scalar(&[1.0, -1.0]), 1.5).unwrap();
        assert!(matches!(
            similarity_to_spherical_distance(&self2(), &e),
            Err(Error::NotRobust(_))
        ));
    }

    #[test]
    fn loopy2_lift_meets_guarantee() {
        // t = 1, delta = 8, B = 3 so D = 3: bound = 64 / (18 * 81).
        let e = DistanceEmbedding::new(
            scalar(&[1.0, 3.0]),
            scalar(&[0.0, 2.0]),
            Threshold::Uniform(1.0),
        )
        .unwrap();
        let s = distance_to_similarity(&loopy2(), &e, 8.0).unwrap();
        assert!(s.spherical);
        assert_eq!(s.dim(), 2);
        let bound = 64.0 / (18.0 * 81.0);
        assert!((bound - 0.043895747599_f64).abs() < 1e-9);
        let r = measure_similarity_robustness(&loopy2(), &s).unwrap();
        assert!(r.valid);
        assert!(r.delta.at_least(bound - 1e-9), "{} < {bound}", r.delta);
    }

    #[test]
    fn spherical_unit_input_bound_arithmetic() {
        // Spherical input with t = 1, B = 1, delta = 0.5: bound 0.25/18.
        let bound = 0.5f64 * 0.5 / 18.0;
        assert!((bound - 0.013888888888888888).abs() < 1e-15);
    }

    #[test]
    fn edge_dots_stay_above_output_threshold() {
        for seed in 0..10 {
            let g = generate(&Family::RandomGnp { n: 8, p: 0.4 }, seed).unwrap();
            if g.edge_count() == 0 {
                continue;
            }
            let (d, _) = crate::construct::svd_construct(&g).unwrap();
            let Some(t) = d.uniform_threshold() else {
                continue;
            };
            if t == 0.0 {
                continue;
            }
            let m = measure_distance_robustness(&g, &d).unwrap();
            let delta = match m.delta {
                Robustness::Finite(x) => x,
                Robustness::Infinite => continue,
            };
            let s = distance_to_similarity(&g, &d, delta).unwrap();
            for (u, v) in g.edges() {
                let dot_uv = dot(&s.phi_l[u as usize], &s.phi_r[v as usize]);
                assert!(
                    dot_uv >= s.threshold - 1e-12,
                    "seed {seed} edge ({u},{v}): {dot_uv} < {}",
                    s.threshold
                );
            }
        }
    }

    #[test]
    fn zero_threshold_is_refused() {
        let g = DiGraph::from_edges(2, vec![(0, 1)]).unwrap();
        let (d, _) = crate::construct::svd_construct(&g).unwrap();
        assert_eq!(d.uniform_threshold(), Some(0.0));
        assert!(matches!(
            distance_to_similarity(&g, &d, 1.0),
            Err(Error::ZeroThreshold)
        ));
    }

    #[test]
    fn self2_similarity_to_distance_appends_zeros() {
        // Unit-norm input: completion coordinates vanish and t' = 1 gives a
        // zero distance threshold with unbounded measured robustness.
        let e = SimilarityEmbedding::new(scalar(&[1.0, -1.0]), scalar(&[1.0, -1.0]), 1.0).unwrap();
        let d = similarity_to_distance(&self2(), &e, 2.0).unwrap();
        assert_eq!(d.dim(), 3);
        for v in d.phi_out.iter().chain(&d.phi_in) {
            assert!(v[1].abs() < 1e-12 && v[2].abs() < 1e-12);
        }
        assert_eq!(d.uniform_threshold(), Some(0.0));
        assert!(verify_distance(&self2(), &d).unwrap().ok);
        let r = measure_distance_robustness(&self2(), &d).unwrap();
        assert_eq!(r.delta, Robustness::Infinite);
        assert!(r.effective_delta.at_least(1.0));
    }

    #[test]
    fn zero_vector_lifts_to_completion_axis() {
        let g = DiGraph::from_edges(2, vec![(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        let e =
            SimilarityEmbedding::new(vec![vec![0.0], vec![0.0]], vec![vec![0.0], vec![0.0]], -0.5)
                .unwrap();
        let d = similarity_to_distance(&g, &e, 1.0).unwrap();
        assert_eq!(d.phi_out[0], vec![0.0, 1.0, 0.0]);
        assert_eq!(d.phi_in[0], vec![0.0, 0.0, 1.0]);
        assert!(verify_distance(&g, &d).unwrap().ok);
    }

    #[test]
    fn guarantee_half_delta_on_svd_outputs() {
        for seed in 0..10 {
            let g = generate(&Family::RandomGnp { n: 9, p: 0.4 }, seed).unwrap();
            if g.edge_count() == 0 || g.non_edges().next().is_none() {
                continue;
            }
            let (_, s) = crate::construct::svd_construct(&g).unwrap();
            let m = measure_similarity_robustness(&g, &s).unwrap();
            let delta = match m.delta {
                Robustness::Finite(x) => x,
                Robustness::Infinite => continue,
            };
            let d = similarity_to_distance(&g, &s, delta).unwrap();
            assert!(verify_distance(&g, &d).unwrap().ok, "seed {seed}");
            let r = measure_distance_robustness(&g, &d).unwrap();
            assert!(
                r.effective_delta.at_least(delta / 2.0 - 1e-9),
                "seed {seed}: {} < {}",
                r.effective_delta,
                delta / 2.0
            );
        }
    }
}
