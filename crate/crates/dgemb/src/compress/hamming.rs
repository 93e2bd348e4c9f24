//! Random-halfspace embedding into the Hamming cube.

use super::{Code, HammingEmbedding};
use crate::embed::{SimilarityEmbedding, TOLERANCE};
use crate::error::{Error, Result};
use crate::graph::DiGraph;
use crate::linalg::dot;
use crate::rng::{mix, Rng};

/// Default code-length factor; big enough that the union-bounded failure
/// probability stays below 1/n for delta <= 1 at desk-scale n.
pub const DEFAULT_CODE_FACTOR: f64 = 64.0;

/// Code length `k = ceil(factor * ln(n+1) / delta^2)`.
pub fn hamming_code_length(n: usize, delta: f64, factor: f64) -> usize {
    (factor * ((n + 1) as f64).ln() / (delta * delta)).ceil() as usize
}

/// Embed a spherical similarity embedding into the Hamming cube with the
/// default code factor.
pub fn hamming_embed(
    g: &DiGraph,
    e: &SimilarityEmbedding,
    delta: f64,
    seed: u64,
) -> Result<HammingEmbedding> {
    hamming_embed_with_factor(g, e, delta, seed, DEFAULT_CODE_FACTOR)
}

/// Random-halfspace Hamming embedding.
///
/// Precondition (additive spherical robustness around the embedding's own t):
/// every edge dot is >= t + delta and every non-edge dot is <= t. Each of the
/// k sampled unit directions contributes one sign bit per vector; a pair at
/// angle theta disagrees on a bit with probability theta/pi, so edges and
/// non-edges concentrate on opposite sides of `arccos(t)/pi`.
///
/// The decision threshold sits midway between the two proof margins:
/// `dist_threshold = round(k (arccos(t) - delta/2) / pi)`. A sampled code set
/// is accepted only if every edge pair lands at Hamming distance at most
/// `k (arccos(t) - 2 delta/3) / pi` and every non-edge at least
/// `k (arccos(t) - delta/3) / pi` (which forces the thresholded code to
/// reproduce the edge relation exactly); up to 16 sub-seeds are tried.
pub fn hamming_embed_with_factor(
    g: &DiGraph,
    e: &SimilarityEmbedding,
    delta: f64,
    seed: u64,
    factor: f64,
) -> Result<HammingEmbedding> {
    if g.node_count() != e.node_count() {
        return Err(Error::SizeMismatch {
            graph_nodes: g.node_count(),
            embedding_nodes: e.node_count(),
        });
    }
    if !e.spherical {
        return Err(Error::NotSpherical);
    }
    if delta <= 0.0 || !delta.is_finite() {
        return Err(Error::InvalidParams(format!(
            "hamming_embed needs a finite delta > 0, got {delta}"
        )));
    }
    let t = e.threshold;
    for (u, v) in g.all_pairs() {
        let d = dot(&e.phi_l[u as usize], &e.phi_r[v as usize]);
        if g.has_edge(u, v) && d < t + delta - TOLERANCE {
            return Err(Error::NotRobust(format!(
                "edge ({u}, {v}) has dot {d} < t + delta = {}",
                t + delta
            )));
        }
        if !g.has_edge(u, v) && d > t + TOLERANCE {
            return Err(Error::NotRobust(format!(
                "non-edge ({u}, {v}) has dot {d} > t = {t}"
            )));
        }
    }

    let n = g.node_count();
    let dim = e.dim();
    let k = hamming_code_length(n, delta, factor);
    let theta_t = t.clamp(-1.0, 1.0).acos();
    let dist_threshold = ((k as f64) * (theta_t - delta / 2.0) / std::f64::consts::PI)
        .round()
        .max(0.0) as usize;
    let edge_limit = (k as f64) * (theta_t - 2.0 * delta / 3.0) / std::f64::consts::PI;
    let nonedge_limit = (k as f64) * (theta_t - delta / 3.0) / std::f64::consts::PI;

    for attempt in 0..16u64 {
        let mut rng = Rng::new(mix(seed, attempt));
        let mut h_l = vec![Code::zeros(k); n];
        let mut h_r = vec![Code::zeros(k); n];
        for i in 0..k {
            let direction = rng.unit_vector(dim);
            for u in 0..n {
                if dot(&direction, &e.phi_l[u]) >= 0.0 {
                    h_l[u].set(i, true);
                }
                if dot(&direction, &e.phi_r[u]) >= 0.0 {
                    h_r[u].set(i, true);
                }
            }
        }
        let candidate = HammingEmbedding {
            k,
            h_l,
            h_r,
            dist_threshold,
            sim_threshold: k as i64 - 2 * dist_threshold as i64,
        };
        let margins_ok = g.all_pairs().all(|(u, v)| {
            let d = candidate.hamming_dist(u as usize, v as usize) as f64;
            if g.has_edge(u, v) {
                d <= edge_limit
            } else {
                d >= nonedge_limit
            }
        });
        if margins_ok && candidate.reproduces(g) {
            return Ok(candidate);
        }
    }
    Err(Error::RetriesExhausted(
        "no direction sample met the Hamming margins in 16 attempts".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::Robustness;

    fn self2() -> DiGraph {
        DiGraph::from_edges(2, vec![(0, 0), (1, 1)]).unwrap()
    }

    /// SELF2 optimum stated in the margin convention: threshold at the
    /// non-edge ceiling (-1), edge dots at t + delta = 1.
    fn self2_margin_embedding() -> SimilarityEmbedding {
        SimilarityEmbedding::new(
            vec![vec![1.0], vec![-1.0]],
            vec![vec![1.0], vec![-1.0]],
            -1.0,
        )
        .unwrap()
    }

    #[test]
    fn self2_codes_are_exactly_separated() {
        let g = self2();
        let e = self2_margin_embedding();
        let h = hamming_embed(&g, &e, 2.0, 5).unwrap();
        assert_eq!(h.k, hamming_code_length(2, 2.0, 64.0));
        // Edge pairs coincide, non-edge pairs are complementary.
        assert_eq!(h.hamming_dist(0, 0), 0);
        assert_eq!(h.hamming_dist(1, 1), 0);
        assert_eq!(h.hamming_dist(0, 1), h.k);
        assert_eq!(h.hamming_dist(1, 0), h.k);
        assert!(h.reproduces(&g));
        assert_eq!(h.sim_threshold, h.k as i64 - 2 * h.dist_threshold as i64);
    }

    #[test]
    fn code_length_formula() {
        // k = ceil(64 ln(3) / 4) = ceil(17.58) = 18 for n = 2, delta = 2.
        assert_eq!(hamming_code_length(2, 2.0, 64.0), 18);
    }

    #[test]
    fn no_nonedges_passes_vacuously() {
        let g = DiGraph::from_edges(1, vec![(0, 0)]).unwrap();
        let e = SimilarityEmbedding::new(vec![vec![1.0]], vec![vec![1.0]], 0.5).unwrap();
        let h = hamming_embed(&g, &e, 0.5, 1).unwrap();
        assert!(h.reproduces(&g));
        assert_eq!(h.measured_distance_robustness(&g), Robustness::Infinite);
    }

    #[test]
    fn rejects_non_spherical_input() {
        let g = self2();
        let e = SimilarityEmbedding::new(
            vec![vec![2.0], vec![-2.0]],
            vec![vec![2.0], vec![-2.0]],
            -4.0,
        )
        .unwrap();
        assert!(matches!(
            hamming_embed(&g, &e, 2.0, 0),
            Err(Error::NotSpherical)
        ));
    }

    #[test]
    fn rejects_insufficient_margin() {
        let g = self2();
        // Edge dots are 1 = t + 2, so asking for delta = 2.5 must fail.
        let e = self2_margin_embedding();
        assert!(matches!(
            hamming_embed(&g, &e, 2.5, 0),
            Err(Error::NotRobust(_))
        ));
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let g = self2();
        let e = self2_margin_embedding();
        let a = hamming_embed(&g, &e, 2.0, 42).unwrap();
        let b = hamming_embed(&g, &e, 2.0, 42).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn per_bit_disagreement_tracks_angle_over_pi() {
        // Monte-Carlo check of the key identity: a pair at angle theta
        // disagrees on a random sign bit with probability theta/pi.
        let mut rng = Rng::new(977);
        for &theta in &[
            std::f64::consts::FRAC_PI_4,
            std::f64::consts::FRAC_PI_2,
            2.0,
        ] {
            let x = vec![1.0, 0.0];
            let y = vec![theta.cos(), theta.sin()];
            let trials = 10_000;
            let mut disagree = 0;
            for _ in 0..trials {
                let r = rng.unit_vector(2);
                if (dot(&r, &x) >= 0.0) != (dot(&r, &y) >= 0.0) {
                    disagree += 1;
                }
            }
            let freq = disagree as f64 / trials as f64;
            let want = theta / std::f64::consts::PI;
            assert!(
                (freq - want).abs() < 0.02,
                "theta {theta}: frequency {freq} vs {want}"
            );
        }
    }
}
