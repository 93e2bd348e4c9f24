//! Deterministic graph generators.

use super::signset::{km_distance_graph, km_similarity_graph, realizable_sign_set};
use super::DiGraph;
use crate::error::{Error, Result};
use crate::rng::Rng;

/// Graph family plus its parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    /// Directed path 0 -> 1 -> ... -> n-1.
    Path { n: usize },
    /// Directed cycle; `Cycle { n: 1 }` is the empty graph (a lone self-loop
    /// would be vacuous since translational checks skip u = v) and
    /// `Cycle { n: 2 }` is the bidirected pair.
    Cycle { n: usize },
    /// All edges from the first `left` nodes to the remaining `right` nodes.
    CompleteBipartite { left: usize, right: usize },
    /// Every ordered pair present, self-loops included.
    BidirectedCompleteWithLoops { n: usize },
    /// Each ordered non-self-loop pair independently with probability p.
    RandomGnp { n: usize, p: f64 },
    /// G(n, p) edges oriented from the lower index to the higher.
    RandomDag { n: usize, p: f64 },
    /// G(n, p) resampled until max in-degree and out-degree are <= bound.
    BoundedDegree { n: usize, p: f64, bound: usize },
    /// Reduction graph over a sampled realizable sign set (distance form).
    KmDistance {
        coords: usize,
        dim: usize,
        points: usize,
    },
    /// Reduction graph over a sampled realizable sign set (similarity form).
    KmSimilarity {
        coords: usize,
        dim: usize,
        points: usize,
    },
}

impl Family {
    /// Parse a family from its CLI name and the generic parameter set.
    ///
    /// `n` is the node count (total across both sides for
    /// `complete_bipartite`, coordinate count for the km families); `deg` is
    /// the degree bound for `bounded_degree` and the arrangement dimension
    /// for the km families.
    pub fn from_cli(name: &str, n: usize, p: Option<f64>, deg: Option<usize>) -> Result<Family> {
        let p_or = |default: f64| p.unwrap_or(default);
        match name {
            "path" => Ok(Family::Path { n }),
            "cycle" => Ok(Family::Cycle { n }),
            "complete_bipartite" => Ok(Family::CompleteBipartite {
                left: n.div_ceil(2),
                right: n / 2,
            }),
            "bidirected_complete_with_loops" => Ok(Family::BidirectedCompleteWithLoops { n }),
            "random_gnp" => Ok(Family::RandomGnp { n, p: p_or(0.5) }),
            "random_dag" => Ok(Family::RandomDag { n, p: p_or(0.5) }),
            "bounded_degree" => Ok(Family::BoundedDegree {
                n,
                p: p_or(0.5),
                bound: deg.unwrap_or(3),
            }),
            "km_distance" => Ok(Family::KmDistance {
                coords: n,
                dim: deg.unwrap_or(2),
                points: 20 * n.max(1),
            }),
            "km_similarity" => Ok(Family::KmSimilarity {
                coords: n,
                dim: deg.unwrap_or(2),
                points: 20 * n.max(1),
            }),
            other => Err(Error::UnknownFamily(other.to_string())),
        }
    }
}

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParams(format!("p = {p} outside [0, 1]")));
    }
    Ok(())
}

fn gnp_edges(n: usize, p: f64, rng: &mut Rng) -> Vec<(u32, u32)> {
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in 0..n as u32 {
            if u != v && rng.next_bool(p) {
                edges.push((u, v));
            }
        }
    }
    edges
}

/// Deterministic generator: the same (family, seed) always yields the same
/// graph.
pub fn generate(family: &Family, seed: u64) -> Result<DiGraph> {
    match *family {
        Family::Path { n } => {
            if n < 1 {
                return Err(Error::InvalidParams("path needs n >= 1".into()));
            }
            DiGraph::from_edges(n, (0..n.saturating_sub(1) as u32).map(|i| (i, i + 1)))
        }
        Family::Cycle { n } => {
            if n < 1 {
                return Err(Error::InvalidParams("cycle needs n >= 1".into()));
            }
            if n == 1 {
                return Ok(DiGraph::empty(1));
            }
            let mut edges: Vec<(u32, u32)> = (0..n as u32 - 1).map(|i| (i, i + 1)).collect();
            edges.push((n as u32 - 1, 0));
            DiGraph::from_edges(n, edges)
        }
        Family::CompleteBipartite { left, right } => {
            if left < 1 || right < 1 {
                return Err(Error::InvalidParams(
                    "complete_bipartite needs both sides non-empty".into(),
                ));
            }
            let edges =
                (0..left as u32).flat_map(|u| (0..right as u32).map(move |v| (u, left as u32 + v)));
            DiGraph::from_edges(left + right, edges)
        }
        Family::BidirectedCompleteWithLoops { n } => {
            if n < 1 {
                return Err(Error::InvalidParams("needs n >= 1".into()));
            }
            DiGraph::from_edges(
                n,
                (0..n as u32).flat_map(|u| (0..n as u32).map(move |v| (u, v))),
            )
        }
        Family::RandomGnp { n, p } => {
            if n < 1 {
                return Err(Error::InvalidParams("random_gnp needs n >= 1".into()));
            }
            check_probability(p)?;
            let mut rng = Rng::new(seed);
            DiGraph::from_edges(n, gnp_edges(n, p, &mut rng))
        }
        Family::RandomDag { n, p } => {
            if n < 1 {
                return Err(Error::InvalidParams("random_dag needs n >= 1".into()));
            }
            check_probability(p)?;
            let mut rng = Rng::new(seed);
            let edges = gnp_edges(n, p, &mut rng)
                .into_iter()
                .map(|(u, v)| (u.min(v), u.max(v)));
            DiGraph::from_edges(n, edges)
        }
        Family::BoundedDegree { n, p, bound } => {
            if n < 1 {
                return Err(Error::InvalidParams("bounded_degree needs n >= 1".into()));
            }
            check_probability(p)?;
            let base = Rng::new(seed);
            for attempt in 0..10_000u64 {
                let mut rng = base.split(attempt);
                let g = DiGraph::from_edges(n, gnp_edges(n, p, &mut rng))?;
                if g.max_in_degree() <= bound && g.max_out_degree() <= bound {
                    return Ok(g);
                }
            }
            Err(Error::SamplingFailed(format!(
                "no G({n}, {p}) sample met degree bound {bound} in 10000 attempts"
            )))
        }
        Family::KmDistance {
            coords,
            dim,
            points,
        } => {
            let s = realizable_sign_set(coords, dim, points, seed)?;
            km_distance_graph(&s)
        }
        Family::KmSimilarity {
            coords,
            dim,
            points,
        } => {
            let s = realizable_sign_set(coords, dim, points, seed)?;
            km_similarity_graph(&s)
        }
    }
}
