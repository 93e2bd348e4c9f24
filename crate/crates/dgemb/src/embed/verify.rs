//! Exact verification of the defining biconditionals.
//!
//! Distance and similarity verification quantify over all ordered pairs
//! including u = v; translational verification skips self pairs. The
//! comparison tolerance slightly favors the "edge" side of each predicate so
//! constructions that land pairs exactly on the threshold stay valid.

use super::{DistanceEmbedding, SimilarityEmbedding, TranslationalEmbedding, TOLERANCE};
use crate::error::{Error, Result};
use crate::graph::DiGraph;
use crate::linalg::{dist_sq, dot};

/// Verification outcome; `witness` is the lexicographically least violating
/// pair when the verdict is false.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verdict {
    pub ok: bool,
    pub witness: Option<(u32, u32)>,
}

impl Verdict {
    fn pass() -> Self {
        Verdict {
            ok: true,
            witness: None,
        }
    }

    fn fail(u: u32, v: u32) -> Self {
        Verdict {
            ok: false,
            witness: Some((u, v)),
        }
    }
}

fn check_size(g: &DiGraph, nodes: usize) -> Result<()> {
    if g.node_count() != nodes {
        return Err(Error::SizeMismatch {
            graph_nodes: g.node_count(),
            embedding_nodes: nodes,
        });
    }
    Ok(())
}

/// Does the pair read as "close" (an edge) under the distance predicate?
#[inline]
pub(crate) fn distance_close(e: &DistanceEmbedding, u: usize, v: usize) -> bool {
    let t = e.threshold.for_source(u);
    dist_sq(&e.phi_out[u], &e.phi_in[v]) <= t * t + TOLERANCE
}

/// True iff for every ordered pair (u, v), including u = v:
/// `(u, v) in E  <=>  |phi_out(u) - phi_in(v)| <= t` (or `t_u`).
pub fn verify_distance(g: &DiGraph, e: &DistanceEmbedding) -> Result<Verdict> {
    check_size(g, e.node_count())?;
    for (u, v) in g.all_pairs() {
        if g.has_edge(u, v) != distance_close(e, u as usize, v as usize) {
            return Ok(Verdict::fail(u, v));
        }
    }
    Ok(Verdict::pass())
}

#[inline]
pub(crate) fn similarity_close(e: &SimilarityEmbedding, u: usize, v: usize) -> bool {
    dot(&e.phi_l[u], &e.phi_r[v]) >= e.threshold - TOLERANCE
}

/// True iff for every ordered pair (u, v), including u = v:
/// `(u, v) in E  <=>  phi_l(u) . phi_r(v) >= t`.
pub fn verify_similarity(g: &DiGraph, e: &SimilarityEmbedding) -> Result<Verdict> {
    check_size(g, e.node_count())?;
    for (u, v) in g.all_pairs() {
        if g.has_edge(u, v) != similarity_close(e, u as usize, v as usize) {
            return Ok(Verdict::fail(u, v));
        }
    }
    Ok(Verdict::pass())
}

/// True iff for every ordered pair with u != v:
/// `(u, v) in E  <=>  |phi(v) - (phi(u) + z)| <= t_u`. Self pairs are skipped.
pub fn verify_translational(g: &DiGraph, e: &TranslationalEmbedding) -> Result<Verdict> {
    check_size(g, e.node_count())?;
    let dim = e.dim();
    let mut shifted = vec![0.0; dim];
    for (u, v) in g.all_pairs() {
        if u == v {
            continue;
        }
        let (ui, vi) = (u as usize, v as usize);
        for k in 0..dim {
            shifted[k] = e.phi[ui][k] + e.z[k];
        }
        let t = e.thresholds[ui];
        let close = dist_sq(&e.phi[vi], &shifted) <= t * t + TOLERANCE;
        if g.has_edge(u, v) != close {
            return Ok(Verdict::fail(u, v));
        }
    }
    Ok(Verdict::pass())
}
