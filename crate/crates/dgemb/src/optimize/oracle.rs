//! Independent ground truth for the solvers on instances with at most two
//! nodes, where optima provably live in one dimension (distance, collinear
//! chains) or two (similarity, extreme points of the 4x4 unit-diagonal Gram
//! spectrahedron have rank <= 2).

use super::closeness::{closeness_bfs_distance, closeness_components};
use crate::embed::Robustness;
use crate::error::{Error, Result};
use crate::graph::DiGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleKind {
    Distance,
    Similarity,
}

const GRID_STEP: f64 = 1e-3;
const GRID_LIMIT: f64 = 5.0;

/// Max end-to-end 1-D distance of a 3-hop chain of unit-capped segments,
/// found by dense grid search over the two intermediate points.
fn chain3_max_distance() -> f64 {
    let steps = (1.0 / GRID_STEP) as i64;
    let mut best: f64 = 0.0;
    // p0 = 0; p1 in [-1, 1]; p2 in [p1 - 1, p1 + 1] (clamped to the box);
    // the far endpoint one full hop beyond p2.
    for i in -steps..=steps {
        let p1 = i as f64 * GRID_STEP;
        let lo = ((p1 - 1.0).max(-GRID_LIMIT) / GRID_STEP).ceil() as i64;
        let hi = ((p1 + 1.0).min(GRID_LIMIT) / GRID_STEP).floor() as i64;
        for j in lo..=hi {
            let p2 = j as f64 * GRID_STEP;
            best = best.max(p2.abs() + 1.0);
        }
    }
    best
}

fn oracle_distance(g: &DiGraph) -> Result<Robustness> {
    let n = g.node_count();
    let comp = closeness_components(g);
    let mut worst: Option<f64> = None;
    for (i, j) in g.non_edges() {
        let (xi, yj) = (i as usize, n + j as usize);
        if comp[xi] != comp[yj] {
            continue;
        }
        let hops = closeness_bfs_distance(g, xi, yj).expect("same component implies reachable");
        // Paths in the bipartite closeness graph from an x-vertex to a
        // y-vertex have odd length; on two nodes a non-adjacent pair is
        // exactly three hops apart.
        if hops != 3 {
            return Err(Error::TooLarge(format!(
                "unexpected chain length {hops} in tiny instance"
            )));
        }
        let reach = chain3_max_distance();
        let delta = reach * reach - 1.0;
        worst = Some(worst.map_or(delta, |w: f64| w.min(delta)));
    }
    Ok(worst.map_or(Robustness::Infinite, Robustness::Finite))
}

/// Margin between the smallest edge cosine and the largest non-edge cosine
/// for unit vectors parameterized by angles (first L-vector pinned at 0).
fn similarity_margin(g: &DiGraph, angles: &[f64]) -> f64 {
    let n = g.node_count();
    let angle = |idx: usize| if idx == 0 { 0.0 } else { angles[idx - 1] };
    let mut min_edge = f64::INFINITY;
    let mut max_nonedge = f64::NEG_INFINITY;
    for (u, v) in g.all_pairs() {
        let d = (angle(u as usize) - angle(n + v as usize)).cos();
        if g.has_edge(u, v) {
            min_edge = min_edge.min(d);
        } else {
            max_nonedge = max_nonedge.max(d);
        }
    }
    min_edge - max_nonedge
}

fn oracle_similarity(g: &DiGraph) -> Robustness {
    let n = g.node_count();
    if g.edge_count() == 0 || g.non_edges().next().is_none() {
        return Robustness::Infinite;
    }
    let free = 2 * n - 1;
    let tau = 2.0 * std::f64::consts::PI;

    // Multiscale grid: a coarse full sweep, then two refinement passes
    // around the leading candidates down to sub-1e-3 resolution.
    let coarse = 0.05;
    let mut candidates: Vec<(f64, Vec<f64>)> = Vec::new();
    let steps = (tau / coarse).ceil() as usize;
    let mut angles = vec![0.0; free];
    let mut indices = vec![0usize; free];
    loop {
        for (k, &idx) in indices.iter().enumerate() {
            angles[k] = idx as f64 * coarse;
        }
        let margin = similarity_margin(g, &angles);
        candidates.push((margin, angles.clone()));
        if candidates.len() > 64 {
            candidates.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
            candidates.truncate(32);
        }
        // Odometer increment over the free angles.
        let mut k = 0;
        loop {
            if k == free {
                break;
            }
            indices[k] += 1;
            if indices[k] < steps {
                break;
            }
            indices[k] = 0;
            k += 1;
        }
        if k == free {
            break;
        }
    }
    candidates.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    candidates.truncate(32);

    let mut best = candidates[0].clone();
    let mut window = coarse;
    for refine_step in [coarse / 10.0, coarse / 100.0] {
        let mut next: Vec<(f64, Vec<f64>)> = Vec::new();
        for (_, center) in &candidates {
            let span = (window / refine_step).round() as i64;
            let mut local = center.clone();
            // Coordinate sweeps around the candidate, two rounds.
            for _ in 0..2 {
                for k in 0..free {
                    let base = local[k];
                    let mut best_k = (similarity_margin(g, &local), base);
                    for s in -span..=span {
                        local[k] = base + s as f64 * refine_step;
                        let m = similarity_margin(g, &local);
                        if m > best_k.0 {
                            best_k = (m, local[k]);
                        }
                    }
                    local[k] = best_k.1;
                }
            }
            let m = similarity_margin(g, &local);
            next.push((m, local));
        }
        next.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
        next.truncate(8);
        if next[0].0 > best.0 {
            best = next[0].clone();
        }
        candidates = next;
        window = refine_step * 2.0;
    }
    Robustness::Finite(best.0.max(0.0))
}

/// Exact optimum for n <= 2 by case analysis plus dense grid search.
pub fn oracle_robustness_tiny(g: &DiGraph, kind: OracleKind) -> Result<Robustness> {
    if g.node_count() > 2 {
        return Err(Error::TooLarge(format!(
            "oracle handles n <= 2, got n = {}",
            g.node_count()
        )));
    }
    match kind {
        OracleKind::Distance => oracle_distance(g),
        OracleKind::Similarity => Ok(oracle_similarity(g)),
    }
}
