//! Sign sets realizable by oriented hyperplane arrangements, and the
//! reduction graphs built from them.

use super::DiGraph;
use crate::error::{Error, Result};
use crate::linalg::dot;
use crate::rng::Rng;
use std::collections::BTreeSet;

/// A duplicate-free set of sign vectors of common length, stored as `bool`
/// rows (`true` = plus).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignSet {
    n_coords: usize,
    vectors: BTreeSet<Vec<bool>>,
}

impl SignSet {
    pub fn new(n_coords: usize, vectors: impl IntoIterator<Item = Vec<bool>>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for v in vectors {
            if v.len() != n_coords {
                return Err(Error::InvalidParams(format!(
                    "sign vector of length {} in a set of length-{n_coords} vectors",
                    v.len()
                )));
            }
            set.insert(v);
        }
        Ok(SignSet {
            n_coords,
            vectors: set,
        })
    }

    pub fn n_coords(&self) -> usize {
        self.n_coords
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Vectors in sorted order.
    pub fn vectors(&self) -> impl Iterator<Item = &Vec<bool>> {
        self.vectors.iter()
    }

    pub fn contains(&self, v: &[bool]) -> bool {
        self.vectors.contains(v)
    }
}

/// Distance-form reduction graph over a sign set.
///
/// Nodes are laid out as the a-block, then the b-block (both of size
/// `n_coords`), then one c-node per sign vector in sorted order. Edges are
/// (a_i, c_s) for plus coordinates and (b_i, c_s) for minus coordinates, so
/// the edge count is exactly `n_coords * |S|`.
pub fn km_distance_graph(s: &SignSet) -> Result<DiGraph> {
    if s.is_empty() {
        return Err(Error::EmptySignSet);
    }
    let nc = s.n_coords() as u32;
    let mut edges = Vec::new();
    for (idx, sigma) in s.vectors().enumerate() {
        let c = 2 * nc + idx as u32;
        for (i, &plus) in sigma.iter().enumerate() {
            if plus {
                edges.push((i as u32, c));
            } else {
                edges.push((nc + i as u32, c));
            }
        }
    }
    DiGraph::from_edges(2 * s.n_coords() + s.len(), edges)
}

/// Similarity-form reduction graph: nodes are the a-block then one c-node per
/// sign vector; edges are (a_i, c_s) exactly for plus coordinates.
pub fn km_similarity_graph(s: &SignSet) -> Result<DiGraph> {
    if s.is_empty() {
        return Err(Error::EmptySignSet);
    }
    let nc = s.n_coords() as u32;
    let mut edges = Vec::new();
    for (idx, sigma) in s.vectors().enumerate() {
        let c = nc + idx as u32;
        for (i, &plus) in sigma.iter().enumerate() {
            if plus {
                edges.push((i as u32, c));
            }
        }
    }
    DiGraph::from_edges(s.n_coords() + s.len(), edges)
}

/// Sample a k-realizable sign set from a random oriented hyperplane
/// arrangement and random points in the unit ball.
///
/// Two anchor points are drawn first and every hyperplane is oriented and
/// offset to strictly separate them, which force-includes the all-plus and
/// all-minus vectors; the remaining points fill in other cells. Realizability
/// holds by construction.
pub fn realizable_sign_set(
    n_hyperplanes: usize,
    k: usize,
    n_points: usize,
    seed: u64,
) -> Result<SignSet> {
    if n_hyperplanes < 1 || k < 1 || n_points < 2 {
        return Err(Error::InvalidParams(
            "need n_hyperplanes >= 1, k >= 1, n_points >= 2".into(),
        ));
    }
    let base = Rng::new(seed);
    'attempt: for attempt in 0..64u64 {
        let mut rng = base.split(attempt);
        let normals: Vec<Vec<f64>> = (0..n_hyperplanes).map(|_| rng.unit_vector(k)).collect();
        let plus_anchor = rng.in_unit_ball(k);
        let minus_anchor = rng.in_unit_ball(k);

        // Orient each normal toward the plus anchor and drop the offset
        // strictly between the two anchors' projections.
        let mut planes: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n_hyperplanes);
        for normal in normals {
            let gap = dot(&normal, &plus_anchor) - dot(&normal, &minus_anchor);
            if gap.abs() < 1e-9 {
                continue 'attempt;
            }
            let normal: Vec<f64> = if gap > 0.0 {
                normal
            } else {
                normal.into_iter().map(|x| -x).collect()
            };
            let lo = dot(&normal, &minus_anchor);
            let hi = dot(&normal, &plus_anchor);
            let offset = rng.range_f64(lo + 0.05 * (hi - lo), hi - 0.05 * (hi - lo));
            planes.push((normal, offset));
        }

        let mut points = vec![plus_anchor.clone(), minus_anchor.clone()];
        while points.len() < n_points {
            points.push(rng.in_unit_ball(k));
        }

        let mut vectors = Vec::with_capacity(points.len());
        for p in &points {
            let mut sig = Vec::with_capacity(planes.len());
            let mut on_plane = false;
            for (normal, offset) in &planes {
                let side = dot(normal, p) - offset;
                if side.abs() < 1e-12 {
                    on_plane = true;
                    break;
                }
                sig.push(side > 0.0);
            }
            if on_plane {
                continue 'attempt;
            }
            vectors.push(sig);
        }
        let set = SignSet::new(n_hyperplanes, vectors)?;
        debug_assert!(set.contains(&vec![true; n_hyperplanes]));
        debug_assert!(set.contains(&vec![false; n_hyperplanes]));
        return Ok(set);
    }
    Err(Error::SamplingFailed(
        "could not realize all-plus and all-minus cells".into(),
    ))
}
