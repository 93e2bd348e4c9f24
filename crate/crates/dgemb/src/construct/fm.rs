//! Constant-norm incidence embedding and the DAG translational construction
//! built on top of it.

use crate::embed::TranslationalEmbedding;
use crate::error::Result;
use crate::graph::{DiGraph, Undirected};

/// Undirected embedding with a common squared norm and exactly two pairwise
/// squared distances: `2 (norm_sq - 1)` across edges and `2 norm_sq` across
/// non-edges.
#[derive(Debug, Clone, PartialEq)]
pub struct FmEmbedding {
    pub psi: Vec<Vec<f64>>,
    /// Common squared norm; `max(max degree, 1)`, so always >= 1.
    pub norm_sq: f64,
}

impl FmEmbedding {
    pub fn dim(&self) -> usize {
        self.psi.first().map_or(0, Vec::len)
    }
}

/// Edge-incidence construction: one coordinate per undirected edge set to 1
/// at both endpoints, plus one private coordinate per vertex padding the
/// squared norm up to `max(max degree, 1)`.
///
/// Shared edge coordinates cancel inside edge pairs, which is what pulls
/// edge distances below non-edge distances by exactly 2.
pub fn fm_embed(gu: &Undirected) -> FmEmbedding {
    let n = gu.node_count();
    let degrees = gu.degrees();
    let max_degree = degrees.iter().copied().max().unwrap_or(0);
    let norm_sq = (max_degree as f64).max(1.0);

    let edges: Vec<(u32, u32)> = gu.edges().collect();
    let dim = edges.len() + n;
    let mut psi = vec![vec![0.0; dim]; n];
    for (coord, &(u, v)) in edges.iter().enumerate() {
        psi[u as usize][coord] = 1.0;
        psi[v as usize][coord] = 1.0;
    }
    for i in 0..n {
        psi[i][edges.len() + i] = (norm_sq - degrees[i] as f64).sqrt();
    }
    FmEmbedding { psi, norm_sq }
}

/// Uniform translational embedding of a directed acyclic graph.
///
/// Nodes are spread along a fresh leading axis by topological position with
/// spacing 1/(n-1), the incidence embedding of the undirected version fills
/// the remaining coordinates, z is the leading axis, and the threshold is
/// `sqrt(2 norm_sq - 1)`. Forward edges then land strictly inside the
/// threshold, while non-edges and all backward pairs stay strictly outside.
pub fn dag_translational(g: &DiGraph) -> Result<TranslationalEmbedding> {
    let order = g.topological_order()?;
    let n = g.node_count();
    let mut position = vec![0usize; n];
    for (idx, &v) in order.iter().enumerate() {
        position[v as usize] = idx;
    }

    let fm = fm_embed(&g.to_undirected());
    let spacing = if n > 1 { 1.0 / (n as f64 - 1.0) } else { 1.0 };
    let dim = fm.dim() + 1;
    let phi: Vec<Vec<f64>> = (0..n)
        .map(|v| {
            let mut coords = Vec::with_capacity(dim);
            coords.push(position[v] as f64 * spacing);
            coords.extend_from_slice(&fm.psi[v]);
            coords
        })
        .collect();
    let mut z = vec![0.0; dim];
    z[0] = 1.0;
    let t = (2.0 * fm.norm_sq - 1.0).sqrt();
    TranslationalEmbedding::new(phi, z, vec![t; n])
}
