//! Spherical distance + similarity embedding from the adjacency SVD.

use crate::embed::{DistanceEmbedding, SimilarityEmbedding, Threshold};
use crate::error::{Error, Result};
use crate::graph::{spectrum, DiGraph};
use crate::linalg::{norm, svd};

/// Build the spherical embedding pair from `A = U S V^T`.
///
/// Out-vectors are rows of `U S^(1/2)` and in-vectors rows of `V S^(1/2)`
/// (restricted to the numerical rank), normalized to unit length; edge dots
/// are then at least `1/sigma1` while non-edge dots are 0. The distance
/// threshold is `sqrt(2 (1 - 1/sigma1))` and the similarity threshold
/// `1/sigma1`, so both views are (1/sigma1)-robust.
///
/// Nodes with no out-edges map to a fresh auxiliary axis, nodes with no
/// in-edges to a second, distinct one (sharing a single axis would put dot 1
/// between a no-out node and a no-in node and falsely imply an edge). That
/// adds at most 2 to the dimension. An edgeless graph degenerates to exactly
/// those two axes with thresholds 0 (distance) and 1 (similarity), under
/// which no pair qualifies.
pub fn svd_construct(g: &DiGraph) -> Result<(DistanceEmbedding, SimilarityEmbedding)> {
    let n = g.node_count();
    if n == 0 {
        return Err(Error::InvalidParams(
            "svd_construct needs at least one node".into(),
        ));
    }

    let sp = spectrum(g);
    let out_deg = g.out_degrees();
    let in_deg = g.in_degrees();
    let need_out_axis = out_deg.contains(&0);
    let need_in_axis = in_deg.contains(&0);

    let k = sp.rank;
    let dim = k + usize::from(need_out_axis) + usize::from(need_in_axis);
    let out_axis = k;
    let in_axis = k + usize::from(need_out_axis);

    let mut phi_out = vec![vec![0.0; dim]; n];
    let mut phi_in = vec![vec![0.0; dim]; n];

    if k > 0 {
        // A single edge already forces sigma1 >= 1 (a unit column).
        debug_assert!(sp.sigma1 >= 1.0 - 1e-9);
        let dec = svd(&g.adjacency_matrix());
        for i in 0..n {
            if out_deg[i] > 0 {
                for l in 0..k {
                    phi_out[i][l] = dec.u.get(i, l) * dec.sigma[l].sqrt();
                }
                let len = norm(&phi_out[i]);
                phi_out[i].iter_mut().for_each(|x| *x /= len);
            }
            if in_deg[i] > 0 {
                for l in 0..k {
                    phi_in[i][l] = dec.v.get(i, l) * dec.sigma[l].sqrt();
                }
                let len = norm(&phi_in[i]);
                phi_in[i].iter_mut().for_each(|x| *x /= len);
            }
        }
    }
    for i in 0..n {
        if out_deg[i] == 0 {
            phi_out[i][out_axis] = 1.0;
        }
        if in_deg[i] == 0 {
            phi_in[i][in_axis] = 1.0;
        }
    }

    let (t_dist, t_sim) = if g.edge_count() == 0 {
        (0.0, 1.0)
    } else {
        let inv = 1.0 / sp.sigma1;
        ((2.0 * (1.0 - inv)).max(0.0).sqrt(), inv)
    };

    let distance =
        DistanceEmbedding::new(phi_out.clone(), phi_in.clone(), Threshold::Uniform(t_dist))?;
    let similarity = SimilarityEmbedding::new(phi_out, phi_in, t_sim)?;
    Ok((distance, similarity))
}
