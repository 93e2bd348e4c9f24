//! Adjacency-spectrum summary.

use super::DiGraph;
use crate::linalg::{numerical_rank, svd};

/// Numerical rank and largest singular value of the adjacency matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spectrum {
    pub rank: usize,
    pub sigma1: f64,
}

/// Compute the spectrum with the in-repo Jacobi SVD. Deterministic; an empty
/// edge set yields rank 0 and sigma1 = 0.
pub fn spectrum(g: &DiGraph) -> Spectrum {
    if g.edge_count() == 0 || g.node_count() == 0 {
        return Spectrum {
            rank: 0,
            sigma1: 0.0,
        };
    }
    let s = svd(&g.adjacency_matrix());
    Spectrum {
        rank: numerical_rank(&s.sigma),
        sigma1: s.sigma.first().copied().unwrap_or(0.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};
    use crate::linalg::Matrix;

    #[test]
    fn all_ones_matrix() {
        let g = generate(&Family::BidirectedCompleteWithLoops { n: 3 }, 0).unwrap();
        let s = spectrum(&g);
        assert_eq!(s.rank, 1);
        assert!((s.sigma1 - 3.0).abs() < 1e-9);
    }

    #[test]
    fn empty_graph() {
        let s = spectrum(&DiGraph::empty(4));
        assert_eq!(s.rank, 0);
        assert_eq!(s.sigma1, 0.0);
    }

    #[test]
    fn cycle_three_is_orthonormal() {
        // Independent check: A^T A = I for a permutation matrix, so every
        // singular value is exactly 1 and the rank is full.
        let g = generate(&Family::Cycle { n: 3 }, 0).unwrap();
        let a = g.adjacency_matrix();
        let mut ata = Matrix::zeros(3, 3);
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = 0.0;
                for k in 0..3 {
                    acc += a.get(k, i) * a.get(k, j);
                }
                ata.set(i, j, acc);
            }
        }
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert_eq!(ata.get(i, j), want);
            }
        }

        let s = spectrum(&g);
        assert_eq!(s.rank, 3);
        assert!((s.sigma1 - 1.0).abs() < 1e-9);
    }

    #[test]
    fn sigma1_bounded_by_degree_product() {
        for seed in 0..40 {
            let g = generate(
                &Family::BoundedDegree {
                    n: 18,
                    p: 0.12,
                    bound: 4,
                },
                seed,
            )
            .unwrap();
            let s = spectrum(&g);
            let bound = ((g.max_out_degree() * g.max_in_degree()) as f64).sqrt();
            assert!(s.sigma1 <= bound + 1e-9, "sigma1 {} > {}", s.sigma1, bound);
        }
    }

    #[test]
    fn spectrum_invariant_under_relabeling() {
        let g = generate(&Family::RandomGnp { n: 12, p: 0.3 }, 5).unwrap();
        // Deterministic relabeling: reverse node order.
        let n = g.node_count() as u32;
        let relabeled = DiGraph::from_edges(
            g.node_count(),
            g.edges().map(|(u, v)| (n - 1 - u, n - 1 - v)),
        )
        .unwrap();
        let a = spectrum(&g);
        let b = spectrum(&relabeled);
        assert_eq!(a.rank, b.rank);
        assert!((a.sigma1 - b.sigma1).abs() < 1e-9);
    }
}
