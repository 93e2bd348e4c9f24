//! Closeness-graph component analysis.
//!
//! The bipartite closeness graph links x_i to y_j for every graph edge
//! (i, j). Components tied together by edge constraints must stay within
//! chained threshold distance of each other; distinct components can be
//! separated arbitrarily, so the distance program is unbounded exactly when
//! every non-edge pair straddles two components.

use crate::graph::DiGraph;

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Component index for each closeness-graph vertex: entries 0..n are the
/// out-copies x_i, entries n..2n the in-copies y_j. Indices are compacted to
/// 0..#components in first-appearance order.
pub fn closeness_components(g: &DiGraph) -> Vec<usize> {
    let n = g.node_count();
    let mut uf = UnionFind::new(2 * n);
    for (i, j) in g.edges() {
        uf.union(i as usize, n + j as usize);
    }
    let mut compact = vec![usize::MAX; 2 * n];
    let mut next = 0;
    (0..2 * n)
        .map(|v| {
            let root = uf.find(v);
            if compact[root] == usize::MAX {
                compact[root] = next;
                next += 1;
            }
            compact[root]
        })
        .collect()
}

/// True iff every non-edge pair (i, j) has x_i and y_j in different
/// closeness components, i.e. the distance program at t = 1 is unbounded.
pub fn distance_robustness_unbounded(g: &DiGraph) -> bool {
    let n = g.node_count();
    let comp = closeness_components(g);
    g.non_edges()
        .all(|(i, j)| comp[i as usize] != comp[n + j as usize])
}

/// Build the separation certificate: each component parks at its own spot on
/// a line, `spread` apart. Edges land at distance 0, non-edges at >= spread.
pub fn separation_embedding(g: &DiGraph, spread: f64) -> crate::embed::DistanceEmbedding {
    let n = g.node_count();
    let comp = closeness_components(g);
    let phi_out = (0..n).map(|i| vec![comp[i] as f64 * spread]).collect();
    let phi_in = (0..n).map(|j| vec![comp[n + j] as f64 * spread]).collect();
    crate::embed::DistanceEmbedding::new(phi_out, phi_in, crate::embed::Threshold::Uniform(1.0))
        .expect("separation embedding is well-formed")
}

/// Breadth-first distance between two closeness vertices (x_i is `i`, y_j is
/// `n + j`), or None if disconnected.
pub fn closeness_bfs_distance(g: &DiGraph, from: usize, to: usize) -> Option<usize> {
    let n = g.node_count();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); 2 * n];
    for (i, j) in g.edges() {
        adj[i as usize].push(n + j as usize);
        adj[n + j as usize].push(i as usize);
    }
    let mut dist = vec![usize::MAX; 2 * n];
    let mut queue = std::collections::VecDeque::new();
    dist[from] = 0;
    queue.push_back(from);
    while let Some(v) = queue.pop_front() {
        if v == to {
            return Some(dist[v]);
        }
        for &w in &adj[v] {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::measure_distance_robustness;
    use crate::graph::{generate, Family};

    #[test]
    fn cycle_three_is_unbounded() {
        // Components {x0,y1}, {x1,y2}, {x2,y0}; every non-edge crosses.
        let g = generate(&Family::Cycle { n: 3 }, 0).unwrap();
        let comp = closeness_components(&g);
        assert_eq!(comp[0], comp[3 + 1]);
        assert_eq!(comp[1], comp[3 + 2]);
        assert_eq!(comp[2], comp[3]);
        assert!(distance_robustness_unbounded(&g));
    }

    #[test]
    fn loopy2_is_bounded() {
        let g = DiGraph::from_edges(2, vec![(0, 0), (0, 1), (1, 1)]).unwrap();
        assert!(!distance_robustness_unbounded(&g));
    }

    #[test]
    fn complete_graph_unbounded_vacuously() {
        let g = generate(&Family::BidirectedCompleteWithLoops { n: 3 }, 0).unwrap();
        assert!(distance_robustness_unbounded(&g));
    }

    #[test]
    fn separation_certificate_measures_past_spread() {
        let g = generate(&Family::Cycle { n: 3 }, 0).unwrap();
        let e = separation_embedding(&g, 5.0);
        let r = measure_distance_robustness(&g, &e).unwrap();
        assert!(r.valid);
        assert!(r.delta.at_least(24.0));
    }

    #[test]
    fn bfs_distance_counts_chain_hops() {
        // LOOPY2: x1 - y1 - x0 - y0 is the 3-hop chain behind the optimum 8.
        let g = DiGraph::from_edges(2, vec![(0, 0), (0, 1), (1, 1)]).unwrap();
        assert_eq!(closeness_bfs_distance(&g, 1, 2), Some(3));
    }
}
