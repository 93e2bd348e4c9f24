//! Directed-graph representation, deterministic generators, edge-list I/O,
//! and adjacency-spectrum computation.

mod edgelist;
mod generate;
mod signset;
mod spectrum;

pub use edgelist::{read_edge_list, write_edge_list};
pub use generate::{generate, Family};
pub use signset::{km_distance_graph, km_similarity_graph, realizable_sign_set, SignSet};
pub use spectrum::{spectrum, Spectrum};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use std::collections::BTreeSet;

/// Directed graph on `n` nodes; self-loops allowed, no duplicate edges.
///
/// Immutable after construction. The edge set iterates in sorted order so
/// every downstream computation is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiGraph {
    n: usize,
    edges: BTreeSet<(u32, u32)>,
}

impl DiGraph {
    /// Graph with no edges.
    pub fn empty(n: usize) -> Self {
        DiGraph {
            n,
            edges: BTreeSet::new(),
        }
    }

    /// Build from an edge list, validating endpoints.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if (u as usize) >= n || (v as usize) >= n {
                return Err(Error::InvalidParams(format!(
                    "edge ({u}, {v}) out of range for n = {n}"
                )));
            }
            set.insert((u, v));
        }
        Ok(DiGraph { n, edges: set })
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.edges.contains(&(u, v))
    }

    /// Edges in sorted order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.edges.iter().copied()
    }

    /// All ordered pairs (u, v), including u = v.
    pub fn all_pairs(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        let n = self.n as u32;
        (0..n).flat_map(move |u| (0..n).map(move |v| (u, v)))
    }

    /// Ordered non-edge pairs (including self pairs that are not loops).
    pub fn non_edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.all_pairs().filter(move |&(u, v)| !self.has_edge(u, v))
    }

    pub fn adjacency_matrix(&self) -> Matrix {
        let mut a = Matrix::zeros(self.n, self.n);
        for &(u, v) in &self.edges {
            a.set(u as usize, v as usize, 1.0);
        }
        a
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(u, _) in &self.edges {
            d[u as usize] += 1;
        }
        d
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(_, v) in &self.edges {
            d[v as usize] += 1;
        }
        d
    }

    pub fn max_out_degree(&self) -> usize {
        self.out_degrees().into_iter().max().unwrap_or(0)
    }

    pub fn max_in_degree(&self) -> usize {
        self.in_degrees().into_iter().max().unwrap_or(0)
    }

    /// Undirected version: one undirected edge per directed edge (u, v) with
    /// u != v; self-loops are dropped.
    pub fn to_undirected(&self) -> Undirected {
        let mut set = BTreeSet::new();
        for &(u, v) in &self.edges {
            if u != v {
                set.insert((u.min(v), u.max(v)));
            }
        }
        Undirected {
            n: self.n,
            edges: set,
        }
    }

    /// Topological order (smallest ready node first), or `Err(CyclicGraph)`
    /// if the graph has a directed cycle; self-loops count as cycles.
    pub fn topological_order(&self) -> Result<Vec<u32>> {
        if let Some(&(u, _)) = self.edges.iter().find(|&&(u, v)| u == v) {
            return Err(Error::CyclicGraph(format!(" (self-loop at node {u})")));
        }
        let mut indeg = vec![0usize; self.n];
        for &(_, v) in &self.edges {
            indeg[v as usize] += 1;
        }
        let mut ready: std::collections::BinaryHeap<std::cmp::Reverse<u32>> = (0..self.n as u32)
            .filter(|&v| indeg[v as usize] == 0)
            .map(std::cmp::Reverse)
            .collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(std::cmp::Reverse(u)) = ready.pop() {
            order.push(u);
            for &(_, b) in self.edges.range((u, 0)..=(u, u32::MAX)) {
                indeg[b as usize] -= 1;
                if indeg[b as usize] == 0 {
                    ready.push(std::cmp::Reverse(b));
                }
            }
        }
        if order.len() != self.n {
            return Err(Error::CyclicGraph(String::new()));
        }
        Ok(order)
    }
}

/// Simple undirected graph (edges stored as (min, max) pairs).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Undirected {
    n: usize,
    edges: BTreeSet<(u32, u32)>,
}

impl Undirected {
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if (u as usize) >= n || (v as usize) >= n {
                return Err(Error::InvalidParams(format!(
                    "edge ({u}, {v}) out of range for n = {n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidParams(format!(
                    "self-loop ({u}, {u}) not allowed in an undirected graph"
                )));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Undirected { n, edges: set })
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.edges.iter().copied()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(u, v) in &self.edges {
            d[u as usize] += 1;
            d[v as usize] += 1;
        }
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_edges_validates_and_dedups() {
        let g = DiGraph::from_edges(3, vec![(0, 1), (0, 1), (2, 2)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_edge(2, 2));
        assert!(DiGraph::from_edges(2, vec![(0, 2)]).is_err());
    }

    #[test]
    fn adjacency_matches_edges() {
        let g = DiGraph::from_edges(3, vec![(0, 1), (1, 2)]).unwrap();
        let a = g.adjacency_matrix();
        for (u, v) in g.all_pairs() {
            let want = if g.has_edge(u, v) { 1.0 } else { 0.0 };
            assert_eq!(a.get(u as usize, v as usize), want);
        }
    }

    #[test]
    fn topological_order_diamond() {
        let g = DiGraph::from_edges(4, vec![(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let order = g.topological_order().unwrap();
        let pos: Vec<usize> = {
            let mut p = vec![0; 4];
            for (i, &v) in order.iter().enumerate() {
                p[v as usize] = i;
            }
            p
        };
        for (u, v) in g.edges() {
            assert!(pos[u as usize] < pos[v as usize]);
        }
    }

    #[test]
    fn topological_order_rejects_cycles_and_loops() {
        let c3 = DiGraph::from_edges(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(c3.topological_order().is_err());
        let looped = DiGraph::from_edges(1, vec![(0, 0)]).unwrap();
        assert!(looped.topological_order().is_err());
    }

    #[test]
    fn undirected_drops_loops_and_merges_directions() {
        let g = DiGraph::from_edges(3, vec![(0, 1), (1, 0), (2, 2)]).unwrap();
        let u = g.to_undirected();
        assert_eq!(u.edge_count(), 1);
        assert!(u.has_edge(1, 0));
    }
}
