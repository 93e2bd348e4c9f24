//! Translational infeasibility certificates.

use crate::graph::DiGraph;

/// Search for a directed cycle in which every edge's reverse is absent.
///
/// Each one-way edge (x, y) forces the embedded displacement along z to grow
/// strictly, so such a cycle telescopes to a contradiction: its presence
/// certifies that no translational embedding exists. Returning `None` is NOT
/// a feasibility certificate.
///
/// The cycle is found by depth-first search on the one-way-edge subgraph and
/// returned as its node list in order.
pub fn translational_obstruction(g: &DiGraph) -> Option<Vec<u32>> {
    let n = g.node_count();
    let one_way: Vec<Vec<u32>> = (0..n as u32)
        .map(|u| {
            (0..n as u32)
                .filter(|&v| u != v && g.has_edge(u, v) && !g.has_edge(v, u))
                .collect()
        })
        .collect();

    // Iterative DFS with tri-state coloring; a back edge closes a cycle.
    const WHITE: u8 = 0;
    const GRAY: u8 = 1;
    const BLACK: u8 = 2;
    let mut color = vec![WHITE; n];
    let mut parent = vec![u32::MAX; n];

    for start in 0..n as u32 {
        if color[start as usize] != WHITE {
            continue;
        }
        let mut stack: Vec<(u32, usize)> = vec![(start, 0)];
        color[start as usize] = GRAY;
        while let Some(&mut (u, ref mut next)) = stack.last_mut() {
            if *next < one_way[u as usize].len() {
                let v = one_way[u as usize][*next];
                *next += 1;
                match color[v as usize] {
                    WHITE => {
                        color[v as usize] = GRAY;
                        parent[v as usize] = u;
                        stack.push((v, 0));
                    }
                    GRAY => {
                        // Walk parents from u back to v to recover the cycle.
                        let mut cycle = vec![v];
                        let mut cur = u;
                        while cur != v {
                            cycle.push(cur);
                            cur = parent[cur as usize];
                        }
                        cycle[1..].reverse();
                        return Some(cycle);
                    }
                    _ => {}
                }
            } else {
                color[u as usize] = BLACK;
                stack.pop();
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    #[test]
    fn directed_cycle_is_an_obstruction() {
        let g = generate(&Family::Cycle { n: 3 }, 0).unwrap();
        let cycle = translational_obstruction(&g).unwrap();
        assert_eq!(cycle, vec![0, 1, 2]);
    }

    #[test]
    fn returned_cycle_is_always_one_way() {
        for n in 3..11 {
            let g = generate(&Family::Cycle { n }, 0).unwrap();
            let cycle = translational_obstruction(&g).unwrap();
            assert!(cycle.len() >= 2);
            for i in 0..cycle.len() {
                let x = cycle[i];
                let y = cycle[(i + 1) % cycle.len()];
                assert!(g.has_edge(x, y));
                assert!(!g.has_edge(y, x));
            }
        }
    }

    #[test]
    fn dags_have_no_obstruction() {
        for seed in 0..25 {
            let g = generate(&Family::RandomDag { n: 12, p: 0.35 }, seed).unwrap();
            assert!(translational_obstruction(&g).is_none());
        }
    }

    #[test]
    fn bidirected_pair_is_clear() {
        // Every edge's reverse is present, so the one-way subgraph is empty.
        let g = generate(&Family::Cycle { n: 2 }, 0).unwrap();
        assert!(translational_obstruction(&g).is_none());
    }

    #[test]
    fn self_loops_are_ignored() {
        let g = crate::graph::DiGraph::from_edges(2, vec![(0, 0), (0, 1)]).unwrap();
        assert!(translational_obstruction(&g).is_none());
    }
}
