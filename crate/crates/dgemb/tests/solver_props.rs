//! Cross-cutting solver properties on small seeded corpora.

use dgemb::embed::Robustness;
use dgemb::graph::{generate, spectrum, DiGraph, Family};
use dgemb::optimize::{
    distance_robustness_unbounded, fit_translational, max_distance_robustness,
    max_similarity_robustness, SolveStatus, SolverConfig,
};

fn quick_cfg(seed: u64) -> SolverConfig {
    SolverConfig {
        restarts: 3,
        max_iterations: 800,
        bisection_tolerance: 0.02,
        seed,
        ..SolverConfig::default()
    }
}

#[test]
fn distance_solver_beats_spectral_witness() {
    for seed in 0..6 {
        let g = generate(&Family::RandomGnp { n: 7, p: 0.5 }, seed).unwrap();
        if g.edge_count() == 0 || distance_robustness_unbounded(&g) {
            continue;
        }
        let sp = spectrum(&g);
        let r = max_distance_robustness(&g, &quick_cfg(seed)).unwrap();
        assert!(
            r.delta.at_least(1.0 / sp.sigma1 - 1e-3),
            "seed {seed}: {} < 1/{}",
            r.delta,
            sp.sigma1
        );
    }
}

#[test]
fn similarity_solver_beats_spectral_witness() {
    for seed in 0..6 {
        let g = generate(&Family::RandomGnp { n: 7, p: 0.5 }, seed).unwrap();
        if g.edge_count() == 0 || g.non_edges().next().is_none() {
            continue;
        }
        let sp = spectrum(&g);
        let r = max_similarity_robustness(&g, &quick_cfg(seed)).unwrap();
        assert!(
            r.delta.at_least(1.0 / sp.sigma1 - 1e-3),
            "seed {seed}: {} < 1/{}",
            r.delta,
            sp.sigma1
        );
    }
}

/// Removing an edge only adds a non-edge constraint, so the optimum cannot
/// rise (as long as the closeness structure stays bounded).
#[test]
fn removing_an_edge_never_raises_similarity_robustness() {
    for seed in 0..4 {
        let g = generate(&Family::RandomGnp { n: 6, p: 0.6 }, seed).unwrap();
        if g.edge_count() < 2 || g.non_edges().next().is_none() {
            continue;
        }
        let base = max_similarity_robustness(&g, &quick_cfg(11)).unwrap();
        let Robustness::Finite(base_delta) = base.delta else {
            continue;
        };
        // Drop the first edge.
        let dropped = g.edges().next().unwrap();
        let reduced =
            DiGraph::from_edges(g.node_count(), g.edges().filter(|&e| e != dropped)).unwrap();
        if reduced.edge_count() == 0 {
            continue;
        }
        let tightened = max_similarity_robustness(&reduced, &quick_cfg(11)).unwrap();
        let Robustness::Finite(tight_delta) = tightened.delta else {
            continue;
        };
        // Generous slack: both values are heuristic lower bounds.
        assert!(
            tight_delta <= base_delta * 1.10 + 0.02,
            "seed {seed}: {tight_delta} > {base_delta}"
        );
    }
}

#[test]
fn tiny_max_rank_still_returns_a_valid_embedding() {
    // A factorization width below the witness dimension must not lose the
    // guaranteed answer.
    let g = generate(&Family::RandomGnp { n: 8, p: 0.5 }, 2).unwrap();
    if g.edge_count() == 0 || distance_robustness_unbounded(&g) {
        return;
    }
    let cfg = SolverConfig {
        max_rank: Some(1),
        restarts: 2,
        max_iterations: 200,
        bisection_tolerance: 0.2,
        ..SolverConfig::default()
    };
    let sp = spectrum(&g);
    let rd = max_distance_robustness(&g, &cfg).unwrap();
    assert!(rd.delta.at_least(1.0 / sp.sigma1 - 1e-3));
    let rs = max_similarity_robustness(&g, &cfg).unwrap();
    assert!(rs.delta.at_least(1.0 / sp.sigma1 - 1e-3));
}

#[test]
fn unbounded_statuses_carry_certificates() {
    let c4 = generate(&Family::Cycle { n: 4 }, 0).unwrap();
    let cfg = SolverConfig::default();
    let r = max_distance_robustness(&c4, &cfg).unwrap();
    assert_eq!(r.status, SolveStatus::Unbounded);
    assert!(r.delta.at_least(cfg.cap_for(4)));
}

#[test]
fn fitter_succeeds_exactly_where_obstruction_is_absent_on_small_corpus() {
    let cfg = SolverConfig {
        restarts: 4,
        max_iterations: 400,
        ..SolverConfig::default()
    };
    for seed in 0..8 {
        let g = generate(&Family::RandomDag { n: 8, p: 0.3 }, seed).unwrap();
        assert!(dgemb::embed::translational_obstruction(&g).is_none());
        assert!(fit_translational(&g, &cfg).is_some(), "seed {seed}");
    }
    for n in 3..8 {
        let g = generate(&Family::Cycle { n }, 0).unwrap();
        assert!(dgemb::embed::translational_obstruction(&g).is_some());
        assert!(fit_translational(&g, &cfg).is_none(), "cycle {n}");
    }
}
