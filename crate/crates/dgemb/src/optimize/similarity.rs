//! Similarity-robustness maximization over unit vectors with a free
//! threshold.

use super::adam::Adam;
use super::{SolveResult, SolveStatus, SolvedEmbedding, SolverConfig};
use crate::construct::svd_construct;
use crate::embed::{measure_similarity_robustness, SimilarityEmbedding};
use crate::error::Result;
use crate::graph::DiGraph;
use crate::rng::{mix, Rng};

const SIM_STREAM: u64 = 0x51b3_11a7_0000_0002;

struct PairTable {
    n: usize,
    edges: Vec<(usize, usize)>,
    non_edges: Vec<(usize, usize)>,
}

/// Parameter layout: x_i rows 0..n, y_j rows n..2n (r columns each), then t.
fn loss_and_grad(table: &PairTable, params: &[f64], r: usize, delta: f64, grad: &mut [f64]) -> f64 {
    grad.fill(0.0);
    let n = table.n;
    let t = params[2 * n * r];
    let slack = 1e-7 * (1.0 + delta);
    let mut loss = 0.0;
    let accumulate = |i: usize, j: usize, is_edge: bool, grad: &mut [f64], loss: &mut f64| {
        let (xi, yj) = (i * r, (n + j) * r);
        let mut d = 0.0;
        for k in 0..r {
            d += params[xi + k] * params[yj + k];
        }
        // Edges need dot >= t + slack; non-edges dot <= t - delta - slack.
        let viol = if is_edge {
            t + slack - d
        } else {
            d - (t - delta - slack)
        };
        if viol > 0.0 {
            *loss += viol * viol;
            let sign = if is_edge { -1.0 } else { 1.0 };
            for k in 0..r {
                grad[xi + k] += 2.0 * viol * sign * params[yj + k];
                grad[yj + k] += 2.0 * viol * sign * params[xi + k];
            }
            grad[2 * n * r] += 2.0 * viol * (-sign);
        }
    };
    for &(i, j) in &table.edges {
        accumulate(i, j, true, grad, &mut loss);
    }
    for &(i, j) in &table.non_edges {
        accumulate(i, j, false, grad, &mut loss);
    }
    loss
}

fn renormalize(params: &mut [f64], n: usize, r: usize) {
    for v in 0..2 * n {
        let slice = &mut params[v * r..(v + 1) * r];
        let len = slice.iter().map(|x| x * x).sum::<f64>().sqrt();
        if len > 1e-12 {
            slice.iter_mut().for_each(|x| *x /= len);
        } else {
            slice.fill(0.0);
            slice[0] = 1.0;
        }
    }
}

/// Read off the embedding and set the threshold at the measured optimum
/// (the smallest edge dot).
fn embedding_from_params(table: &PairTable, params: &[f64], r: usize) -> SimilarityEmbedding {
    let n = table.n;
    let row = |i: usize| params[i * r..(i + 1) * r].to_vec();
    let dot = |i: usize, j: usize| -> f64 {
        (0..r)
            .map(|k| params[i * r + k] * params[(n + j) * r + k])
            .sum()
    };
    let t = table
        .edges
        .iter()
        .map(|&(i, j)| dot(i, j))
        .fold(f64::INFINITY, f64::min);
    let t = if t.is_finite() { t } else { params[2 * n * r] };
    SimilarityEmbedding::new((0..n).map(row).collect(), (n..2 * n).map(row).collect(), t)
        .expect("solver parameters form a well-formed embedding")
}

fn params_from_embedding(e: &SimilarityEmbedding, r: usize) -> Vec<f64> {
    let mut params = Vec::with_capacity(2 * e.node_count() * r + 1);
    for v in e.phi_l.iter().chain(&e.phi_r) {
        let mut row = v.clone();
        row.resize(r, 0.0);
        params.extend_from_slice(&row[..r]);
    }
    params.push(e.threshold);
    params
}

struct LevelContext<'a> {
    g: &'a DiGraph,
    table: &'a PairTable,
    cfg: &'a SolverConfig,
    r: usize,
    svd_seed: Option<&'a SimilarityEmbedding>,
}

fn solve_level(
    ctx: &LevelContext,
    delta: f64,
    level: u64,
    warm: Option<&SimilarityEmbedding>,
) -> Option<(SimilarityEmbedding, f64)> {
    let (g, table, cfg, r, svd_seed) = (ctx.g, ctx.table, ctx.cfg, ctx.r, ctx.svd_seed);
    let n = table.n;
    let mut best: Option<(SimilarityEmbedding, f64)> = None;
    for restart in 0..cfg.restarts.max(1) as u64 {
        let mut rng = Rng::new(mix(mix(cfg.seed, SIM_STREAM ^ level), restart));
        let mut params = match restart {
            0 if warm.is_some() => params_from_embedding(warm.unwrap(), r),
            1 if svd_seed.is_some() => params_from_embedding(svd_seed.unwrap(), r),
            _ => {
                let mut p: Vec<f64> = (0..2 * n * r).map(|_| rng.next_gaussian()).collect();
                p.push(rng.range_f64(-0.5, 0.5));
                p
            }
        };
        renormalize(&mut params, n, r);
        let mut grad = vec![0.0; params.len()];
        let mut opt = Adam::new(params.len(), 0.05);
        let iters = cfg.max_iterations.max(50);
        for it in 0..iters {
            let frac = it as f64 / iters as f64;
            opt.set_lr(0.05 * (1e-3f64).powf(frac));
            let loss = loss_and_grad(table, &params, r, delta, &mut grad);
            if loss <= 1e-22 {
                break;
            }
            opt.step(&mut params, &grad);
            renormalize(&mut params, n, r);
        }

        let candidate = embedding_from_params(table, &params, r);
        if let Ok(m) = measure_similarity_robustness(g, &candidate) {
            if m.valid {
                let value = m.delta.value();
                if best.as_ref().is_none_or(|(_, b)| value > *b) {
                    best = Some((candidate, value));
                }
            }
        }
    }
    best
}

/// Maximize similarity robustness by bisection on delta over unit-sphere
/// feasibility problems (vectors are reprojected after every ascent step;
/// the threshold rides along as a free variable).
///
/// With no non-edges, or no edges at all, the margin is unconstrained on one
/// side and the program is unbounded; a witness embedding realizing at least
/// `delta_cap` is returned. Dots of unit vectors live in [-1, 1], so bounded
/// instances bisect inside [0, 2]. The reported delta is the measured
/// robustness of the returned embedding.
pub fn max_similarity_robustness(g: &DiGraph, cfg: &SolverConfig) -> Result<SolveResult> {
    let n = g.node_count();
    let cap = cfg.cap_for(n);
    let has_edges = g.edge_count() > 0;
    let has_non_edges = g.non_edges().next().is_some();
    if n == 0 || !has_edges || !has_non_edges {
        let embedding = if has_edges {
            // No non-edges: the SVD construction verifies and its margin is
            // vacuously unbounded.
            svd_construct(g)?.1
        } else {
            // No edges: any dot stays below a threshold pushed past the cap.
            SimilarityEmbedding::new(vec![vec![1.0]; n], vec![vec![1.0]; n], cap + 2.0)?
        };
        let measured = measure_similarity_robustness(g, &embedding)?;
        return Ok(SolveResult {
            delta: measured.delta,
            embedding: SolvedEmbedding::Similarity(embedding),
            residual: 0.0,
            status: SolveStatus::Unbounded,
        });
    }

    let r = cfg.rank_for(n);
    let table = PairTable {
        n,
        edges: g.edges().map(|(u, v)| (u as usize, v as usize)).collect(),
        non_edges: g
            .non_edges()
            .map(|(u, v)| (u as usize, v as usize))
            .collect(),
    };

    // The witness only seeds restarts if it fits the factorization width,
    // but it always backs the final answer.
    let (_, svd_witness) = svd_construct(g)?;
    let svd_seed = Some(&svd_witness).filter(|e| e.dim() <= r).cloned();
    let mut best: Option<(SimilarityEmbedding, f64)> = {
        let m = measure_similarity_robustness(g, &svd_witness)?;
        m.valid.then(|| (svd_witness.clone(), m.delta.value()))
    };

    // Unit dots live in [-1, 1], so the additive margin never exceeds 2.
    let mut lo = best.as_ref().map_or(0.0, |(_, d)| *d).min(2.0);
    let mut hi = 2.0;
    let mut level = 0u64;
    while hi - lo > cfg.bisection_tolerance * lo.max(1.0) && level < 64 {
        let mid = lo + (hi - lo) / 2.0;
        level += 1;
        let ctx = LevelContext {
            g,
            table: &table,
            cfg,
            r,
            svd_seed: svd_seed.as_ref(),
        };
        let found = solve_level(&ctx, mid, level, best.as_ref().map(|(e, _)| e));
        match found {
            Some((emb, measured)) if measured >= mid * (1.0 - 1e-6) => {
                lo = measured.min(hi);
                best = Some((emb, measured));
            }
            Some((emb, measured)) => {
                if best.as_ref().is_none_or(|(_, b)| measured > *b) {
                    lo = lo.max(measured.min(hi));
                    best = Some((emb, measured));
                }
                hi = mid;
            }
            None => {
                hi = mid;
            }
        }
    }

    let (embedding, _) = best.expect("bounded solve always has the SVD witness");
    let measured = measure_similarity_robustness(g, &embedding)?;
    let residual = g
        .edges()
        .map(|(u, v)| {
            embedding.threshold
                - crate::linalg::dot(&embedding.phi_l[u as usize], &embedding.phi_r[v as usize])
        })
        .fold(0.0f64, f64::max)
        .max(0.0);
    Ok(SolveResult {
        delta: measured.delta,
        embedding: SolvedEmbedding::Similarity(embedding),
        residual,
        status: SolveStatus::Optimal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::Robustness;
    use crate::graph::{generate, Family};

    fn self2() -> DiGraph {
        DiGraph::from_edges(2, vec![(0, 0), (1, 1)]).unwrap()
    }

    #[test]
    fn self2_reaches_antipodal_optimum() {
        let r = max_similarity_robustness(&self2(), &SolverConfig::default()).unwrap();
        assert_eq!(r.status, SolveStatus::Optimal);
        let d = r.delta.value();
        assert!((d - 2.0).abs() <= 0.04, "got {d}");
    }

    #[test]
    fn cycle_three_beats_spectral_witness() {
        let g = generate(&Family::Cycle { n: 3 }, 0).unwrap();
        let r = max_similarity_robustness(&g, &SolverConfig::default()).unwrap();
        assert!(r.delta.at_least(1.0 - 1e-3), "got {}", r.delta);
    }

    #[test]
    fn complete_graph_is_unbounded() {
        let g = generate(&Family::BidirectedCompleteWithLoops { n: 2 }, 0).unwrap();
        let r = max_similarity_robustness(&g, &SolverConfig::default()).unwrap();
        assert_eq!(r.status, SolveStatus::Unbounded);
        assert_eq!(r.delta, Robustness::Infinite);
    }

    #[test]
    fn edgeless_graph_is_unbounded_with_witness() {
        let g = DiGraph::empty(3);
        let cfg = SolverConfig::default();
        let r = max_similarity_robustness(&g, &cfg).unwrap();
        assert_eq!(r.status, SolveStatus::Unbounded);
        assert!(r.delta.at_least(cfg.cap_for(3)));
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let cfg = SolverConfig {
            restarts: 2,
            max_iterations: 300,
            bisection_tolerance: 0.05,
            ..SolverConfig::default()
        };
        let a = max_similarity_robustness(&self2(), &cfg).unwrap();
        let b = max_similarity_robustness(&self2(), &cfg).unwrap();
        assert_eq!(a.delta.value(), b.delta.value());
    }
}
