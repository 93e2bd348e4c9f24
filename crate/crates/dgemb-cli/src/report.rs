//! Graph/embedding report assembly.

use dgemb::compress::HammingEmbedding;
use dgemb::construct::svd_construct;
use dgemb::embed::{
    diameter_stats, measure_distance_robustness, measure_similarity_robustness, DistanceEmbedding,
    Robustness, SimilarityEmbedding, StoredEmbedding, Threshold, TranslationalEmbedding,
};
use dgemb::graph::{spectrum, DiGraph};
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct EmbeddingBlock {
    pub kind: String,
    pub producer: String,
    pub dim: usize,
    pub threshold: f64,
    /// Absent for translational embeddings, whose definition carries no
    /// robustness margin; present for every other kind.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub measured_delta: Option<Robustness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diameter_ratio: Option<Robustness>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DimensionUpperBounds {
    pub d_dist: usize,
    pub d_sim: usize,
    pub d_sign: usize,
}

/// Spectrum facts, robustness bounds, per-embedding measurements, and the
/// dimension bounds they imply. All dimension figures are upper bounds
/// achieved by constructions; true minima are not computed.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub n: usize,
    pub edge_count: usize,
    pub max_in_degree: usize,
    pub max_out_degree: usize,
    pub rank: usize,
    pub sigma1: f64,
    pub bound_svd: Robustness,
    pub bound_degree: Robustness,
    pub embeddings: Vec<EmbeddingBlock>,
    pub dimension_upper_bounds: DimensionUpperBounds,
}

fn distance_block(
    g: &DiGraph,
    e: &DistanceEmbedding,
    producer: &str,
) -> dgemb::Result<EmbeddingBlock> {
    let measured = measure_distance_robustness(g, e)?;
    let ratio = match e.threshold {
        Threshold::Uniform(t) if t > 0.0 => {
            Some(Robustness::Finite(diameter_stats(e)?.diameter_ratio))
        }
        Threshold::Uniform(_) => Some(Robustness::Infinite),
        Threshold::PerSource(_) => None,
    };
    let threshold = match &e.threshold {
        Threshold::Uniform(t) => *t,
        Threshold::PerSource(ts) => ts.iter().copied().fold(0.0, f64::max),
    };
    Ok(EmbeddingBlock {
        kind: "distance".into(),
        producer: producer.into(),
        dim: e.dim(),
        threshold,
        measured_delta: Some(measured.delta),
        diameter_ratio: ratio,
    })
}

fn similarity_block(
    g: &DiGraph,
    e: &SimilarityEmbedding,
    producer: &str,
) -> dgemb::Result<EmbeddingBlock> {
    let measured = measure_similarity_robustness(g, e)?;
    Ok(EmbeddingBlock {
        kind: "similarity".into(),
        producer: producer.into(),
        dim: e.dim(),
        threshold: e.threshold,
        measured_delta: Some(measured.delta),
        diameter_ratio: None,
    })
}

fn translational_block(e: &TranslationalEmbedding, producer: &str) -> EmbeddingBlock {
    EmbeddingBlock {
        kind: "translational".into(),
        producer: producer.into(),
        dim: e.dim(),
        threshold: e.thresholds.iter().copied().fold(0.0, f64::max),
        measured_delta: None,
        diameter_ratio: None,
    }
}

fn hamming_block(g: &DiGraph, e: &HammingEmbedding, producer: &str) -> EmbeddingBlock {
    EmbeddingBlock {
        kind: "hamming".into(),
        producer: producer.into(),
        dim: e.k,
        threshold: e.dist_threshold as f64,
        measured_delta: Some(e.measured_distance_robustness(g)),
        diameter_ratio: None,
    }
}

pub fn build_report(g: &DiGraph, provided: &[(StoredEmbedding, String)]) -> dgemb::Result<Report> {
    let sp = spectrum(g);
    let (max_out, max_in) = (g.max_out_degree(), g.max_in_degree());
    let bound_svd = if sp.sigma1 > 0.0 {
        Robustness::Finite(1.0 / sp.sigma1)
    } else {
        Robustness::Infinite
    };
    let degree_product = (max_out * max_in) as f64;
    let bound_degree = if degree_product > 0.0 {
        Robustness::Finite((1.0 / degree_product).sqrt())
    } else {
        Robustness::Infinite
    };

    let (svd_dist, svd_sim) = svd_construct(g)?;
    let mut embeddings = vec![
        distance_block(g, &svd_dist, "svd")?,
        similarity_block(g, &svd_sim, "svd")?,
    ];
    for (stored, producer) in provided {
        embeddings.push(match stored {
            StoredEmbedding::Distance(e) => distance_block(g, e, producer)?,
            StoredEmbedding::Similarity(e) => similarity_block(g, e, producer)?,
            StoredEmbedding::Translational(e) => translational_block(e, producer),
            StoredEmbedding::Hamming(e) => hamming_block(g, e, producer),
        });
    }

    let min_dim = |kind: &str| {
        embeddings
            .iter()
            .filter(|b| b.kind == kind)
            .map(|b| b.dim)
            .min()
    };
    let d_dist = min_dim("distance").unwrap_or(svd_dist.dim());
    let d_sim = min_dim("similarity").unwrap_or(svd_sim.dim());
    Ok(Report {
        n: g.node_count(),
        edge_count: g.edge_count(),
        max_in_degree: max_in,
        max_out_degree: max_out,
        rank: sp.rank,
        sigma1: sp.sigma1,
        bound_svd,
        bound_degree,
        embeddings,
        dimension_upper_bounds: DimensionUpperBounds {
            d_dist,
            d_sim,
            d_sign: d_sim + 1,
        },
    })
}

pub fn render_table(report: &Report) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "graph: n={} edges={} max_out={} max_in={}\n",
        report.n, report.edge_count, report.max_out_degree, report.max_in_degree
    ));
    out.push_str(&format!(
        "spectrum: rank={} sigma1={:.6}\n",
        report.rank, report.sigma1
    ));
    out.push_str(&format!(
        "bounds: svd={} degree={}\n",
        report.bound_svd, report.bound_degree
    ));
    out.push_str("embeddings:\n");
    for b in &report.embeddings {
        let ratio = b
            .diameter_ratio
            .as_ref()
            .map_or(String::from("-"), |r| r.to_string());
        let delta = b
            .measured_delta
            .as_ref()
            .map_or(String::from("-"), |d| d.to_string());
        out.push_str(&format!(
            "  {:<14} {:<18} dim={:<6} t={:<12.6} delta={:<12} dr={}\n",
            b.kind, b.producer, b.dim, b.threshold, delta, ratio
        ));
    }
    out.push_str(&format!(
        "dimension upper bounds: d_dist<={} d_sim<={} d_sign<={}\n",
        report.dimension_upper_bounds.d_dist,
        report.dimension_upper_bounds.d_sim,
        report.dimension_upper_bounds.d_sign
    ));
    out
}
