//! Command-line surface: generate graphs, build/convert/compress/optimize
//! embeddings, verify them, and emit JSON reports.
//!
//! Exit codes: 0 success (and verification pass), 1 verification failure,
//! 2 usage error, 3 I/O or parse error, 4 construction error. Failures print
//! one `error: <code>: <detail>` line to stderr.

mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dgemb::compress::{hamming_embed_with_factor, jl_project, DEFAULT_CODE_FACTOR};
use dgemb::construct::{
    dag_translational, distance_to_similarity, similarity_to_distance,
    similarity_to_spherical_distance, svd_construct,
};
use dgemb::embed::{
    measure_distance_robustness, measure_similarity_robustness, read_embedding, verify_distance,
    verify_similarity, verify_translational, write_embedding, EmbeddingFile, Metadata, Robustness,
    SimilarityEmbedding, StoredEmbedding,
};
use dgemb::error::Error;
use dgemb::graph::{generate, read_edge_list, write_edge_list, DiGraph, Family};
use dgemb::optimize::{
    max_distance_robustness, max_similarity_robustness, SolveStatus, SolvedEmbedding, SolverConfig,
};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "dgemb",
    version,
    about = "Euclidean embeddings of directed graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph and write it as an edge list.
    Gen(GenArgs),
    /// Construct an embedding for a graph.
    Embed(EmbedArgs),
    /// Convert an embedding to another kind.
    Convert(ConvertArgs),
    /// Reduce embedding dimension (random projection or Hamming codes).
    Compress(CompressArgs),
    /// Check an embedding against its graph; exit 1 with a witness on fail.
    Verify(VerifyArgs),
    /// Emit spectrum facts, robustness bounds, and dimension upper bounds.
    Report(ReportArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Family: path, cycle, complete_bipartite, bidirected_complete_with_loops,
    /// random_gnp, random_dag, bounded_degree, km_distance, km_similarity.
    family: String,
    /// Node count (total across both sides for complete_bipartite; the
    /// coordinate count for the km families).
    #[arg(long, default_value_t = 8)]
    n: usize,
    /// Edge probability for the random families.
    #[arg(long)]
    p: Option<f64>,
    /// Degree bound (bounded_degree) or arrangement dimension (km families).
    #[arg(long)]
    deg: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum EmbedMethod {
    Svd,
    DagTranslational,
    SdpDistance,
    SdpSimilarity,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SvdKind {
    Distance,
    Similarity,
}

#[derive(Args)]
struct EmbedArgs {
    #[arg(long, value_enum)]
    method: EmbedMethod,
    #[arg(short, long)]
    graph: PathBuf,
    #[arg(short, long)]
    output: PathBuf,
    /// Which of the two SVD outputs to write (svd method only).
    #[arg(long, value_enum, default_value_t = SvdKind::Distance)]
    kind: SvdKind,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// key=value solver config file; explicit flags below override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    max_rank: Option<usize>,
    #[arg(long)]
    bisection_tolerance: Option<f64>,
    #[arg(long)]
    max_iterations: Option<usize>,
    #[arg(long)]
    restarts: Option<usize>,
    #[arg(long)]
    delta_cap: Option<f64>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ConvertTarget {
    /// Distance -> similarity lift with the explicit constant.
    Similarity,
    /// Similarity -> spherical distance through the shifted dot matrix.
    SphericalDistance,
    /// Similarity -> distance via unit completion.
    Distance,
}

#[derive(Args)]
struct ConvertArgs {
    #[arg(long, value_enum)]
    to: ConvertTarget,
    #[arg(short, long)]
    graph: PathBuf,
    #[arg(short, long)]
    embedding: PathBuf,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum CompressMethod {
    Jl,
    Hamming,
}

#[derive(Args)]
struct CompressArgs {
    #[arg(long, value_enum)]
    method: CompressMethod,
    #[arg(long)]
    delta: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short, long)]
    graph: PathBuf,
    #[arg(short, long)]
    embedding: PathBuf,
    #[arg(short, long)]
    output: PathBuf,
    /// Code-length factor for the Hamming method.
    #[arg(long, default_value_t = DEFAULT_CODE_FACTOR)]
    code_factor: f64,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(short, long)]
    graph: PathBuf,
    #[arg(short, long)]
    embedding: PathBuf,
}

#[derive(Args)]
struct ReportArgs {
    #[arg(short, long)]
    graph: PathBuf,
    #[arg(short, long)]
    embedding: Vec<PathBuf>,
    /// JSON to stdout (the default).
    #[arg(long, default_value_t = true, overrides_with = "table")]
    json: bool,
    /// Human-readable table instead of JSON.
    #[arg(long)]
    table: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}: {}", e.code(), e);
            match e {
                Error::Io(_) | Error::Parse(_) => ExitCode::from(3),
                _ => ExitCode::from(4),
            }
        }
    }
}

fn read_graph(path: &Path) -> dgemb::Result<DiGraph> {
    read_edge_list(&std::fs::read_to_string(path)?)
}

fn read_embedding_file(path: &Path) -> dgemb::Result<EmbeddingFile> {
    read_embedding(&std::fs::read_to_string(path)?)
}

fn write_text(path: &Path, text: &str) -> dgemb::Result<()> {
    std::fs::write(path, text)?;
    Ok(())
}

fn run(cli: Cli) -> dgemb::Result<ExitCode> {
    match cli.command {
        Command::Gen(args) => {
            let family = Family::from_cli(&args.family, args.n, args.p, args.deg)?;
            let g = generate(&family, args.seed)?;
            write_text(&args.output, &write_edge_list(&g))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Embed(args) => run_embed(args),
        Command::Convert(args) => run_convert(args),
        Command::Compress(args) => run_compress(args),
        Command::Verify(args) => run_verify(args),
        Command::Report(args) => run_report(args),
    }
}

fn solver_config(args: &EmbedArgs) -> dgemb::Result<SolverConfig> {
    let mut cfg = SolverConfig::default();
    if let Some(path) = &args.config {
        cfg.parse_config_text(&std::fs::read_to_string(path)?)?;
    }
    if let Some(v) = args.max_rank {
        cfg.max_rank = Some(v);
    }
    if let Some(v) = args.bisection_tolerance {
        cfg.bisection_tolerance = v;
    }
    if let Some(v) = args.max_iterations {
        cfg.max_iterations = v;
    }
    if let Some(v) = args.restarts {
        cfg.restarts = v;
    }
    if let Some(v) = args.delta_cap {
        cfg.delta_cap = Some(v);
    }
    cfg.seed = args.seed;
    Ok(cfg)
}

fn run_embed(args: EmbedArgs) -> dgemb::Result<ExitCode> {
    let g = read_graph(&args.graph)?;
    let file = match args.method {
        EmbedMethod::Svd => {
            let (dist, sim) = svd_construct(&g)?;
            match args.kind {
                SvdKind::Distance => {
                    let measured = measure_distance_robustness(&g, &dist)?;
                    EmbeddingFile::from_distance(
                        &dist,
                        Metadata::new("svd").with_delta(measured.delta),
                    )
                }
                SvdKind::Similarity => {
                    let measured = measure_similarity_robustness(&g, &sim)?;
                    EmbeddingFile::from_similarity(
                        &sim,
                        Metadata::new("svd").with_delta(measured.delta),
                    )
                }
            }
        }
        EmbedMethod::DagTranslational => {
            let e = dag_translational(&g)?;
            EmbeddingFile::from_translational(&e, Metadata::new("dag-translational"))
        }
        EmbedMethod::SdpDistance => {
            let cfg = solver_config(&args)?;
            let solved = max_distance_robustness(&g, &cfg)?;
            let producer = match solved.status {
                SolveStatus::Unbounded => "sdp-distance (unbounded)",
                _ => "sdp-distance",
            };
            match solved.embedding {
                SolvedEmbedding::Distance(e) => EmbeddingFile::from_distance(
                    &e,
                    Metadata::new(producer)
                        .with_seed(args.seed)
                        .with_delta(solved.delta),
                ),
                SolvedEmbedding::Similarity(_) => unreachable!("distance solver output"),
            }
        }
        EmbedMethod::SdpSimilarity => {
            let cfg = solver_config(&args)?;
            let solved = max_similarity_robustness(&g, &cfg)?;
            let producer = match solved.status {
                SolveStatus::Unbounded => "sdp-similarity (unbounded)",
                _ => "sdp-similarity",
            };
            match solved.embedding {
                SolvedEmbedding::Similarity(e) => EmbeddingFile::from_similarity(
                    &e,
                    Metadata::new(producer)
                        .with_seed(args.seed)
                        .with_delta(solved.delta),
                ),
                SolvedEmbedding::Distance(_) => unreachable!("similarity solver output"),
            }
        }
    };
    write_text(&args.output, &write_embedding(&file))?;
    Ok(ExitCode::SUCCESS)
}

fn run_convert(args: ConvertArgs) -> dgemb::Result<ExitCode> {
    let g = read_graph(&args.graph)?;
    let stored = read_embedding_file(&args.embedding)?.into_stored()?;
    let file = match (args.to, stored) {
        (ConvertTarget::Similarity, StoredEmbedding::Distance(e)) => {
            let measured = measure_distance_robustness(&g, &e)?;
            let delta = match measured.delta {
                Robustness::Finite(d) => d,
                Robustness::Infinite => 1.0,
            };
            let out = distance_to_similarity(&g, &e, delta)?;
            let out_measured = measure_similarity_robustness(&g, &out)?;
            EmbeddingFile::from_similarity(
                &out,
                Metadata::new("distance-to-similarity").with_delta(out_measured.delta),
            )
        }
        (ConvertTarget::SphericalDistance, StoredEmbedding::Similarity(e)) => {
            let out = similarity_to_spherical_distance(&g, &e)?;
            let out_measured = measure_distance_robustness(&g, &out)?;
            EmbeddingFile::from_distance(
                &out,
                Metadata::new("similarity-to-spherical-distance").with_delta(out_measured.delta),
            )
        }
        (ConvertTarget::Distance, StoredEmbedding::Similarity(e)) => {
            let measured = measure_similarity_robustness(&g, &e)?;
            let delta = match measured.delta {
                Robustness::Finite(d) => d,
                Robustness::Infinite => 2.0,
            };
            let out = similarity_to_distance(&g, &e, delta)?;
            let out_measured = measure_distance_robustness(&g, &out)?;
            EmbeddingFile::from_distance(
                &out,
                Metadata::new("similarity-to-distance").with_delta(out_measured.delta),
            )
        }
        (_, stored) => {
            return Err(Error::InvalidEmbeddingKind(format!(
                "cannot convert a {} embedding to {}",
                stored.kind_name(),
                match args.to {
                    ConvertTarget::Similarity => "similarity",
                    ConvertTarget::SphericalDistance => "spherical-distance",
                    ConvertTarget::Distance => "distance",
                }
            )));
        }
    };
    write_text(&args.output, &write_embedding(&file))?;
    Ok(ExitCode::SUCCESS)
}

fn run_compress(args: CompressArgs) -> dgemb::Result<ExitCode> {
    let g = read_graph(&args.graph)?;
    let stored = read_embedding_file(&args.embedding)?.into_stored()?;
    let file = match (args.method, stored) {
        (CompressMethod::Jl, StoredEmbedding::Distance(e)) => {
            let out = jl_project(&g, &e, args.delta, args.seed)?;
            let measured = measure_distance_robustness(&g, &out)?;
            EmbeddingFile::from_distance(
                &out,
                Metadata::new("jl")
                    .with_seed(args.seed)
                    .with_delta(measured.delta),
            )
        }
        (CompressMethod::Hamming, StoredEmbedding::Similarity(e)) => {
            // The Hamming margins are stated around the non-edge ceiling:
            // shift the verified threshold down by delta before embedding.
            let measured = measure_similarity_robustness(&g, &e)?;
            if !measured.valid || !measured.delta.at_least(args.delta - 1e-12) {
                return Err(Error::NotRobust(format!(
                    "embedding measures {} but --delta {} was requested",
                    measured.delta, args.delta
                )));
            }
            let shifted = SimilarityEmbedding::new(e.phi_l, e.phi_r, e.threshold - args.delta)?;
            let out =
                hamming_embed_with_factor(&g, &shifted, args.delta, args.seed, args.code_factor)?;
            let out_delta = out.measured_distance_robustness(&g);
            EmbeddingFile::from_hamming(
                &out,
                Metadata::new("hamming")
                    .with_seed(args.seed)
                    .with_delta(out_delta),
            )
        }
        (CompressMethod::Jl, stored) => {
            return Err(Error::InvalidEmbeddingKind(format!(
                "jl compression needs a distance embedding, got {}",
                stored.kind_name()
            )));
        }
        (CompressMethod::Hamming, stored) => {
            return Err(Error::InvalidEmbeddingKind(format!(
                "hamming compression needs a similarity embedding, got {}",
                stored.kind_name()
            )));
        }
    };
    write_text(&args.output, &write_embedding(&file))?;
    Ok(ExitCode::SUCCESS)
}

fn run_verify(args: VerifyArgs) -> dgemb::Result<ExitCode> {
    let g = read_graph(&args.graph)?;
    let stored = read_embedding_file(&args.embedding)?.into_stored()?;
    let verdict = match &stored {
        StoredEmbedding::Distance(e) => verify_distance(&g, e)?,
        StoredEmbedding::Similarity(e) => verify_similarity(&g, e)?,
        StoredEmbedding::Translational(e) => verify_translational(&g, e)?,
        StoredEmbedding::Hamming(e) => {
            if e.node_count() != g.node_count() {
                return Err(Error::SizeMismatch {
                    graph_nodes: g.node_count(),
                    embedding_nodes: e.node_count(),
                });
            }
            let witness = g.all_pairs().find(|&(u, v)| {
                g.has_edge(u, v) != (e.hamming_dist(u as usize, v as usize) <= e.dist_threshold)
            });
            dgemb::embed::Verdict {
                ok: witness.is_none(),
                witness,
            }
        }
    };
    if verdict.ok {
        println!("ok");
        Ok(ExitCode::SUCCESS)
    } else {
        let (u, v) = verdict.witness.expect("failed verification has a witness");
        eprintln!("witness: {u} {v}");
        println!("fail");
        Ok(ExitCode::from(1))
    }
}

fn run_report(args: ReportArgs) -> dgemb::Result<ExitCode> {
    let g = read_graph(&args.graph)?;
    let mut provided = Vec::new();
    for path in &args.embedding {
        let file = read_embedding_file(path)?;
        let producer = file.metadata().producer.clone();
        provided.push((file.into_stored()?, producer));
    }
    let report = report::build_report(&g, &provided)?;
    if args.table {
        print!("{}", report::render_table(&report));
    } else {
        let mut text = serde_json::to_string_pretty(&report).expect("report always serializes");
        text.push('\n');
        print!("{text}");
    }
    Ok(ExitCode::SUCCESS)
}
