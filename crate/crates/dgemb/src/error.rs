use thiserror::Error;

/// Library-wide error type.
///
/// Each variant has a stable short code (see [`Error::code`]) used by the CLI
/// for machine-parsable `error: <code>: <detail>` lines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("sign set is empty")]
    EmptySignSet,

    #[error("sampling failed: {0}")]
    SamplingFailed(String),

    #[error("size mismatch: graph has {graph_nodes} nodes, embedding has {embedding_nodes}")]
    SizeMismatch {
        graph_nodes: usize,
        embedding_nodes: usize,
    },

    #[error("per-source thresholds unsupported here; uniformize first")]
    PerSourceUnsupported,

    #[error("all embedding vectors are zero but non-edges exist; robustness undefined")]
    ZeroEmbedding,

    #[error("threshold is zero")]
    ZeroThreshold,

    #[error("graph has a directed cycle{0}")]
    CyclicGraph(String),

    #[error("factor column numerically zero after perturbation retries")]
    ZeroColumn,

    #[error("input embedding is not sufficiently robust: {0}")]
    NotRobust(String),

    #[error("random retries exhausted: {0}")]
    RetriesExhausted(String),

    #[error("embedding is not spherical (vector norms must be 1 within 1e-9)")]
    NotSpherical,

    #[error("instance too large for the tiny oracle: {0}")]
    TooLarge(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported embedding kind for this operation: {0}")]
    InvalidEmbeddingKind(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable short code for CLI error lines.
    pub fn code(&self) -> &'static str {
        match self {
            Error::UnknownFamily(_) => "UnknownFamily",
            Error::InvalidParams(_) => "InvalidParams",
            Error::EmptySignSet => "EmptySignSet",
            Error::SamplingFailed(_) => "SamplingFailed",
            Error::SizeMismatch { .. } => "SizeMismatch",
            Error::PerSourceUnsupported => "PerSourceUnsupported",
            Error::ZeroEmbedding => "ZeroEmbedding",
            Error::ZeroThreshold => "ZeroThreshold",
            Error::CyclicGraph(_) => "CyclicGraph",
            Error::ZeroColumn => "ZeroColumn",
            Error::NotRobust(_) => "NotRobust",
            Error::RetriesExhausted(_) => "RetriesExhausted",
            Error::NotSpherical => "NotSpherical",
            Error::TooLarge(_) => "TooLarge",
            Error::Parse(_) => "Parse",
            Error::InvalidEmbeddingKind(_) => "InvalidEmbeddingKind",
            Error::Io(_) => "Io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
