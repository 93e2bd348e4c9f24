//! Embedding file format: structured JSON with a `kind` tag, vectors as
//! row-per-node arrays, threshold(s), and a metadata block. Keys serialize in
//! the documented order (struct declaration order) and the writer always ends
//! with a trailing newline. Hamming codes travel as big-endian zero-padded
//! hex strings.

use super::{
    DistanceEmbedding, Robustness, SimilarityEmbedding, Threshold, TranslationalEmbedding,
};
use crate::compress::{Code, HammingEmbedding};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

impl Serialize for Robustness {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Robustness::Finite(d) => s.serialize_f64(*d),
            Robustness::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Robustness {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(x) => Ok(Robustness::Finite(x)),
            Raw::Text(s) if s == "inf" => Ok(Robustness::Infinite),
            Raw::Text(s) => Err(serde::de::Error::custom(format!(
                "expected a number or \"inf\", got \"{s}\""
            ))),
        }
    }
}

/// Producing operation, seed (when randomness was involved), and the measured
/// robustness recorded at write time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub producer: String,
    pub seed: Option<u64>,
    pub measured_delta: Option<Robustness>,
}

impl Metadata {
    pub fn new(producer: &str) -> Self {
        Metadata {
            producer: producer.to_string(),
            seed: None,
            measured_delta: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_delta(mut self, delta: Robustness) -> Self {
        self.measured_delta = Some(delta);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ThresholdField {
    Uniform(f64),
    PerSource(Vec<f64>),
}

/// On-disk embedding representation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EmbeddingFile {
    Distance {
        n: usize,
        dim: usize,
        threshold: ThresholdField,
        phi_out: Vec<Vec<f64>>,
        phi_in: Vec<Vec<f64>>,
        metadata: Metadata,
    },
    Similarity {
        n: usize,
        dim: usize,
        threshold: f64,
        phi_l: Vec<Vec<f64>>,
        phi_r: Vec<Vec<f64>>,
        metadata: Metadata,
    },
    Translational {
        n: usize,
        dim: usize,
        thresholds: Vec<f64>,
        phi: Vec<Vec<f64>>,
        z: Vec<f64>,
        metadata: Metadata,
    },
    Hamming {
        n: usize,
        k: usize,
        dist_threshold: usize,
        sim_threshold: i64,
        codes_l: Vec<String>,
        codes_r: Vec<String>,
        metadata: Metadata,
    },
}

/// Runtime view of a parsed embedding file.
#[derive(Debug, Clone)]
pub enum StoredEmbedding {
    Distance(DistanceEmbedding),
    Similarity(SimilarityEmbedding),
    Translational(TranslationalEmbedding),
    Hamming(HammingEmbedding),
}

impl StoredEmbedding {
    pub fn kind_name(&self) -> &'static str {
        match self {
            StoredEmbedding::Distance(_) => "distance",
            StoredEmbedding::Similarity(_) => "similarity",
            StoredEmbedding::Translational(_) => "translational",
            StoredEmbedding::Hamming(_) => "hamming",
        }
    }
}

impl EmbeddingFile {
    pub fn from_distance(e: &DistanceEmbedding, metadata: Metadata) -> Self {
        EmbeddingFile::Distance {
            n: e.node_count(),
            dim: e.dim(),
            threshold: match &e.threshold {
                Threshold::Uniform(t) => ThresholdField::Uniform(*t),
                Threshold::PerSource(ts) => ThresholdField::PerSource(ts.clone()),
            },
            phi_out: e.phi_out.clone(),
            phi_in: e.phi_in.clone(),
            metadata,
        }
    }

    pub fn from_similarity(e: &SimilarityEmbedding, metadata: Metadata) -> Self {
        EmbeddingFile::Similarity {
            n: e.node_count(),
            dim: e.dim(),
            threshold: e.threshold,
            phi_l: e.phi_l.clone(),
            phi_r: e.phi_r.clone(),
            metadata,
        }
    }

    pub fn from_translational(e: &TranslationalEmbedding, metadata: Metadata) -> Self {
        EmbeddingFile::Translational {
            n: e.node_count(),
            dim: e.dim(),
            thresholds: e.thresholds.clone(),
            phi: e.phi.clone(),
            z: e.z.clone(),
            metadata,
        }
    }

    pub fn from_hamming(e: &HammingEmbedding, metadata: Metadata) -> Self {
        EmbeddingFile::Hamming {
            n: e.node_count(),
            k: e.k,
            dist_threshold: e.dist_threshold,
            sim_threshold: e.sim_threshold,
            codes_l: e.h_l.iter().map(Code::to_hex).collect(),
            codes_r: e.h_r.iter().map(Code::to_hex).collect(),
            metadata,
        }
    }

    pub fn metadata(&self) -> &Metadata {
        match self {
            EmbeddingFile::Distance { metadata, .. }
            | EmbeddingFile::Similarity { metadata, .. }
            | EmbeddingFile::Translational { metadata, .. }
            | EmbeddingFile::Hamming { metadata, .. } => metadata,
        }
    }

    /// Validate and build the runtime embedding.
    pub fn into_stored(self) -> Result<StoredEmbedding> {
        match self {
            EmbeddingFile::Distance {
                n,
                dim,
                threshold,
                phi_out,
                phi_in,
                ..
            } => {
                let threshold = match threshold {
                    ThresholdField::Uniform(t) => Threshold::Uniform(t),
                    ThresholdField::PerSource(ts) => Threshold::PerSource(ts),
                };
                let e = DistanceEmbedding::new(phi_out, phi_in, threshold)
                    .map_err(|err| Error::Parse(err.to_string()))?;
                check_counts(n, e.node_count(), dim, e.dim())?;
                Ok(StoredEmbedding::Distance(e))
            }
            EmbeddingFile::Similarity {
                n,
                dim,
                threshold,
                phi_l,
                phi_r,
                ..
            } => {
                let e = SimilarityEmbedding::new(phi_l, phi_r, threshold)
                    .map_err(|err| Error::Parse(err.to_string()))?;
                check_counts(n, e.node_count(), dim, e.dim())?;
                Ok(StoredEmbedding::Similarity(e))
            }
            EmbeddingFile::Translational {
                n,
                dim,
                thresholds,
                phi,
                z,
                ..
            } => {
                let e = TranslationalEmbedding::new(phi, z, thresholds)
                    .map_err(|err| Error::Parse(err.to_string()))?;
                check_counts(n, e.node_count(), dim, e.dim())?;
                Ok(StoredEmbedding::Translational(e))
            }
            EmbeddingFile::Hamming {
                n,
                k,
                dist_threshold,
                sim_threshold,
                codes_l,
                codes_r,
                ..
            } => {
                let parse_codes = |codes: Vec<String>| -> Result<Vec<Code>> {
                    codes.iter().map(|s| Code::from_hex(s, k)).collect()
                };
                let h_l = parse_codes(codes_l)?;
                let h_r = parse_codes(codes_r)?;
                if h_l.len() != n || h_r.len() != n {
                    return Err(Error::Parse(format!(
                        "hamming embedding for n = {n} has {} / {} codes",
                        h_l.len(),
                        h_r.len()
                    )));
                }
                if dist_threshold > k {
                    return Err(Error::Parse(format!(
                        "dist_threshold {dist_threshold} exceeds code length {k}"
                    )));
                }
                Ok(StoredEmbedding::Hamming(HammingEmbedding {
                    k,
                    h_l,
                    h_r,
                    dist_threshold,
                    sim_threshold,
                }))
            }
        }
    }
}

fn check_counts(n: usize, actual_n: usize, dim: usize, actual_dim: usize) -> Result<()> {
    if n != actual_n {
        return Err(Error::Parse(format!(
            "declared n = {n} but found {actual_n} vectors"
        )));
    }
    if dim != actual_dim {
        return Err(Error::Parse(format!(
            "declared dim = {dim} but vectors have dimension {actual_dim}"
        )));
    }
    Ok(())
}

/// Serialize with fixed key order and a trailing newline.
pub fn write_embedding(file: &EmbeddingFile) -> String {
    let mut s = serde_json::to_string_pretty(file).expect("embedding files always serialize");
    s.push('\n');
    s
}

pub fn read_embedding(text: &str) -> Result<EmbeddingFile> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("embedding file: {e}")))
}
