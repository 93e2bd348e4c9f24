//! Constructive embeddings: the SVD-based spherical construction, the
//! constant-norm incidence embedding it builds on for DAGs, and the
//! embedding-type conversions with their explicit robustness constants.

mod convert;
mod fm;
mod svd;

pub use convert::{
    distance_to_similarity, similarity_to_distance, similarity_to_spherical_distance,
};
pub use fm::{dag_translational, fm_embed, FmEmbedding};
pub use svd::svd_construct;
