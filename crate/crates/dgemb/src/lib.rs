//! Euclidean embeddings of directed graphs.
//!
//! A directed graph is a relation: an edge (u, v) means the relation holds
//! from u to v. This crate constructs, converts, compresses, optimizes, and
//! verifies three kinds of geometric representations of such relations, each
//! defined by an exact biconditional:
//!
//! - **distance**: `(u,v) in E  <=>  |phi_out(u) - phi_in(v)| <= t`
//! - **similarity**: `(u,v) in E  <=>  phi_l(u) . phi_r(v) >= t`
//! - **translational**: `(u,v) in E  <=>  |phi(v) - (phi(u) + z)| <= t_u`
//!   (u != v)
//!
//! Every producer here is verifier-grounded: constructions, conversions,
//! compressors, and solvers all return embeddings whose reported robustness
//! is measured from the vectors, never trusted from internal state.
//!
//! Module map:
//! - [`graph`]: directed graphs, deterministic generators, edge-list I/O,
//!   adjacency spectrum, sign-set reduction graphs.
//! - [`embed`]: embedding types, verification, robustness measurement,
//!   threshold uniformization, the translational obstruction, JSON files.
//! - [`construct`]: the SVD spherical construction, constant-norm incidence
//!   embeddings, DAG translational embeddings, and type conversions.
//! - [`compress`]: Johnson-Lindenstrauss projection and random-halfspace
//!   Hamming codes.
//! - [`optimize`]: robustness maximization by bisection over low-rank
//!   feasibility ascent, a translational fitter, and tiny exact oracles.

// Dense kernels below index two columns of the same buffer in lock-step;
// iterator rewrites obscure them.
#![allow(clippy::needless_range_loop)]

pub mod compress;
pub mod construct;
pub mod embed;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod optimize;
pub mod rng;

pub use error::{Error, Result};
