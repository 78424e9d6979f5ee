//! Lift-and-project relaxations of the stable set polytope.
//!
//! The crate covers the LS and LS₊ operators applied to the edge relaxation
//! of a graph, exact certificates of LS₊-imperfection for the graphs `H^k`,
//! graph operations that preserve imperfection, reduction of hub graphs to
//! two small base graphs, and classification of small graphs.
//!
//! Exact computations use [`Rational`]; the numeric semidefinite search runs
//! in `f64` and always hands its result to an exact verifier.

pub mod classify;
pub mod config;
pub mod dd;
pub mod error;
pub mod graph;
pub mod hk;
pub mod lift;
pub mod linalg;
pub mod lp;
pub mod polyhedra;
pub mod reduction;
pub mod scalar;
pub mod sdp;

pub use error::{Error, Result};
pub use scalar::{Rational, Scalar};

/// Dense exact matrix.
pub type RationalMatrix = linalg::Matrix<Rational>;
/// Dense `f64` matrix.
pub type FloatMatrix = linalg::Matrix<f64>;
