//! Exact computations around the exponents of a simple Lie algebra and the
//! heights of its positive roots.
//!
//! - [`rootsys`]: root systems, reflections and Weyl groups from Cartan data.
//! - [`tpoly`]: integer polynomials in `t`.
//! - [`fseries`]: height-truncated series in `e^{-alpha_i}` and the xi product.
//! - [`vecpart`]: vector partitions into positive roots and their weights.
//! - [`identities`]: verifiers for the coefficient formula, the Kostka-Foulkes
//!   value `K_{theta,0}(t)` and the exponents/heights duality.
//! - [`cli`]: the command-line front end.

pub mod cli;
pub mod error;
pub mod fseries;
pub mod identities;
pub mod rootsys;
pub mod tpoly;
pub mod vecpart;

pub use error::{Error, Result};
pub use fseries::ExpSeries;
pub use rootsys::{
    build_root_system, cartan_matrix, root_system, CartanMatrix, RootSystem, RootVector,
    WeylElement,
};
pub use tpoly::TPoly;
pub use vecpart::VectorPartition;
