//! Combinatorial Chow rings of products of ordered graphs.

pub mod chow_ring;
pub mod degree;
pub mod error;
pub mod fourier;
pub mod graph_complex;
pub mod localization;
pub mod oracle;
pub mod poly;

pub use error::{Error, Result};
