//! Ordered graphs and the simplicial set on their product.

mod graph;
mod product;

pub use graph::{Edge, Label, OrderedGraph, MAX_FACTOR_VERTICES};
pub(crate) use product::mask_to_indices;
pub use product::{Adjacency, CubeIndex, ProductComplex, ProductVertex, Simplex, MAX_DIM};
