//! Relations of the Chow ring, the moving lemma and the non-degenerate presentation.

mod presentation;
mod relations;
mod rewrite;

pub use presentation::{nd_presentation, nd_presentation_with_limit, ChowClass, ChowRing, NdPresentation};
pub use relations::{
    reduce_mod_i1, relation_generators, rtilde_generators, RelationElement, RelationKind, RelationType,
};
pub use rewrite::{nd_part, rewrite_to_nd, CertificateTerm, Rewrite};
