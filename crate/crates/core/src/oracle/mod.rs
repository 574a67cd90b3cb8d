//! Exact integer linear algebra and brute-force quotient computations used as references.

mod lattice;
mod matrix;
mod quotient;

pub use lattice::{Lattice, SparseVec};
pub use matrix::{hermite_normal_form, smith_normal_form, Hermite, IntegerMatrix, Smith};
pub use quotient::{
    degree_oracle, degree_oracle_for, graded_quotient, ideal_membership, identity_staircase, DegreeOracle,
    GradedQuotient, Oracle, DEFAULT_MAX_CELLS,
};
