use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid vertex: {0}")]
    InvalidVertex(String),
    #[error("not a 1-simplex: {0} -> {1}")]
    NotOneSimplex(String, String),
    #[error("polynomial is not homogeneous (degrees {0} and {1})")]
    NotHomogeneous(usize, usize),
    #[error("wrong graded degree: expected {expected}, got {actual}")]
    WrongDegree { expected: usize, actual: usize },
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("size limit exceeded: {size} basis monomials, limit {limit}")]
    SizeLimit { size: usize, limit: usize },
    #[error("kernel condition fails on adjacency {0}")]
    NotInKernel(String),
    #[error("invalid graph homomorphism: {0}")]
    InvalidHom(String),
    #[error("support outside sub-complex: {0}")]
    OutsideSubcomplex(String),
    #[error("quotient is not free of rank one: {0}")]
    NotRankOne(String),
    #[error("non-dyadic coefficient {0}")]
    NonDyadic(String),
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
