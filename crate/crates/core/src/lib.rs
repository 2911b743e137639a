//! Exact computation of the compactly supported cohomology of configuration
//! spaces of points on a wedge of spheres, as representations of
//! `S_n × GL`, together with the closed formulas used to cross-check it.
//!
//! The pipeline: [`cecomplex`] builds the Chevalley–Eilenberg complex of
//! `H*(X) ⊗ ΣLie` in arity `n`, [`decomp`] turns its homology into
//! Schur-functor multiplicities, and [`closedform`] holds independent
//! formulas (Stirling numbers, moduli-space characters, Euler
//! characteristics) to test the result against.

pub mod cecomplex;
pub mod closedform;
pub mod combinat;
pub mod decomp;
pub mod lie;
pub mod linalg;
pub mod refdata;
pub mod schar;
pub mod symfunc;

pub use combinat::Partition;

/// Exact rational numbers.
pub type Q = num_rational::BigRational;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not a virtual character: {0}")]
    NotVirtualCharacter(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// An integer as an exact rational.
pub fn qint(x: i64) -> Q {
    Q::from_integer(x.into())
}
