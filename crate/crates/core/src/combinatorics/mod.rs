//! Partitions, box-restricted strict partitions, monomial symmetric
//! functions, hierarchy coefficients, lattice paths and the lattice
//! polynomials they generate.

mod lattice_poly;
mod partitions;
mod paths;

pub use lattice_poly::*;
pub use partitions::*;
pub use paths::*;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombError {
    #[error("parts {0:?} are not strictly decreasing")]
    NotStrict(Vec<u32>),
    #[error("malformed box: lower {lower:?} is not contained in upper {upper:?}")]
    MalformedBox { lower: Vec<u32>, upper: Vec<u32> },
    #[error("partition size {0} must be odd")]
    EvenSize(u32),
    #[error("partition has {len} parts, at most {max} allowed")]
    TooLong { len: usize, max: usize },
    #[error("valence parameter nu must be at least 1, got {0}")]
    BadNu(u32),
}
