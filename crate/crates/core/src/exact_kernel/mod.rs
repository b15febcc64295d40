//! Exact arithmetic: rationals, dense polynomials, truncated series,
//! rational functions and fraction-free linear solving.

mod biseries;
mod linalg;
mod poly;
mod ratfn;
mod rational;
mod reconstruct;
mod series;

pub use biseries::BiSeries;
pub use linalg::{solve, Solution};
pub use poly::Poly;
pub use ratfn::{ratfn_to_series, RatFn};
pub use rational::*;
pub use reconstruct::{series_to_ratfn, series_to_ratfn_report, Reconstruction};
pub use series::{Series, Var};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("series constant term must be {expected}, found {found}")]
    NonUnitConstant { expected: String, found: String },
    #[error("series has zero constant term and cannot be inverted")]
    NotInvertible,
    #[error("inner series of a composition must have zero constant term")]
    NonzeroInnerConstant,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("denominator vanishes at the expansion point")]
    PoleAtBasepoint,
    #[error("change of variable is degenerate at order 1")]
    DegenerateChangeOfVariable,
    #[error("insufficient data: {unknowns} unknowns, rank {rank} from {rows} equations")]
    InsufficientData { unknowns: usize, rank: usize, rows: usize },
    #[error("reconstruction failed: series disagrees with ansatz at order {order}")]
    ReconstructionFailure { order: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

/// Ring operations shared by the series types, so generic code (Hankel
/// factorization, lattice polynomial evaluation) can run over either.
pub trait TruncRing: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn scale_ref(&self, c: &Rational) -> Self;
    fn try_inv(&self) -> Result<Self, KernelError>;
    fn is_zero_elem(&self) -> bool;
}
