//! Finite-n ground truth: deformed Gaussian moments, Hankel factorization,
//! recurrence coefficients and tau functions as exact truncated series, and
//! the lattice identities they satisfy.

mod asymptotics;
mod table;
mod verify;

pub use asymptotics::*;
pub use table::*;
pub use verify::*;

use thiserror::Error;

use crate::exact_kernel::KernelError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("leading Hankel minor {index} vanishes at the origin")]
    Degenerate { index: usize },
    #[error("{equation} fails at n = {n}, first nonzero residual at total order {order}")]
    VerificationFailure { equation: String, n: usize, order: usize },
    #[error("{0} needs a table built with the t1 deformation")]
    MissingT1(String),
    #[error("n = {n} needs offsets {lo}..={hi}, table holds 0..={n_max}")]
    OutOfRange { n: usize, lo: i64, hi: i64, n_max: usize },
    #[error("asymptotic residuals diverge for t-order {order}")]
    Divergent { order: usize },
    #[error(transparent)]
    Kernel(#[from] KernelError),
}
