//! Even-valence continuum limit: the planar series and higher Catalan
//! numbers, the hodograph solution, the jet form of the continuum Toda and
//! string equations, and the solver for `z_g` as rational functions of `z_0`.
//!
//! The internal map variable `u` satisfies `z_0 = 1 + c_nu u z_0^nu`. The
//! lattice coupling is `t = -2 nu u` at `x = 1`.

mod catalan;
mod eps;
mod hodograph;
mod jets;
mod zg;

pub use catalan::*;
pub use eps::*;
pub use hodograph::*;
pub use jets::*;
pub use zg::*;

use thiserror::Error;

use crate::combinatorics::CombError;
use crate::exact_kernel::KernelError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContinuumError {
    #[error("{check} fails at order {order}")]
    Verification { check: String, order: usize },
    #[error("nonzero integration constant for z_{g} at resonant order {m}")]
    Resonance { g: usize, m: usize },
    #[error("structure violation: {0}")]
    Structure(String),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Comb(#[from] CombError),
}
