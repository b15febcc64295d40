//! Genus expansion coefficients `e_g` of the free energy for even valence.
//!
//! `e_0` and `e_1` carry logarithms and are stored in closed form; for
//! `g >= 2` the coefficient is a rational function of `z_0` found by solving
//! the Hirota recursion order by order in `u` and reconstructing. All work is
//! at `w = 1`, where `E_h(u, w) = w^{2-2h} e_h(u w^{nu-1})` and a `w`-derivative
//! acts on `u^m` as multiplication by `(nu-1) m + 2 - 2h`.

mod eg;
mod lemmas;
mod logrational;

pub use eg::*;
pub use lemmas::*;
pub use logrational::*;

use thiserror::Error;

use crate::continuum_even::ContinuumError;
use crate::exact_kernel::KernelError;
use crate::fatgraph_oracle::FatGraphError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenusError {
    #[error("{check} fails: {detail}")]
    Verification { check: String, detail: String },
    #[error("solvability fails for e_{g} at resonant order {m} (face count {faces})")]
    Resonance { g: usize, m: usize, faces: i64 },
    #[error("reconstruction of e_{g} failed: {source}")]
    Reconstruction { g: usize, source: KernelError },
    #[error("e_{g} disagrees with the map count at order {m}: expected {expected}, found {found}")]
    FatGraphMismatch { g: usize, m: usize, expected: String, found: String },
    #[error("genus {0} is out of range")]
    OutOfRange(usize),
    #[error(transparent)]
    Continuum(#[from] ContinuumError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    FatGraph(#[from] FatGraphError),
}

pub(crate) fn verification(check: &str, detail: impl Into<String>) -> GenusError {
    GenusError::Verification { check: check.into(), detail: detail.into() }
}
