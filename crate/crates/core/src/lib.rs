//! Exact computation of the genus expansion of even-valence random matrix
//! free energies, with independent lattice and fat-graph oracles.

pub mod checks;
pub mod combinatorics;
pub mod continuum_even;
pub mod continuum_odd;
pub mod exact_kernel;
pub mod fatgraph_oracle;
pub mod genus_even;
pub mod lattice_oracle;
