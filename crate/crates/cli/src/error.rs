use thiserror::Error;

use genex::continuum_even::ContinuumError;
use genex::continuum_odd::OddError;
use genex::exact_kernel::KernelError;
use genex::fatgraph_oracle::FatGraphError;
use genex::genus_even::GenusError;
use genex::lattice_oracle::LatticeError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("reconstruction failed: {0}")]
    Reconstruction(String),
    #[error("output error: {0}")]
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Verification(_) | CliError::Output(_) => 1,
            CliError::Reconstruction(_) => 3,
        }
    }
}

impl From<KernelError> for CliError {
    fn from(e: KernelError) -> Self {
        match e {
            KernelError::InsufficientData { .. } | KernelError::ReconstructionFailure { .. } => {
                CliError::Reconstruction(e.to_string())
            }
            _ => CliError::Verification(e.to_string()),
        }
    }
}

impl From<ContinuumError> for CliError {
    fn from(e: ContinuumError) -> Self {
        match e {
            ContinuumError::Resonance { .. } => CliError::Reconstruction(e.to_string()),
            ContinuumError::Kernel(k) => k.into(),
            _ => CliError::Verification(e.to_string()),
        }
    }
}

impl From<GenusError> for CliError {
    fn from(e: GenusError) -> Self {
        match e {
            GenusError::Resonance { .. } | GenusError::Reconstruction { .. } => CliError::Reconstruction(e.to_string()),
            GenusError::OutOfRange(_) => CliError::Usage(e.to_string()),
            GenusError::Continuum(c) => c.into(),
            GenusError::Kernel(k) => k.into(),
            GenusError::FatGraph(f) => f.into(),
            _ => CliError::Verification(e.to_string()),
        }
    }
}

impl From<FatGraphError> for CliError {
    fn from(e: FatGraphError) -> Self {
        match e {
            FatGraphError::TooLarge { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Verification(e.to_string()),
        }
    }
}

impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> Self {
        match e {
            LatticeError::OutOfRange { .. } | LatticeError::MissingT1(_) => CliError::Usage(e.to_string()),
            LatticeError::Kernel(k) => k.into(),
            _ => CliError::Verification(e.to_string()),
        }
    }
}

impl From<OddError> for CliError {
    fn from(e: OddError) -> Self {
        match e {
            OddError::OutOfRange(_) => CliError::Usage(e.to_string()),
            OddError::Kernel(k) => k.into(),
            OddError::FatGraph(f) => f.into(),
            _ => CliError::Verification(e.to_string()),
        }
    }
}
