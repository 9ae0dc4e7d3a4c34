//! Zero-noise extrapolation: pooled fits over CNOT stretch factors,
//! bootstrap uncertainties, and assembly of complex Jones estimates.

mod assemble;
mod bootstrap;
mod dataset;
mod fit;

pub use assemble::{assemble_jones, JonesEstimate};
pub use bootstrap::{bootstrap, Resampling};
pub use dataset::{DatasetRow, ZneDataset};
pub use fit::{fit, raw_estimate, FitModel, FitResult};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ZneError {
    #[error("fit needs at least two distinct stretch factors, got {0:?}")]
    TooFewStretches(Vec<u32>),
    #[error("no samples at stretch factor {0}")]
    MissingStretch(u32),
    #[error("exponential fit did not converge: {0}")]
    NonConvergent(String),
    #[error("tuple resampling needs the same number of runs at every stretch factor")]
    RaggedTuples,
    #[error("dataset is missing the {0} part")]
    MissingPart(&'static str),
    #[error("invalid dataset: {0}")]
    InvalidDataset(String),
}
