//! Jones polynomial evaluation through Potts-model partition functions and
//! noisy Hadamard-test circuits with zero-noise extrapolation.

pub mod branch;
pub mod circuit;
pub mod knot;
pub mod noise;
pub mod potts;
pub mod seed;
pub mod zne;

pub use circuit::{Circuit, CircuitError, Gate, Part};
pub use knot::{builtin, builtin_knots, KnotError, KnotRecord, Sign, TaitEdge, TaitGraph};
pub use noise::{Estimate, NoiseError, NoiseModel, ShotEngine};
pub use potts::{
    eval_point, jones_factors, jones_value, EvaluationPoint, JonesFactors, PottsError,
};
pub use zne::{
    assemble_jones, bootstrap, fit, FitModel, FitResult, JonesEstimate, Resampling, ZneDataset,
    ZneError,
};
