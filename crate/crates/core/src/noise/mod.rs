//! Gate-depolarizing plus readout-confusion noise: an exact density-matrix
//! oracle, shot samplers, and readout calibration and mitigation.

mod density;
mod readout;
mod shots;

pub use density::{
    evolve, expectation_exact, read_one_probability, DensityMatrix, MAX_DENSITY_QUBITS,
};
pub use readout::{calibrate_readout, mitigate_readout, Confusion};
pub use shots::{
    sample_from_probability, sample_shots, sample_shots_exact, sample_with, Estimate, ShotCounts,
    ShotEngine,
};

use serde::{Deserialize, Serialize};

use crate::circuit::{CircuitError, Gate};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NoiseError {
    #[error("invalid noise model: {0}")]
    InvalidModel(String),
    #[error("{qubits} qubits exceeds the density-matrix limit of {max}")]
    TooLarge { qubits: usize, max: usize },
    #[error("gate {0} is not executable; compile the circuit first")]
    NotCompiled(String),
    #[error("confusion matrix is singular (|det| = {det:e})")]
    SingularConfusion { det: f64 },
    #[error("shot count must be at least 1")]
    NoShots,
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

/// Depolarizing rates per gate class and the control qubit's readout
/// confusion matrix, `readout[r][s] = P(read r | true s)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseModel {
    pub p_cnot: f64,
    pub p_1q: f64,
    pub readout: Confusion,
    /// Relative spread, in percent, of per-run `p_cnot` drift.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jitter_pct: Option<f64>,
}

impl Default for NoiseModel {
    fn default() -> Self {
        NoiseModel {
            p_cnot: 0.01,
            p_1q: 0.001,
            readout: [[0.98, 0.03], [0.02, 0.97]],
            jitter_pct: None,
        }
    }
}

impl NoiseModel {
    pub fn ideal() -> Self {
        NoiseModel {
            p_cnot: 0.0,
            p_1q: 0.0,
            readout: [[1.0, 0.0], [0.0, 1.0]],
            jitter_pct: None,
        }
    }

    pub fn validate(&self) -> Result<(), NoiseError> {
        let prob = |name: &str, p: f64| {
            if (0.0..=1.0).contains(&p) {
                Ok(())
            } else {
                Err(NoiseError::InvalidModel(format!(
                    "{name} = {p} is not a probability"
                )))
            }
        };
        prob("p_cnot", self.p_cnot)?;
        prob("p_1q", self.p_1q)?;
        for s in 0..2 {
            prob("readout entry", self.readout[0][s])?;
            prob("readout entry", self.readout[1][s])?;
            let sum = self.readout[0][s] + self.readout[1][s];
            if (sum - 1.0).abs() > 1e-9 {
                return Err(NoiseError::InvalidModel(format!(
                    "readout column {s} sums to {sum}"
                )));
            }
        }
        if let Some(j) = self.jitter_pct {
            if !(0.0..100.0).contains(&j) {
                return Err(NoiseError::InvalidModel(format!(
                    "jitter_pct = {j} must lie in [0, 100)"
                )));
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self, NoiseError> {
        let nm: NoiseModel =
            serde_json::from_str(text).map_err(|e| NoiseError::InvalidModel(e.to_string()))?;
        nm.validate()?;
        Ok(nm)
    }

    /// The model with `p_cnot` scaled by `factor` (clamped to 1).
    pub fn with_cnot_scale(&self, factor: f64) -> Self {
        NoiseModel {
            p_cnot: (self.p_cnot * factor).clamp(0.0, 1.0),
            ..self.clone()
        }
    }

    /// Error channel following `gate`: `Some((qubits, p))` or `None` for a
    /// noiseless global phase.
    pub(crate) fn channel(&self, gate: &Gate) -> Result<Option<(Vec<usize>, f64)>, NoiseError> {
        match *gate {
            Gate::Phase(_) => Ok(None),
            Gate::Cnot { control, target } => Ok(Some((vec![control, target], self.p_cnot))),
            Gate::H(q) | Gate::S(q) | Gate::Sdg(q) | Gate::Rz(q, _) => {
                Ok(Some((vec![q], self.p_1q)))
            }
            g => Err(NoiseError::NotCompiled(g.to_string())),
        }
    }
}
