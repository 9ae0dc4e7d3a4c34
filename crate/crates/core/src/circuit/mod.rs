//! Qubit circuits for the `q = 2` Potts amplitude: the IQP circuit of a Tait
//! graph, Hadamard tests, controlled-diagonal synthesis, CNOT stretching and a
//! dense simulator used as the reference.

mod build;
mod gate;
mod sim;
mod synth;

pub use build::{htest, iqp_from_graph, HTest, Part};
pub use gate::Gate;
pub use sim::{
    amplitude, apply_gate, control_z_expectation, statevector, unitary_of, StateVector,
    MAX_STATE_QUBITS, MAX_UNITARY_QUBITS,
};
pub use synth::{
    compile_circuit, compile_controlled_diagonal, peephole, stretch_cnots, synthesize_diagonal,
};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CircuitError {
    #[error("gate {gate} uses qubit {qubit} on a {n_qubits}-qubit circuit")]
    QubitOutOfRange {
        gate: String,
        qubit: usize,
        n_qubits: usize,
    },
    #[error("gate {0} repeats a qubit")]
    RepeatedQubit(String),
    #[error("gate {0} is not diagonal")]
    NotDiagonal(String),
    #[error("stretch factor must be odd and at least 1, got {0}")]
    EvenFactor(u32),
    #[error("{qubits} qubits exceeds the dense limit of {max}")]
    TooLarge { qubits: usize, max: usize },
    #[error("circuit JSON: {0}")]
    Json(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Abstract,
    Compiled,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CircuitFile")]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
}

#[derive(Deserialize)]
struct CircuitFile {
    n_qubits: usize,
    gates: Vec<Gate>,
}

impl TryFrom<CircuitFile> for Circuit {
    type Error = CircuitError;

    fn try_from(f: CircuitFile) -> Result<Self, Self::Error> {
        Circuit::new(f.n_qubits, f.gates)
    }
}

impl Circuit {
    pub fn new(n_qubits: usize, gates: Vec<Gate>) -> Result<Self, CircuitError> {
        for g in &gates {
            g.check(n_qubits)?;
        }
        Ok(Circuit { n_qubits, gates })
    }

    pub fn empty(n_qubits: usize) -> Self {
        Circuit {
            n_qubits,
            gates: Vec::new(),
        }
    }

    pub fn push(&mut self, gate: Gate) -> Result<(), CircuitError> {
        gate.check(self.n_qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn level(&self) -> Level {
        if self.gates.iter().all(Gate::is_primitive) {
            Level::Compiled
        } else {
            Level::Abstract
        }
    }

    pub fn is_diagonal(&self) -> bool {
        self.gates.iter().all(Gate::is_diagonal)
    }

    pub fn cnot_count(&self) -> usize {
        self.gates
            .iter()
            .filter(|g| matches!(g, Gate::Cnot { .. }))
            .count()
    }

    /// Gates other than global phases, i.e. those a noisy device executes.
    pub fn physical_gate_count(&self) -> usize {
        self.gates
            .iter()
            .filter(|g| !matches!(g, Gate::Phase(_)))
            .count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("circuits serialise")
    }

    pub fn from_json(text: &str) -> Result<Self, CircuitError> {
        serde_json::from_str(text).map_err(|e| CircuitError::Json(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_is_lossless() {
        let c = Circuit::new(
            3,
            vec![
                Gate::H(0),
                Gate::Rz(1, 0.123456789012345),
                Gate::Cnot {
                    control: 0,
                    target: 2,
                },
                Gate::CKMinus(0, 1, 2),
                Gate::CCPhase(2, 0, 1, -1.0 / 3.0),
                Gate::Phase(std::f64::consts::PI / 7.0),
            ],
        )
        .unwrap();
        let text = c.to_json();
        assert_eq!(Circuit::from_json(&text).unwrap(), c);
        assert!(text.contains(r#"{"kind":"cnot","qubits":[0,2]}"#));
    }

    #[test]
    fn validation() {
        assert!(matches!(
            Circuit::new(
                2,
                vec![Gate::Cnot {
                    control: 1,
                    target: 1
                }]
            ),
            Err(CircuitError::RepeatedQubit(_))
        ));
        assert!(matches!(
            Circuit::new(2, vec![Gate::H(2)]),
            Err(CircuitError::QubitOutOfRange { .. })
        ));
        assert!(
            Circuit::from_json(r#"{"n_qubits":1,"gates":[{"kind":"rz","qubits":[0]}]}"#).is_err()
        );
        assert!(
            Circuit::from_json(r#"{"n_qubits":1,"gates":[{"kind":"h","qubits":[3]}]}"#).is_err()
        );
        assert!(
            Circuit::from_json(r#"{"n_qubits":1,"gates":[{"kind":"t","qubits":[0]}]}"#).is_err()
        );
    }

    #[test]
    fn levels() {
        let c = Circuit::new(2, vec![Gate::H(0), Gate::Phase(1.0)]).unwrap();
        assert_eq!(c.level(), Level::Compiled);
        let c = Circuit::new(2, vec![Gate::KPlus(0, 1)]).unwrap();
        assert_eq!(c.level(), Level::Abstract);
    }
}
