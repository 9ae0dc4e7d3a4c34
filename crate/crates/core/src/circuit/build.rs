use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use super::{Circuit, CircuitError, Gate};
use crate::knot::{Sign, TaitGraph};

/// One qubit per vertex and one `K+`/`K-` per edge in canonical order. A
/// self-loop always has equal endpoint spins, so it becomes a global phase.
pub fn iqp_from_graph(g: &TaitGraph) -> Circuit {
    let gates = g
        .canonical_edges()
        .iter()
        .map(|e| match (e.is_loop(), e.sign) {
            (true, Sign::Plus) => Gate::Phase(FRAC_PI_2),
            (true, Sign::Minus) => Gate::Phase(-FRAC_PI_2),
            (false, Sign::Plus) => Gate::KPlus(e.u, e.v),
            (false, Sign::Minus) => Gate::KMinus(e.u, e.v),
        })
        .collect();
    Circuit::new(g.n(), gates).expect("graph edges are in range")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Part {
    Real,
    Imag,
}

impl Part {
    pub fn as_str(self) -> &'static str {
        match self {
            Part::Real => "real",
            Part::Imag => "imag",
        }
    }
}

/// Hadamard test of a diagonal circuit: control is qubit 0, system qubit `v`
/// of the base circuit is qubit `v + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct HTest {
    pub base: Circuit,
    pub part: Part,
    pub full: Circuit,
}

pub fn htest(base: &Circuit, part: Part) -> Result<HTest, CircuitError> {
    let n = base.n_qubits();
    let mut gates: Vec<Gate> = (1..=n).map(Gate::H).collect();
    gates.push(Gate::H(0));
    if part == Part::Imag {
        gates.push(Gate::Sdg(0));
    }
    for g in base.gates() {
        gates.extend(g.remap(|q| q + 1).controlled(0)?);
    }
    gates.push(Gate::H(0));
    Ok(HTest {
        base: base.clone(),
        part,
        full: Circuit::new(n + 1, gates)?,
    })
}
