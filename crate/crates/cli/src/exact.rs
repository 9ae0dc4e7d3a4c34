use jonesq_core::circuit::{amplitude, iqp_from_graph, MAX_STATE_QUBITS};
use jonesq_core::knot::kauffman_jones;
use jonesq_core::potts::{
    is_lattice_root, partition_bruteforce, partition_contract, proportionality,
};
use jonesq_core::{eval_point, PottsError};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{CliError, KnotSource};

/// Every classical route to one Jones value, side by side.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactReport {
    pub knot: String,
    pub q: u32,
    pub t: Complex64,
    pub on_lattice: bool,
    pub n: usize,
    pub tau: i32,
    pub writhe: i32,
    pub prefactor: Complex64,
    pub partition_bruteforce: Option<Complex64>,
    pub partition_contract: Complex64,
    /// `2^n <+|C|+>`, available at q = 2.
    pub partition_circuit: Option<Complex64>,
    pub jones: Complex64,
    /// State-sum value from the diagram, when the knot has one.
    pub jones_kauffman: Option<Complex64>,
    /// Largest pairwise gap between the available routes.
    pub max_disagreement: f64,
    pub circuit_path: bool,
}

pub fn exact_report(src: &KnotSource, q: u32) -> Result<ExactReport, CliError> {
    let g = &src.record.tait_graph;
    let point = eval_point(q)?;
    let prefactor = proportionality(point.t, g.tau(), src.record.writhe, g.n())?;
    let contract = partition_contract(g, q)?;
    let brute = match partition_bruteforce(g, q) {
        Ok(z) => Some(z),
        Err(PottsError::TooLarge { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let circuit = if q == 2 && g.n() <= MAX_STATE_QUBITS {
        Some(amplitude(&iqp_from_graph(g))? * 2f64.powi(g.n() as i32))
    } else {
        None
    };
    let jones = prefactor * contract;
    let kauffman = match &src.diagram {
        Some(d) => Some(kauffman_jones(d, point.t)?),
        None => None,
    };
    let mut gap: f64 = 0.0;
    for z in brute.iter().chain(circuit.iter()) {
        gap = gap.max((z - contract).norm() * prefactor.norm());
    }
    if let Some(k) = kauffman {
        gap = gap.max((k - jones).norm());
    }
    Ok(ExactReport {
        knot: src.record.name.clone(),
        q,
        t: point.t,
        on_lattice: is_lattice_root(point.t),
        n: g.n(),
        tau: g.tau(),
        writhe: src.record.writhe,
        prefactor,
        partition_bruteforce: brute,
        partition_contract: contract,
        partition_circuit: circuit,
        jones,
        jones_kauffman: kauffman,
        max_disagreement: gap,
        circuit_path: q == 2,
    })
}

/// Summary of a knot source for `knot info`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KnotInfo {
    pub name: String,
    pub pd: Option<String>,
    pub crossings: usize,
    pub writhe: i32,
    pub n: usize,
    pub tau: i32,
    pub tait_edges: Vec<(usize, usize, i32)>,
    pub qubits: usize,
    pub cnots_compiled: Vec<(String, usize)>,
}

pub fn knot_info(src: &KnotSource) -> Result<KnotInfo, CliError> {
    let g = &src.record.tait_graph;
    let circuits = crate::simulate::build_circuits(
        g,
        &[jonesq_core::Part::Real, jonesq_core::Part::Imag],
        &[1],
    )?;
    Ok(KnotInfo {
        name: src.record.name.clone(),
        pd: src.record.pd.as_ref().map(|p| p.to_string()),
        crossings: g.edges().len(),
        writhe: src.record.writhe,
        n: g.n(),
        tau: g.tau(),
        tait_edges: g
            .edges()
            .iter()
            .map(|e| (e.u, e.v, e.sign.value()))
            .collect(),
        qubits: g.n() + 1,
        cnots_compiled: circuits
            .iter()
            .map(|(p, _, c)| (p.as_str().to_string(), c.cnot_count()))
            .collect(),
    })
}
