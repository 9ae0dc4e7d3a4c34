//! Potts partition functions on signed Tait graphs and the Jones polynomial
//! values they determine.

mod brute;
mod contract;
mod point;

pub use brute::{partition_bruteforce, SatisfiedHistogram, MAX_BRUTE_FORCE_STATES};
pub use contract::{partition_contract, TensorNetwork, MAX_FACTOR_ENTRIES};
pub use point::{
    couplings, eval_point, is_lattice_root, proportionality, proportionality_at, Couplings,
    EvaluationPoint, JonesFactors,
};

use num_complex::Complex64;

use crate::knot::TaitGraph;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PottsError {
    #[error("q must be an integer >= 2, got {0}")]
    InvalidQ(u32),
    #[error("t must be nonzero")]
    ZeroT,
    #[error("{what} needs {states} entries, above the limit of {limit}")]
    TooLarge {
        what: &'static str,
        states: u128,
        limit: u128,
    },
    #[error("prefactor -t^(1/2) - t^(-1/2) vanishes at t = {0}")]
    SingularPrefactor(Complex64),
}

/// `V(t(q)) = A * Z(q)` for a Tait graph and the writhe of its diagram.
pub fn jones_value(g: &TaitGraph, writhe: i32, q: u32) -> Result<Complex64, PottsError> {
    let z = partition_contract(g, q)?;
    let a = proportionality_at(q, g.tau(), writhe, g.n())?;
    Ok(a * z)
}

/// Factors and partition function behind one Jones value, for reporting.
pub fn jones_factors(g: &TaitGraph, writhe: i32, q: u32) -> Result<JonesFactors, PottsError> {
    let point = eval_point(q)?;
    let a = proportionality_at(q, g.tau(), writhe, g.n())?;
    Ok(JonesFactors {
        t: point.t,
        tau: g.tau(),
        writhe,
        n: g.n(),
        a,
    })
}
