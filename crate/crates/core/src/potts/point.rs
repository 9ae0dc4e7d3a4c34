use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::PottsError;
use crate::branch::{principal_arg, principal_pow};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvaluationPoint {
    pub q: u32,
    pub t: Complex64,
}

impl EvaluationPoint {
    pub fn on_lattice(&self) -> bool {
        is_lattice_root(self.t)
    }
}

/// The Jones variable paired with an integer Potts dimension `q`, the root of
/// `q = t + 1/t + 2` given by `(q + sqrt(q) sqrt(q - 4) - 2) / 2` with
/// `sqrt(q - 4) = i sqrt(4 - q)` below 4.
pub fn eval_point(q: u32) -> Result<EvaluationPoint, PottsError> {
    if q < 2 {
        return Err(PottsError::InvalidQ(q));
    }
    let qf = q as f64;
    let radical = if q < 4 {
        Complex64::new(0.0, qf.sqrt() * (4.0 - qf).sqrt())
    } else {
        Complex64::new(qf.sqrt() * (qf - 4.0).sqrt(), 0.0)
    };
    let t = (qf - 2.0 + radical) / 2.0;
    Ok(EvaluationPoint { q, t })
}

/// Whether `t` is a unit root at angle 0, ±π/3, ±π/2, ±2π/3 or π, the points
/// where the Potts contraction is classically tractable.
pub fn is_lattice_root(t: Complex64) -> bool {
    const TOL: f64 = 1e-12;
    if (t.norm() - 1.0).abs() > TOL {
        return false;
    }
    let theta = principal_arg(t);
    [0.0, PI / 3.0, PI / 2.0, 2.0 * PI / 3.0, PI]
        .iter()
        .any(|&a| (theta.abs() - a).abs() < TOL)
}

/// Edge weights for spins that agree: `(-1/t, -t)` for `+` and `-` edges.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Couplings {
    pub w_plus: Complex64,
    pub w_minus: Complex64,
}

pub fn couplings(t: Complex64) -> Result<Couplings, PottsError> {
    if t == Complex64::new(0.0, 0.0) {
        return Err(PottsError::ZeroT);
    }
    Ok(Couplings {
        w_plus: -t.inv(),
        w_minus: -t,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JonesFactors {
    pub t: Complex64,
    pub tau: i32,
    pub writhe: i32,
    pub n: usize,
    pub a: Complex64,
}

/// `(-t^{1/2} - t^{-1/2})^{-(n+1)} (-t^{3/4})^w t^{tau/4}` with every
/// fractional power on the principal branch.
pub fn proportionality(t: Complex64, tau: i32, w: i32, n: usize) -> Result<Complex64, PottsError> {
    if t == Complex64::new(0.0, 0.0) {
        return Err(PottsError::ZeroT);
    }
    let base = -principal_pow(t, 0.5) - principal_pow(t, -0.5);
    if base.norm() < 1e-12 {
        return Err(PottsError::SingularPrefactor(t));
    }
    let writhe_part = (-principal_pow(t, 0.75)).powi(w);
    let tau_part = principal_pow(t, tau as f64 / 4.0);
    Ok(base.powi(-(n as i32 + 1)) * writhe_part * tau_part)
}

/// The prefactor at `t(q)`. There `(-t^{1/2} - t^{-1/2})^2 = q`, so even
/// powers of the base are taken as real powers of `q`.
pub fn proportionality_at(q: u32, tau: i32, w: i32, n: usize) -> Result<Complex64, PottsError> {
    let t = eval_point(q)?.t;
    let generic = proportionality(t, tau, w, n)?;
    let e = n as i32 + 1;
    let base = -principal_pow(t, 0.5) - principal_pow(t, -0.5);
    let odd = if e % 2 == 0 {
        Complex64::new(1.0, 0.0)
    } else {
        base.inv()
    };
    let even = (q as f64).powi(-(e / 2));
    let writhe_part = (-principal_pow(t, 0.75)).powi(w);
    let tau_part = principal_pow(t, tau as f64 / 4.0);
    debug_assert!(
        (generic - even * odd * writhe_part * tau_part).norm() < 1e-9 * generic.norm().max(1.0)
    );
    Ok(even * odd * writhe_part * tau_part)
}
