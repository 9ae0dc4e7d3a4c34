use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::fit::{FitModel, FitResult};
use crate::potts::JonesFactors;

/// A Jones polynomial value reconstructed from the two extrapolated
/// Hadamard-test expectations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JonesEstimate {
    pub knot: String,
    pub backend_label: String,
    pub model: FitModel,
    pub cs_used: Vec<u32>,
    pub value: Complex64,
    /// Two-standard-deviation half widths of the real and imaginary parts.
    pub err_re: f64,
    pub err_im: f64,
    pub exact: Option<Complex64>,
    pub distance: Option<f64>,
}

impl JonesEstimate {
    /// True when the exact value lies inside the error rectangle.
    pub fn covers(&self, z: Complex64) -> bool {
        (self.value.re - z.re).abs() <= self.err_re && (self.value.im - z.im).abs() <= self.err_im
    }
}

/// `V = A 2^n (x + i y)` with independent linear error propagation.
pub fn assemble_jones(
    knot: &str,
    backend_label: &str,
    re: &FitResult,
    im: &FitResult,
    factors: &JonesFactors,
    exact: Option<Complex64>,
) -> JonesEstimate {
    let scale = 2f64.powi(factors.n as i32);
    let a = factors.a * scale;
    let z = Complex64::new(re.zero_noise, im.zero_noise);
    let value = a * z;
    let (ex, ey) = (re.zero_noise_err, im.zero_noise_err);
    let err_re = ((a.re * ex).powi(2) + (a.im * ey).powi(2)).sqrt();
    let err_im = ((a.im * ex).powi(2) + (a.re * ey).powi(2)).sqrt();
    let mut cs_used = re.cs_used.clone();
    cs_used.extend(&im.cs_used);
    cs_used.sort_unstable();
    cs_used.dedup();
    JonesEstimate {
        knot: knot.to_string(),
        backend_label: backend_label.to_string(),
        model: re.model,
        cs_used,
        value,
        err_re,
        err_im,
        exact,
        distance: exact.map(|e| (value - e).norm()),
    }
}
