//! Principal-branch fractional powers of complex numbers.

use std::f64::consts::PI;

use num_complex::Complex64;

/// Argument in `(-pi, pi]`.
pub fn principal_arg(z: Complex64) -> f64 {
    let theta = z.im.atan2(z.re);
    if theta <= -PI {
        PI
    } else {
        theta
    }
}

/// `z^p := |z|^p e^{i p Arg z}` with `Arg z` in `(-pi, pi]`.
pub fn principal_pow(z: Complex64, p: f64) -> Complex64 {
    let r = z.norm();
    if r == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    Complex64::from_polar(r.powf(p), p * principal_arg(z))
}
