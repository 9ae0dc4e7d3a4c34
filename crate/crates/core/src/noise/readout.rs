use rand_distr::{Binomial, Distribution};

use super::{Estimate, NoiseError, NoiseModel, ShotCounts};
use crate::seed;

/// `m[r][s] = P(read r | true s)`; columns sum to 1.
pub type Confusion = [[f64; 2]; 2];

const SINGULAR_DET: f64 = 1e-6;

/// Empirical confusion matrix from `shots` preparations of each basis state.
/// Calibration circuits are measured right after preparation, so only the
/// readout channel acts on them.
pub fn calibrate_readout(nm: &NoiseModel, shots: u64, seed: u64) -> Result<Confusion, NoiseError> {
    if shots == 0 {
        return Err(NoiseError::NoShots);
    }
    let mut m = [[0.0; 2]; 2];
    for s in 0..2 {
        let mut rng = seed::rng(seed, &[s as u64]);
        let ones = Binomial::new(shots, nm.readout[1][s])
            .expect("validated probability")
            .sample(&mut rng);
        m[1][s] = ones as f64 / shots as f64;
        m[0][s] = 1.0 - m[1][s];
    }
    Ok(m)
}

/// Inverts the confusion matrix on the observed outcome frequencies, clips
/// the result to a probability vector, and scales the shot-noise error by
/// `1 / |det|`.
pub fn mitigate_readout(counts: &ShotCounts, m: &Confusion) -> Result<Estimate, NoiseError> {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if det.abs() < SINGULAR_DET {
        return Err(NoiseError::SingularConfusion { det });
    }
    let raw = counts.estimate();
    let n = counts.shots as f64;
    let (r0, r1) = (counts.zeros as f64 / n, counts.ones as f64 / n);
    let p0 = (m[1][1] * r0 - m[0][1] * r1) / det;
    let p1 = (m[0][0] * r1 - m[1][0] * r0) / det;
    let (p0, p1) = (p0.clamp(0.0, 1.0), p1.clamp(0.0, 1.0));
    let total = p0 + p1;
    let value = if total > 0.0 { (p0 - p1) / total } else { 0.0 };
    Ok(Estimate {
        value,
        std: raw.std / det.abs(),
        shots: counts.shots,
        seed: counts.seed,
    })
}
