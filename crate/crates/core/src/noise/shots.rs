use rand::Rng;
use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{read_one_probability, NoiseError, NoiseModel};
use crate::circuit::{Circuit, StateVector};
use crate::seed;

/// Control-qubit outcomes of a batch of shots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShotCounts {
    pub shots: u64,
    pub zeros: u64,
    pub ones: u64,
    pub seed: u64,
}

impl ShotCounts {
    /// Raw `<Z>` with its binomial standard error.
    pub fn estimate(&self) -> Estimate {
        let n = self.shots as f64;
        let value = (self.zeros as f64 - self.ones as f64) / n;
        Estimate {
            value,
            std: ((1.0 - value * value).max(0.0) / n).sqrt(),
            shots: self.shots,
            seed: self.seed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub std: f64,
    pub shots: u64,
    pub seed: u64,
}

/// How shots are produced.
///
/// `Trajectory` follows every shot through sampled Pauli errors. `Exact`
/// draws the number of ones from a binomial with the density-matrix read-out
/// probability; since only one qubit is measured and shots are independent,
/// both give the same distribution of counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShotEngine {
    Trajectory,
    #[default]
    Exact,
}

pub fn sample_with(
    engine: ShotEngine,
    c: &Circuit,
    nm: &NoiseModel,
    shots: u64,
    seed: u64,
) -> Result<ShotCounts, NoiseError> {
    match engine {
        ShotEngine::Trajectory => sample_shots(c, nm, shots, seed),
        ShotEngine::Exact => sample_shots_exact(c, nm, shots, seed),
    }
}

pub fn sample_shots_exact(
    c: &Circuit,
    nm: &NoiseModel,
    shots: u64,
    seed: u64,
) -> Result<ShotCounts, NoiseError> {
    if shots == 0 {
        return Err(NoiseError::NoShots);
    }
    sample_from_probability(read_one_probability(c, nm)?, shots, seed)
}

/// Binomial counts for a known probability of reading one; lets callers
/// reuse one density-matrix evolution across many seeds.
pub fn sample_from_probability(
    p_one: f64,
    shots: u64,
    seed: u64,
) -> Result<ShotCounts, NoiseError> {
    if shots == 0 {
        return Err(NoiseError::NoShots);
    }
    let mut rng = seed::rng(seed, &[]);
    let ones = Binomial::new(shots, p_one.clamp(0.0, 1.0))
        .expect("probability in range")
        .sample(&mut rng);
    Ok(ShotCounts {
        shots,
        zeros: shots - ones,
        ones,
        seed,
    })
}

const CHUNK: u64 = 1024;
const MAX_CACHED_AMPLITUDES: usize = 1 << 22;

/// Pauli-trajectory sampling. Shot `k` draws its errors and outcome from a
/// stream seeded by `(seed, k)`, so counts do not depend on scheduling.
pub fn sample_shots(
    c: &Circuit,
    nm: &NoiseModel,
    shots: u64,
    seed: u64,
) -> Result<ShotCounts, NoiseError> {
    if shots == 0 {
        return Err(NoiseError::NoShots);
    }
    let channels = c
        .gates()
        .iter()
        .map(|g| nm.channel(g))
        .collect::<Result<Vec<_>, _>>()?;
    // Noiseless state after each gate prefix; a shot resumes from its first
    // error instead of replaying the whole circuit.
    let mut state = StateVector::zero(c.n_qubits())?;
    let cache = (c.gates().len() + 1) << c.n_qubits() <= MAX_CACHED_AMPLITUDES;
    let mut prefix = Vec::new();
    if cache {
        prefix.push(state.clone());
    }
    for g in c.gates() {
        state.apply(g);
        if cache {
            prefix.push(state.clone());
        }
    }
    let clean_p1 = state.prob_one(0);
    let ones: u64 = (0..shots.div_ceil(CHUNK))
        .into_par_iter()
        .map(|chunk| {
            let mut ones = 0;
            for shot in chunk * CHUNK..((chunk + 1) * CHUNK).min(shots) {
                let mut rng = seed::rng(seed, &[shot]);
                let mut current: Option<StateVector> = None;
                for (k, g) in c.gates().iter().enumerate() {
                    if let Some(s) = current.as_mut() {
                        s.apply(g);
                    }
                    let Some((qubits, p)) = &channels[k] else {
                        continue;
                    };
                    if *p > 0.0 && rng.random::<f64>() < *p {
                        let s = current.get_or_insert_with(|| {
                            if cache {
                                prefix[k + 1].clone()
                            } else {
                                let mut s = StateVector::zero(c.n_qubits()).expect("size checked");
                                for h in &c.gates()[..=k] {
                                    s.apply(h);
                                }
                                s
                            }
                        });
                        apply_random_pauli(s, qubits, &mut rng);
                    }
                }
                let p1 = current.map_or(clean_p1, |s| s.prob_one(0));
                let truth = usize::from(rng.random::<f64>() < p1);
                if rng.random::<f64>() < nm.readout[1][truth] {
                    ones += 1;
                }
            }
            ones
        })
        .sum();
    Ok(ShotCounts {
        shots,
        zeros: shots - ones,
        ones,
        seed,
    })
}

/// A uniformly random non-identity Pauli on `qubits`.
fn apply_random_pauli<R: Rng>(s: &mut StateVector, qubits: &[usize], rng: &mut R) {
    let count = 1u32 << (2 * qubits.len());
    let idx = rng.random_range(1..count);
    for (b, &q) in qubits.iter().enumerate() {
        match idx >> (2 * b) & 3 {
            1 => s.apply_x(q),
            2 => s.apply_y(q),
            3 => s.apply_z(q),
            _ => {}
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{compile_controlled_diagonal, htest, iqp_from_graph, Circuit, Part};
    use crate::knot::builtin;
    use crate::noise::expectation_exact;

    fn compiled(name: &str, part: Part) -> Circuit {
        let base = iqp_from_graph(&builtin(name).unwrap().tait_graph);
        compile_controlled_diagonal(&htest(&base, part).unwrap()).unwrap()
    }

    #[test]
    fn identity_htest_never_reads_one() {
        let c =
            compile_controlled_diagonal(&htest(&Circuit::empty(2), Part::Real).unwrap()).unwrap();
        for seed in 0..3 {
            assert_eq!(
                sample_shots(&c, &NoiseModel::ideal(), 500, seed)
                    .unwrap()
                    .ones,
                0
            );
            assert_eq!(
                sample_shots_exact(&c, &NoiseModel::ideal(), 500, seed)
                    .unwrap()
                    .ones,
                0
            );
        }
    }

    #[test]
    fn noiseless_real_part_is_centred() {
        let c = compiled("trefoil", Part::Real);
        let shots = 100_000;
        let e = sample_shots(&c, &NoiseModel::ideal(), shots, 9)
            .unwrap()
            .estimate();
        assert!(e.value.abs() < 4.0 / (shots as f64).sqrt(), "{}", e.value);
    }

    #[test]
    fn trajectories_match_oracle() {
        let nm = NoiseModel {
            p_cnot: 0.03,
            p_1q: 0.01,
            ..NoiseModel::default()
        };
        for (name, part) in [
            ("trefoil", Part::Imag),
            ("closed-trefoil+twist", Part::Real),
        ] {
            let c = compiled(name, part);
            let exact = expectation_exact(&c, &nm).unwrap();
            let e = sample_shots(&c, &nm, 100_000, 21).unwrap().estimate();
            assert!(
                (e.value - exact).abs() < 5.0 * e.std,
                "{name}: {} vs {exact}",
                e.value
            );
        }
    }

    #[test]
    fn deterministic() {
        let c = compiled("trefoil", Part::Imag);
        let nm = NoiseModel::default();
        assert_eq!(
            sample_shots(&c, &nm, 5000, 4).unwrap(),
            sample_shots(&c, &nm, 5000, 4).unwrap()
        );
        assert_eq!(
            sample_shots_exact(&c, &nm, 5000, 4).unwrap(),
            sample_shots_exact(&c, &nm, 5000, 4).unwrap()
        );
        assert_ne!(
            sample_shots(&c, &nm, 5000, 4).unwrap(),
            sample_shots(&c, &nm, 5000, 5).unwrap()
        );
    }

    #[test]
    fn uncached_path_agrees() {
        // Same shots with and without the prefix cache must match exactly.
        let c = compiled("trefoil", Part::Imag);
        let nm = NoiseModel::default();
        let a = sample_shots(&c, &nm, 3000, 8).unwrap();
        let mut rng_free = 0;
        for shot in 0..3000 {
            let mut rng = seed::rng(8, &[shot]);
            let mut s = StateVector::zero(c.n_qubits()).unwrap();
            for g in c.gates() {
                s.apply(g);
                if let Some((q, p)) = nm.channel(g).unwrap() {
                    if p > 0.0 && rng.random::<f64>() < p {
                        apply_random_pauli(&mut s, &q, &mut rng);
                    }
                }
            }
            let truth = usize::from(rng.random::<f64>() < s.prob_one(0));
            if rng.random::<f64>() < nm.readout[1][truth] {
                rng_free += 1;
            }
        }
        assert_eq!(a.ones, rng_free);
    }

    #[test]
    fn raw_std() {
        let e = ShotCounts {
            shots: 100,
            zeros: 75,
            ones: 25,
            seed: 0,
        }
        .estimate();
        assert_eq!(e.value, 0.5);
        assert!((e.std - (0.75f64 / 100.0).sqrt()).abs() < 1e-15);
    }
}
