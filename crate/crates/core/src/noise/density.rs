use num_complex::Complex64;

use super::{NoiseError, NoiseModel};
use crate::circuit::{apply_gate, Circuit};

pub const MAX_DENSITY_QUBITS: usize = 7;

/// Density matrix stored by columns: `cols[j][i] = rho[i][j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    cols: Vec<Vec<Complex64>>,
}

impl DensityMatrix {
    pub fn zero(n_qubits: usize) -> Result<Self, NoiseError> {
        if n_qubits > MAX_DENSITY_QUBITS {
            return Err(NoiseError::TooLarge {
                qubits: n_qubits,
                max: MAX_DENSITY_QUBITS,
            });
        }
        let dim = 1 << n_qubits;
        let mut cols = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
        cols[0][0] = Complex64::new(1.0, 0.0);
        Ok(DensityMatrix { n_qubits, cols })
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.cols[j][i]
    }

    fn dagger_in_place(&mut self) {
        let dim = self.dim();
        for j in 0..dim {
            self.cols[j][j] = self.cols[j][j].conj();
            for i in j + 1..dim {
                let a = self.cols[j][i];
                self.cols[j][i] = self.cols[i][j].conj();
                self.cols[i][j] = a.conj();
            }
        }
    }

    /// `rho -> U rho U^dagger`, using `(U (U rho)^dagger)^dagger`.
    pub fn apply_unitary(&mut self, gate: &crate::circuit::Gate) {
        for col in &mut self.cols {
            apply_gate(col, gate);
        }
        self.dagger_in_place();
        for col in &mut self.cols {
            apply_gate(col, gate);
        }
        self.dagger_in_place();
    }

    /// Depolarizing channel on `qubits` with error probability `p`, i.e. a
    /// uniformly random non-identity Pauli with probability `p`. Summing over
    /// all `4^k` Paulis gives the partial trace, so the channel equals
    /// `(1 - λ) rho + λ Tr_Q(rho) ⊗ I / 2^k` with `λ = p 4^k / (4^k - 1)`.
    pub fn depolarize(&mut self, qubits: &[usize], p: f64) {
        if p == 0.0 {
            return;
        }
        let k = qubits.len() as i32;
        let paulis = 4f64.powi(k);
        let lambda = p * paulis / (paulis - 1.0);
        let mask: usize = qubits.iter().map(|&q| 1 << q).sum();
        let fill = |base: usize, s: usize| -> usize {
            qubits
                .iter()
                .enumerate()
                .fold(base & !mask, |acc, (b, &q)| acc | ((s >> b & 1) << q))
        };
        let sub = 1usize << k;
        let dim = self.dim();
        let mut out = self.cols.clone();
        for j in 0..dim {
            for i in 0..dim {
                let mut traced = Complex64::new(0.0, 0.0);
                if (i ^ j) & mask == 0 {
                    for s in 0..sub {
                        traced += self.cols[fill(j, s)][fill(i, s)];
                    }
                    traced /= sub as f64;
                }
                out[j][i] = (1.0 - lambda) * self.cols[j][i] + lambda * traced;
            }
        }
        self.cols = out;
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim()).map(|i| self.cols[i][i]).sum()
    }

    /// Probability that qubit `q` is 1.
    pub fn prob_one(&self, q: usize) -> f64 {
        (0..self.dim())
            .filter(|i| i >> q & 1 == 1)
            .map(|i| self.cols[i][i].re)
            .sum()
    }

    pub fn max_hermitian_defect(&self) -> f64 {
        let dim = self.dim();
        let mut worst: f64 = 0.0;
        for j in 0..dim {
            for i in 0..dim {
                worst = worst.max((self.cols[j][i] - self.cols[i][j].conj()).norm());
            }
        }
        worst
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }
}

/// Evolves `|0...0><0...0|` through the noisy circuit.
pub fn evolve(c: &Circuit, nm: &NoiseModel) -> Result<DensityMatrix, NoiseError> {
    let mut rho = DensityMatrix::zero(c.n_qubits())?;
    for g in c.gates() {
        let channel = nm.channel(g)?;
        rho.apply_unitary(g);
        if let Some((qubits, p)) = channel {
            rho.depolarize(&qubits, p);
        }
    }
    Ok(rho)
}

/// Probability that the control qubit (qubit 0) is read as 1.
pub fn read_one_probability(c: &Circuit, nm: &NoiseModel) -> Result<f64, NoiseError> {
    let p1 = evolve(c, nm)?.prob_one(0).clamp(0.0, 1.0);
    Ok(nm.readout[1][0] * (1.0 - p1) + nm.readout[1][1] * p1)
}

/// Exact `<Z>` of the control qubit as read out.
pub fn expectation_exact(c: &Circuit, nm: &NoiseModel) -> Result<f64, NoiseError> {
    Ok(1.0 - 2.0 * read_one_probability(c, nm)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{
        compile_controlled_diagonal, control_z_expectation, htest, iqp_from_graph, stretch_cnots,
        Gate, Part,
    };
    use crate::knot::{builtin, builtin_knots};

    fn compiled(name: &str, part: Part) -> Circuit {
        let base = iqp_from_graph(&builtin(name).unwrap().tait_graph);
        compile_controlled_diagonal(&htest(&base, part).unwrap()).unwrap()
    }

    /// Reference depolarizing channel as an explicit Pauli mixture.
    fn pauli_mixture(rho: &DensityMatrix, qubits: &[usize], p: f64) -> DensityMatrix {
        let k = qubits.len();
        let count = 1usize << (2 * k);
        let dim = rho.dim();
        let mut out = DensityMatrix {
            n_qubits: rho.n_qubits,
            cols: vec![vec![Complex64::new(0.0, 0.0); dim]; dim],
        };
        for idx in 0..count {
            let weight = if idx == 0 {
                1.0 - p
            } else {
                p / (count - 1) as f64
            };
            // Apply P to columns and rows explicitly as a matrix.
            let mut pm = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
            for col in 0..dim {
                let mut row = col;
                let mut phase = Complex64::new(1.0, 0.0);
                for (b, &q) in qubits.iter().enumerate() {
                    let kind = idx >> (2 * b) & 3;
                    let bit = row >> q & 1;
                    match kind {
                        1 => row ^= 1 << q,
                        2 => {
                            row ^= 1 << q;
                            phase *= if bit == 0 {
                                Complex64::i()
                            } else {
                                -Complex64::i()
                            };
                        }
                        3 => {
                            if bit == 1 {
                                phase = -phase;
                            }
                        }
                        _ => {}
                    }
                }
                pm[row][col] = phase;
            }
            for i in 0..dim {
                for j in 0..dim {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for a in 0..dim {
                        for b in 0..dim {
                            acc += pm[i][a] * rho.get(a, b) * pm[j][b].conj();
                        }
                    }
                    out.cols[j][i] += weight * acc;
                }
            }
        }
        out
    }

    #[test]
    fn channel_matches_pauli_mixture() {
        let c = Circuit::new(
            3,
            vec![
                Gate::H(0),
                Gate::Rz(0, 0.7),
                Gate::Cnot {
                    control: 0,
                    target: 2,
                },
                Gate::H(1),
                Gate::S(2),
            ],
        )
        .unwrap();
        let mut rho = evolve(&c, &NoiseModel::ideal()).unwrap();
        for qubits in [vec![0], vec![2], vec![0, 2], vec![2, 1]] {
            let expected = pauli_mixture(&rho, &qubits, 0.13);
            let mut got = rho.clone();
            got.depolarize(&qubits, 0.13);
            for i in 0..8 {
                for j in 0..8 {
                    assert!((got.get(i, j) - expected.get(i, j)).norm() < 1e-12);
                }
            }
            rho = got;
        }
    }

    #[test]
    fn noiseless_matches_pure_state() {
        for k in builtin_knots() {
            let base = iqp_from_graph(&k.tait_graph);
            for part in [Part::Real, Part::Imag] {
                let c = compile_controlled_diagonal(&htest(&base, part).unwrap()).unwrap();
                let exact = expectation_exact(&c, &NoiseModel::ideal()).unwrap();
                let pure = control_z_expectation(&c).unwrap();
                assert!((exact - pure).abs() < 1e-12, "{} {part:?}", k.name);
            }
        }
    }

    #[test]
    fn randomizing_readout_gives_zero() {
        let nm = NoiseModel {
            readout: [[0.5, 0.5], [0.5, 0.5]],
            ..NoiseModel::default()
        };
        let v = expectation_exact(&compiled("trefoil", Part::Imag), &nm).unwrap();
        assert!(v.abs() < 1e-12);
    }

    #[test]
    fn stretching_decays_signal() {
        let nm = NoiseModel {
            p_1q: 0.0,
            readout: [[1.0, 0.0], [0.0, 1.0]],
            ..NoiseModel::default()
        };
        let c = compiled("trefoil", Part::Imag);
        let z1 = expectation_exact(&c, &nm).unwrap();
        let z3 = expectation_exact(&stretch_cnots(&c, 3).unwrap(), &nm).unwrap();
        assert!(z3.abs() < z1.abs() && z1.abs() <= 0.5, "{z1} {z3}");
    }

    #[test]
    fn state_stays_physical() {
        let c = compiled("trefoil+twist", Part::Real);
        let nm = NoiseModel {
            p_cnot: 0.05,
            p_1q: 0.02,
            ..NoiseModel::default()
        };
        let mut rho = DensityMatrix::zero(c.n_qubits()).unwrap();
        for g in c.gates() {
            rho.apply_unitary(g);
            if let Some((q, p)) = nm.channel(g).unwrap() {
                rho.depolarize(&q, p);
            }
            assert!((rho.trace() - 1.0).norm() < 1e-10);
            assert!(rho.max_hermitian_defect() < 1e-12);
        }
    }

    #[test]
    fn limits_and_abstract_gates() {
        assert!(matches!(
            DensityMatrix::zero(8),
            Err(NoiseError::TooLarge { .. })
        ));
        let abstract_circuit = Circuit::new(2, vec![Gate::KPlus(0, 1)]).unwrap();
        assert!(matches!(
            expectation_exact(&abstract_circuit, &NoiseModel::default()),
            Err(NoiseError::NotCompiled(_))
        ));
    }
}
