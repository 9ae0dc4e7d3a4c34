use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rayon::prelude::*;

use super::{Circuit, CircuitError, Gate};

pub const MAX_UNITARY_QUBITS: usize = 11;
pub const MAX_STATE_QUBITS: usize = 24;

/// Dense state vector; amplitude `k` belongs to the basis state whose bit `q`
/// is the value of qubit `q`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn zero(n_qubits: usize) -> Result<Self, CircuitError> {
        Self::basis(n_qubits, 0)
    }

    pub fn basis(n_qubits: usize, index: usize) -> Result<Self, CircuitError> {
        if n_qubits > MAX_STATE_QUBITS {
            return Err(CircuitError::TooLarge {
                qubits: n_qubits,
                max: MAX_STATE_QUBITS,
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { n_qubits, amps })
    }

    /// `|+>` on every qubit.
    pub fn plus(n_qubits: usize) -> Result<Self, CircuitError> {
        let mut s = Self::zero(n_qubits)?;
        let a = Complex64::new((s.amps.len() as f64).sqrt().recip(), 0.0);
        s.amps.iter_mut().for_each(|x| *x = a);
        Ok(s)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn apply(&mut self, gate: &Gate) {
        apply_gate(&mut self.amps, gate);
    }

    pub fn apply_x(&mut self, q: usize) {
        let m = 1 << q;
        for i in 0..self.amps.len() {
            if i & m == 0 {
                self.amps.swap(i, i | m);
            }
        }
    }

    pub fn apply_z(&mut self, q: usize) {
        let m = 1 << q;
        for (i, a) in self.amps.iter_mut().enumerate() {
            if i & m != 0 {
                *a = -*a;
            }
        }
    }

    /// Y up to a global phase, which no measurement can see.
    pub fn apply_y(&mut self, q: usize) {
        self.apply_x(q);
        self.apply_z(q);
    }

    pub fn run(&mut self, circuit: &Circuit) {
        for g in circuit.gates() {
            self.apply(g);
        }
    }

    /// Probability that qubit `q` reads 1.
    pub fn prob_one(&self, q: usize) -> f64 {
        let m = 1 << q;
        self.amps
            .iter()
            .enumerate()
            .filter(|(i, _)| i & m != 0)
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    pub fn z_expectation(&self, q: usize) -> f64 {
        1.0 - 2.0 * self.prob_one(q)
    }

    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }
}

/// `e^{i angle}`, exact at multiples of a quarter turn so that products of
/// K gates do not pick up rounding that depends on gate order.
fn phase_factor(angle: f64) -> Complex64 {
    let quarters = angle / std::f64::consts::FRAC_PI_2;
    let k = quarters.round();
    if (quarters - k).abs() < 1e-12 {
        match (k as i64).rem_euclid(4) {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    } else {
        Complex64::from_polar(1.0, angle)
    }
}

/// Applies one gate to a vector of `2^n` amplitudes.
pub fn apply_gate(amps: &mut [Complex64], gate: &Gate) {
    match *gate {
        Gate::H(q) => {
            let m = 1 << q;
            for i in 0..amps.len() {
                if i & m == 0 {
                    let (a, b) = (amps[i], amps[i | m]);
                    amps[i] = (a + b) * FRAC_1_SQRT_2;
                    amps[i | m] = (a - b) * FRAC_1_SQRT_2;
                }
            }
        }
        Gate::Cnot { control, target } => {
            let (c, t) = (1 << control, 1 << target);
            for i in 0..amps.len() {
                if i & c != 0 && i & t == 0 {
                    amps.swap(i, i | t);
                }
            }
        }
        Gate::Phase(t) => {
            let f = phase_factor(t);
            amps.iter_mut().for_each(|a| *a *= f);
        }
        g => {
            for (i, a) in amps.iter_mut().enumerate() {
                let angle = g.diagonal_angle(i).expect("remaining gates are diagonal");
                if angle != 0.0 {
                    *a *= phase_factor(angle);
                }
            }
        }
    }
}

/// Output of the circuit on `|0...0>`.
pub fn statevector(c: &Circuit) -> Result<StateVector, CircuitError> {
    let mut s = StateVector::zero(c.n_qubits())?;
    s.run(c);
    Ok(s)
}

/// Dense unitary as rows, built column by column.
pub fn unitary_of(c: &Circuit) -> Result<Vec<Vec<Complex64>>, CircuitError> {
    let n = c.n_qubits();
    if n > MAX_UNITARY_QUBITS {
        return Err(CircuitError::TooLarge {
            qubits: n,
            max: MAX_UNITARY_QUBITS,
        });
    }
    let dim = 1 << n;
    let columns: Vec<StateVector> = (0..dim)
        .into_par_iter()
        .map(|j| {
            let mut s = StateVector::basis(n, j).expect("size checked");
            s.run(c);
            s
        })
        .collect();
    Ok((0..dim)
        .map(|i| columns.iter().map(|col| col.amps[i]).collect())
        .collect())
}

/// `<+...+| C |+...+>`.
pub fn amplitude(c: &Circuit) -> Result<Complex64, CircuitError> {
    let plus = StateVector::plus(c.n_qubits())?;
    let mut s = plus.clone();
    s.run(c);
    Ok(plus.inner(&s))
}

/// Noiseless `<Z>` of qubit 0 after running the circuit on `|0...0>`.
pub fn control_z_expectation(c: &Circuit) -> Result<f64, CircuitError> {
    Ok(statevector(c)?.z_expectation(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn hadamard_matrix() {
        let u = unitary_of(&Circuit::new(1, vec![Gate::H(0)]).unwrap()).unwrap();
        let h = FRAC_1_SQRT_2;
        assert_eq!(
            u,
            vec![vec![c(h, 0.0), c(h, 0.0)], vec![c(h, 0.0), c(-h, 0.0)]]
        );
    }

    #[test]
    fn k_matrices() {
        let u = unitary_of(&Circuit::new(2, vec![Gate::KPlus(0, 1)]).unwrap()).unwrap();
        let diag: Vec<Complex64> = (0..4).map(|i| u[i][i]).collect();
        let expected = [c(0.0, 1.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)];
        for (a, b) in diag.iter().zip(expected) {
            assert!((a - b).norm() < 1e-15);
        }
        let u = unitary_of(&Circuit::new(2, vec![Gate::KMinus(0, 1)]).unwrap()).unwrap();
        assert!((u[3][3] - c(0.0, -1.0)).norm() < 1e-15);
        assert_eq!(u[1][2], c(0.0, 0.0));
    }

    #[test]
    fn cnot_little_endian() {
        let s = statevector(
            &Circuit::new(
                2,
                vec![
                    Gate::H(0),
                    Gate::Cnot {
                        control: 0,
                        target: 1,
                    },
                ],
            )
            .unwrap(),
        )
        .unwrap();
        assert!((s.amplitudes()[3].re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert_eq!(s.amplitudes()[1], c(0.0, 0.0));
    }

    #[test]
    fn size_limits() {
        assert!(matches!(
            unitary_of(&Circuit::empty(12)),
            Err(CircuitError::TooLarge { .. })
        ));
        assert!(StateVector::zero(25).is_err());
    }
}
