//! Phase-polynomial synthesis of diagonal blocks into CNOT ladders and `Rz`.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

use super::{Circuit, CircuitError, Gate, HTest};

/// `(monomial, coefficient)` pairs whose sum is the gate's phase function,
/// `angle(x) = sum coefficient * prod_{q in monomial} x_q`.
fn phase_terms(g: &Gate) -> Option<Vec<(Vec<usize>, f64)>> {
    let k = |a: usize, b: usize, s: f64| {
        vec![
            (vec![], s),
            (vec![a], -s),
            (vec![b], -s),
            (vec![a, b], 2.0 * s),
        ]
    };
    let ck = |c: usize, a: usize, b: usize, s: f64| {
        vec![
            (vec![c], s),
            (vec![c, a], -s),
            (vec![c, b], -s),
            (vec![c, a, b], 2.0 * s),
        ]
    };
    Some(match *g {
        Gate::H(_) | Gate::Cnot { .. } => return None,
        Gate::S(q) => vec![(vec![q], FRAC_PI_2)],
        Gate::Sdg(q) => vec![(vec![q], -FRAC_PI_2)],
        Gate::Rz(q, a) => vec![(vec![], -a / 2.0), (vec![q], a)],
        Gate::P(q, a) => vec![(vec![q], a)],
        Gate::KPlus(a, b) => k(a, b, FRAC_PI_2),
        Gate::KMinus(a, b) => k(a, b, -FRAC_PI_2),
        Gate::CPhase(a, b, t) => vec![(vec![a, b], t)],
        Gate::CKPlus(c, a, b) => ck(c, a, b, FRAC_PI_2),
        Gate::CKMinus(c, a, b) => ck(c, a, b, -FRAC_PI_2),
        Gate::CCPhase(c, a, b, t) => vec![(vec![c, a, b], t)],
        Gate::Phase(t) => vec![(vec![], t)],
    })
}

/// Angle reduced to `(-pi, pi]`.
fn wrap(angle: f64) -> f64 {
    let r = angle.rem_euclid(TAU);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

const ZERO_ANGLE: f64 = 1e-12;

/// Rewrites a run of diagonal gates as `Rz` rotations on parities, each
/// conjugated by a CNOT ladder onto the parity's highest qubit, plus one
/// global phase. `prod_{q in T} x_q` expands into parities of subsets of `T`,
/// and `e^{i θ p} = e^{i θ/2} Rz(θ)` on the qubit carrying parity `p`.
pub fn synthesize_diagonal(gates: &[Gate]) -> Result<Vec<Gate>, CircuitError> {
    let mut monomials: BTreeMap<Vec<usize>, f64> = BTreeMap::new();
    for g in gates {
        let terms = phase_terms(g).ok_or_else(|| CircuitError::NotDiagonal(g.to_string()))?;
        for (mut m, coeff) in terms {
            m.sort_unstable();
            *monomials.entry(m).or_insert(0.0) += coeff;
        }
    }
    let mut global = 0.0;
    let mut parities: BTreeMap<Vec<usize>, f64> = BTreeMap::new();
    for (m, coeff) in monomials {
        if m.is_empty() {
            global += coeff;
            continue;
        }
        let scale = coeff * 2f64.powi(1 - m.len() as i32);
        for mask in 1u32..(1 << m.len()) {
            let subset: Vec<usize> = m
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &q)| q)
                .collect();
            let sign = if subset.len() % 2 == 1 { 1.0 } else { -1.0 };
            *parities.entry(subset).or_insert(0.0) += sign * scale;
        }
    }
    // Emit a parity containing the lowest qubit just before the same parity
    // without it, so their outer ladders meet and cancel.
    let mut terms: Vec<(Vec<usize>, f64)> = parities
        .into_iter()
        .map(|(s, theta)| (s, wrap(theta)))
        .filter(|(_, theta)| theta.abs() > ZERO_ANGLE)
        .collect();
    let low = terms
        .iter()
        .flat_map(|(s, _)| s.iter().copied())
        .min()
        .unwrap_or(0);
    terms.sort_by_key(|(s, _)| {
        let rest: Vec<usize> = s.iter().copied().filter(|&q| q != low).collect();
        (rest, !s.contains(&low))
    });
    let mut out = Vec::new();
    for (s, theta) in terms {
        let (&target, others) = s.split_last().expect("parities are nonempty");
        for &q in others.iter().rev() {
            out.push(Gate::Cnot { control: q, target });
        }
        out.push(Gate::Rz(target, theta));
        for &q in others {
            out.push(Gate::Cnot { control: q, target });
        }
        global += theta / 2.0;
    }
    let global = wrap(global);
    if global.abs() > ZERO_ANGLE {
        out.push(Gate::Phase(global));
    }
    Ok(out)
}

/// Lowers every run of non-primitive diagonal gates and cancels redundant
/// CNOT pairs.
pub fn compile_circuit(c: &Circuit) -> Result<Circuit, CircuitError> {
    let mut out = Vec::new();
    let mut run = Vec::new();
    for g in c.gates() {
        if g.is_primitive() {
            if !run.is_empty() {
                out.extend(synthesize_diagonal(&run)?);
                run.clear();
            }
            out.push(*g);
        } else {
            run.push(*g);
        }
    }
    out.extend(synthesize_diagonal(&run)?);
    Ok(peephole(&Circuit::new(c.n_qubits(), out)?))
}

/// Compiles a Hadamard test whose base circuit is diagonal.
pub fn compile_controlled_diagonal(ht: &HTest) -> Result<Circuit, CircuitError> {
    if let Some(g) = ht.base.gates().iter().find(|g| !g.is_diagonal()) {
        return Err(CircuitError::NotDiagonal(g.to_string()));
    }
    compile_circuit(&ht.full)
}

/// Removes pairs of identical CNOTs with no gate on either qubit between them.
pub fn peephole(c: &Circuit) -> Circuit {
    let mut out: Vec<Gate> = Vec::with_capacity(c.gates().len());
    for g in c.gates() {
        if let Gate::Cnot { control, target } = *g {
            let blocker = out
                .iter()
                .rposition(|h| h.qubits().iter().any(|&q| q == control || q == target));
            if let Some(i) = blocker {
                if out[i] == *g {
                    out.remove(i);
                    continue;
                }
            }
        }
        out.push(*g);
    }
    Circuit::new(c.n_qubits(), out).expect("same qubits as the input")
}

/// Replaces each CNOT by `factor` copies.
pub fn stretch_cnots(c: &Circuit, factor: u32) -> Result<Circuit, CircuitError> {
    if factor.is_multiple_of(2) {
        return Err(CircuitError::EvenFactor(factor));
    }
    let mut out = Vec::with_capacity(c.gates().len() + (factor as usize - 1) * c.cnot_count());
    for g in c.gates() {
        let copies = if matches!(g, Gate::Cnot { .. }) {
            factor as usize
        } else {
            1
        };
        out.extend(std::iter::repeat_n(*g, copies));
    }
    Circuit::new(c.n_qubits(), out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{htest, iqp_from_graph, unitary_of, Part};
    use crate::knot::builtin_knots;
    use num_complex::Complex64;

    /// Largest entry of `a - e^{iφ} b` with `φ` fixed by the largest entry of `b`.
    fn phase_distance(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> f64 {
        let (i, j) = (0..b.len())
            .flat_map(|i| (0..b.len()).map(move |j| (i, j)))
            .max_by(|&(i, j), &(k, l)| b[i][j].norm().total_cmp(&b[k][l].norm()))
            .unwrap();
        let phase = a[i][j] / b[i][j];
        let phase = phase / phase.norm();
        a.iter()
            .zip(b)
            .flat_map(|(ra, rb)| ra.iter().zip(rb).map(move |(x, y)| (x - phase * y).norm()))
            .fold(0.0, f64::max)
    }

    fn exact_distance(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> f64 {
        a.iter()
            .zip(b)
            .flat_map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| (x - y).norm()))
            .fold(0.0, f64::max)
    }

    #[test]
    fn controlled_kplus_diagonal() {
        let c = Circuit::new(3, vec![Gate::CKPlus(0, 1, 2)]).unwrap();
        let u = unitary_of(&c).unwrap();
        let i = Complex64::i();
        let one = Complex64::new(1.0, 0.0);
        // Index bits are (b, a, ctrl) from high to low.
        let expected = [one, i, one, one, one, one, one, i];
        for (k, e) in expected.iter().enumerate() {
            assert!((u[k][k] - e).norm() < 1e-15, "{k}");
        }
        let compiled = compile_circuit(&c).unwrap();
        assert_eq!(compiled.level(), crate::circuit::Level::Compiled);
        assert!(exact_distance(&unitary_of(&compiled).unwrap(), &u) < 1e-12);
    }

    #[test]
    fn builtin_htests_compile_exactly() {
        for k in builtin_knots() {
            let base = iqp_from_graph(&k.tait_graph);
            for part in [Part::Real, Part::Imag] {
                let ht = htest(&base, part).unwrap();
                let compiled = compile_controlled_diagonal(&ht).unwrap();
                let a = unitary_of(&ht.full).unwrap();
                let b = unitary_of(&compiled).unwrap();
                assert!(exact_distance(&b, &a) < 1e-10, "{} {part:?}", k.name);
                assert!(phase_distance(&b, &a) < 1e-10);
                assert!(compiled.gates().iter().all(Gate::is_primitive));
            }
        }
    }

    #[test]
    fn peephole_cancels_pairs() {
        let pair = Circuit::new(
            2,
            vec![
                Gate::Cnot {
                    control: 0,
                    target: 1
                };
                2
            ],
        )
        .unwrap();
        assert!(peephole(&pair).gates().is_empty());
        let blocked = Circuit::new(
            2,
            vec![
                Gate::Cnot {
                    control: 0,
                    target: 1,
                },
                Gate::H(1),
                Gate::Cnot {
                    control: 0,
                    target: 1,
                },
            ],
        )
        .unwrap();
        assert_eq!(peephole(&blocked).cnot_count(), 2);
        let nested = Circuit::new(
            3,
            vec![
                Gate::Cnot {
                    control: 0,
                    target: 1,
                },
                Gate::Cnot {
                    control: 2,
                    target: 1,
                },
                Gate::Phase(1.0),
                Gate::Cnot {
                    control: 2,
                    target: 1,
                },
                Gate::Cnot {
                    control: 0,
                    target: 1,
                },
            ],
        )
        .unwrap();
        assert_eq!(peephole(&nested).gates(), &[Gate::Phase(1.0)]);
    }

    #[test]
    fn synthesis_shares_ladders() {
        let c = Circuit::new(3, vec![Gate::CKPlus(0, 1, 2)]).unwrap();
        let raw = synthesize_diagonal(c.gates()).unwrap();
        let pruned = peephole(&Circuit::new(3, raw.clone()).unwrap());
        assert!(pruned.cnot_count() < Circuit::new(3, raw).unwrap().cnot_count());
    }

    #[test]
    fn stretching() {
        let c = Circuit::new(
            2,
            vec![
                Gate::H(0),
                Gate::Cnot {
                    control: 0,
                    target: 1,
                },
                Gate::Rz(1, 0.3),
            ],
        )
        .unwrap();
        assert_eq!(stretch_cnots(&c, 1).unwrap(), c);
        let s = stretch_cnots(&c, 3).unwrap();
        assert_eq!(s.cnot_count(), 3);
        assert_eq!(s.gates().len(), 5);
        assert_eq!(unitary_of(&s).unwrap(), unitary_of(&c).unwrap());
        assert!(matches!(
            stretch_cnots(&c, 2),
            Err(CircuitError::EvenFactor(2))
        ));
        assert!(matches!(
            stretch_cnots(&c, 0),
            Err(CircuitError::EvenFactor(0))
        ));
    }

    #[test]
    fn non_diagonal_base_rejected() {
        let base = Circuit::new(1, vec![Gate::S(0)]).unwrap();
        let mut ht = htest(&base, Part::Real).unwrap();
        ht.base = Circuit::new(1, vec![Gate::H(0)]).unwrap();
        assert!(matches!(
            compile_controlled_diagonal(&ht),
            Err(CircuitError::NotDiagonal(_))
        ));
    }
}
