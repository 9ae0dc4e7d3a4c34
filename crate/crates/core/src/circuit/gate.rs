use std::f64::consts::FRAC_PI_2;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::CircuitError;

/// One gate. Qubit `k` is bit `k` of a basis-state index.
///
/// `Rz(θ) = diag(e^{-iθ/2}, e^{iθ/2})`, `P(θ) = diag(1, e^{iθ})`,
/// `CPhase(θ)` puts `e^{iθ}` on `|11>` and `Phase(θ)` is a global factor.
/// The `CK*` and `CCPhase` kinds are the controlled forms of `K*` and
/// `CPhase`, with the control listed first.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    H(usize),
    S(usize),
    Sdg(usize),
    Rz(usize, f64),
    P(usize, f64),
    Cnot { control: usize, target: usize },
    KPlus(usize, usize),
    KMinus(usize, usize),
    CPhase(usize, usize, f64),
    CKPlus(usize, usize, usize),
    CKMinus(usize, usize, usize),
    CCPhase(usize, usize, usize, f64),
    Phase(f64),
}

fn bit(index: usize, q: usize) -> bool {
    index >> q & 1 == 1
}

impl Gate {
    pub fn kind(&self) -> &'static str {
        match self {
            Gate::H(_) => "h",
            Gate::S(_) => "s",
            Gate::Sdg(_) => "sdg",
            Gate::Rz(..) => "rz",
            Gate::P(..) => "p",
            Gate::Cnot { .. } => "cnot",
            Gate::KPlus(..) => "kplus",
            Gate::KMinus(..) => "kminus",
            Gate::CPhase(..) => "cphase",
            Gate::CKPlus(..) => "ckplus",
            Gate::CKMinus(..) => "ckminus",
            Gate::CCPhase(..) => "ccphase",
            Gate::Phase(_) => "phase",
        }
    }

    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::H(q) | Gate::S(q) | Gate::Sdg(q) | Gate::Rz(q, _) | Gate::P(q, _) => vec![q],
            Gate::Cnot { control, target } => vec![control, target],
            Gate::KPlus(a, b) | Gate::KMinus(a, b) | Gate::CPhase(a, b, _) => vec![a, b],
            Gate::CKPlus(c, a, b) | Gate::CKMinus(c, a, b) | Gate::CCPhase(c, a, b, _) => {
                vec![c, a, b]
            }
            Gate::Phase(_) => Vec::new(),
        }
    }

    pub fn angle(&self) -> Option<f64> {
        match *self {
            Gate::Rz(_, a)
            | Gate::P(_, a)
            | Gate::CPhase(_, _, a)
            | Gate::CCPhase(_, _, _, a)
            | Gate::Phase(a) => Some(a),
            _ => None,
        }
    }

    pub fn is_diagonal(&self) -> bool {
        !matches!(self, Gate::H(_) | Gate::Cnot { .. })
    }

    /// Gates a compiled circuit may contain.
    pub fn is_primitive(&self) -> bool {
        matches!(
            self,
            Gate::H(_)
                | Gate::S(_)
                | Gate::Sdg(_)
                | Gate::Rz(..)
                | Gate::Cnot { .. }
                | Gate::Phase(_)
        )
    }

    pub fn is_two_qubit(&self) -> bool {
        self.qubits().len() == 2
    }

    /// Phase angle a diagonal gate puts on basis state `index`.
    pub fn diagonal_angle(&self, index: usize) -> Option<f64> {
        let eq = |a, b| bit(index, a) == bit(index, b);
        let on = |cond: bool, angle: f64| if cond { angle } else { 0.0 };
        Some(match *self {
            Gate::H(_) | Gate::Cnot { .. } => return None,
            Gate::S(q) => on(bit(index, q), FRAC_PI_2),
            Gate::Sdg(q) => on(bit(index, q), -FRAC_PI_2),
            Gate::Rz(q, a) => {
                if bit(index, q) {
                    a / 2.0
                } else {
                    -a / 2.0
                }
            }
            Gate::P(q, a) => on(bit(index, q), a),
            Gate::KPlus(a, b) => on(eq(a, b), FRAC_PI_2),
            Gate::KMinus(a, b) => on(eq(a, b), -FRAC_PI_2),
            Gate::CPhase(a, b, t) => on(bit(index, a) && bit(index, b), t),
            Gate::CKPlus(c, a, b) => on(bit(index, c) && eq(a, b), FRAC_PI_2),
            Gate::CKMinus(c, a, b) => on(bit(index, c) && eq(a, b), -FRAC_PI_2),
            Gate::CCPhase(c, a, b, t) => on(bit(index, c) && bit(index, a) && bit(index, b), t),
            Gate::Phase(t) => t,
        })
    }

    /// The same gate conditioned on `control`, for diagonal gates.
    pub fn controlled(&self, control: usize) -> Result<Vec<Gate>, CircuitError> {
        Ok(match *self {
            Gate::S(q) => vec![Gate::CPhase(control, q, FRAC_PI_2)],
            Gate::Sdg(q) => vec![Gate::CPhase(control, q, -FRAC_PI_2)],
            Gate::Rz(q, a) => vec![Gate::P(control, -a / 2.0), Gate::CPhase(control, q, a)],
            Gate::P(q, a) => vec![Gate::CPhase(control, q, a)],
            Gate::KPlus(a, b) => vec![Gate::CKPlus(control, a, b)],
            Gate::KMinus(a, b) => vec![Gate::CKMinus(control, a, b)],
            Gate::CPhase(a, b, t) => vec![Gate::CCPhase(control, a, b, t)],
            Gate::Phase(t) => vec![Gate::P(control, t)],
            g => return Err(CircuitError::NotDiagonal(g.to_string())),
        })
    }

    /// Renumbers qubits through `map`.
    pub fn remap(&self, map: impl Fn(usize) -> usize) -> Gate {
        match *self {
            Gate::H(q) => Gate::H(map(q)),
            Gate::S(q) => Gate::S(map(q)),
            Gate::Sdg(q) => Gate::Sdg(map(q)),
            Gate::Rz(q, a) => Gate::Rz(map(q), a),
            Gate::P(q, a) => Gate::P(map(q), a),
            Gate::Cnot { control, target } => Gate::Cnot {
                control: map(control),
                target: map(target),
            },
            Gate::KPlus(a, b) => Gate::KPlus(map(a), map(b)),
            Gate::KMinus(a, b) => Gate::KMinus(map(a), map(b)),
            Gate::CPhase(a, b, t) => Gate::CPhase(map(a), map(b), t),
            Gate::CKPlus(c, a, b) => Gate::CKPlus(map(c), map(a), map(b)),
            Gate::CKMinus(c, a, b) => Gate::CKMinus(map(c), map(a), map(b)),
            Gate::CCPhase(c, a, b, t) => Gate::CCPhase(map(c), map(a), map(b), t),
            Gate::Phase(t) => Gate::Phase(t),
        }
    }

    pub(crate) fn check(&self, n_qubits: usize) -> Result<(), CircuitError> {
        let qs = self.qubits();
        if let Some(&q) = qs.iter().find(|&&q| q >= n_qubits) {
            return Err(CircuitError::QubitOutOfRange {
                gate: self.to_string(),
                qubit: q,
                n_qubits,
            });
        }
        for (i, a) in qs.iter().enumerate() {
            if qs[i + 1..].contains(a) {
                return Err(CircuitError::RepeatedQubit(self.to_string()));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let qs: Vec<String> = self.qubits().iter().map(|q| q.to_string()).collect();
        write!(f, "{}({})", self.kind(), qs.join(","))?;
        if let Some(a) = self.angle() {
            write!(f, "[{a}]")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct GateRecord {
    kind: String,
    qubits: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    angle: Option<f64>,
}

impl Serialize for Gate {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GateRecord {
            kind: self.kind().to_string(),
            qubits: self.qubits(),
            angle: self.angle(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Gate {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let r = GateRecord::deserialize(d)?;
        let want = |qubits: usize, angle: bool| -> Result<(), D::Error> {
            if r.qubits.len() != qubits || r.angle.is_some() != angle {
                return Err(D::Error::custom(format!(
                    "gate `{}` takes {qubits} qubits{}",
                    r.kind,
                    if angle {
                        " and an angle"
                    } else {
                        " and no angle"
                    }
                )));
            }
            Ok(())
        };
        let q = &r.qubits;
        let a = r.angle.unwrap_or(0.0);
        let gate = match r.kind.as_str() {
            "h" => want(1, false).map(|_| Gate::H(q[0])),
            "s" => want(1, false).map(|_| Gate::S(q[0])),
            "sdg" => want(1, false).map(|_| Gate::Sdg(q[0])),
            "rz" => want(1, true).map(|_| Gate::Rz(q[0], a)),
            "p" => want(1, true).map(|_| Gate::P(q[0], a)),
            "cnot" => want(2, false).map(|_| Gate::Cnot {
                control: q[0],
                target: q[1],
            }),
            "kplus" => want(2, false).map(|_| Gate::KPlus(q[0], q[1])),
            "kminus" => want(2, false).map(|_| Gate::KMinus(q[0], q[1])),
            "cphase" => want(2, true).map(|_| Gate::CPhase(q[0], q[1], a)),
            "ckplus" => want(3, false).map(|_| Gate::CKPlus(q[0], q[1], q[2])),
            "ckminus" => want(3, false).map(|_| Gate::CKMinus(q[0], q[1], q[2])),
            "ccphase" => want(3, true).map(|_| Gate::CCPhase(q[0], q[1], q[2], a)),
            "phase" => want(0, true).map(|_| Gate::Phase(a)),
            other => Err(D::Error::custom(format!("unknown gate kind `{other}`"))),
        }?;
        Ok(gate)
    }
}
