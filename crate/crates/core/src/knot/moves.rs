//! Reidemeister I and II insertions on PD codes.
//!
//! Both moves split existing edges into three pieces and renumber every label
//! so that the code still counts `1..=2c` along the strand, starting from the
//! first piece of the old edge 1.

use rand::seq::IndexedRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::diagram::{orient_and_sign, KnotDiagram};
use super::pd::{Crossing, PdCode};
use super::tait::Sign;
use super::KnotError;

/// Shape of an R1 kink: its crossing sign and whether the strand passes over
/// on the first visit to the new crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Kink {
    pub sign: Sign,
    pub over_first: bool,
}

impl Kink {
    pub fn positive() -> Self {
        Kink {
            sign: Sign::Plus,
            over_first: false,
        }
    }

    pub fn negative() -> Self {
        Kink {
            sign: Sign::Minus,
            over_first: false,
        }
    }
}

/// One applied move, for reporting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "lowercase")]
pub enum Move {
    R1 { edge: u32, kink: Kink },
    R2 { face: usize, over: u32, under: u32 },
}

/// Maps old labels to new ones when some edges are cut into three pieces.
struct Relabel {
    first: Vec<u32>,
    pieces: Vec<u32>,
}

impl Relabel {
    fn new(edge_count: usize, split: &[u32]) -> Self {
        let mut first = vec![0u32; edge_count + 1];
        let mut pieces = vec![1u32; edge_count + 1];
        for &s in split {
            pieces[s as usize] = 3;
        }
        let mut next = 1;
        for l in 1..=edge_count {
            first[l] = next;
            next += pieces[l];
        }
        Relabel { first, pieces }
    }

    fn piece(&self, label: u32, k: u32) -> u32 {
        self.first[label as usize] + k
    }

    fn relabel_existing(&self, d: &KnotDiagram) -> Vec<Crossing> {
        d.pd()
            .crossings()
            .iter()
            .enumerate()
            .map(|(x, crossing)| {
                let mut labels = crossing.0;
                for (pos, l) in labels.iter_mut().enumerate() {
                    let last = self.pieces[*l as usize] - 1;
                    *l = if d.is_incoming(x, pos) {
                        self.piece(*l, last)
                    } else {
                        self.piece(*l, 0)
                    };
                }
                Crossing(labels)
            })
            .collect()
    }
}

/// Inserts a kink on `edge`. The writhe moves by the kink's sign.
pub fn r1_insert(d: &KnotDiagram, edge: u32, kink: Kink) -> Result<KnotDiagram, KnotError> {
    let m = d.pd().edge_count() as u32;
    let (e1, l, e2, mut crossings) = if m == 0 {
        if edge != 1 {
            return Err(KnotError::NoSuchEdge(edge));
        }
        (1, 2, 1, Vec::new())
    } else {
        if edge == 0 || edge > m {
            return Err(KnotError::NoSuchEdge(edge));
        }
        let relabel = Relabel::new(m as usize, &[edge]);
        let e1 = relabel.piece(edge, 0);
        (e1, e1 + 1, e1 + 2, relabel.relabel_existing(d))
    };
    let x = match (kink.sign, kink.over_first) {
        (Sign::Plus, false) => [e1, l, l, e2],
        (Sign::Minus, false) => [e1, e2, l, l],
        (Sign::Plus, true) => [l, e1, e2, l],
        (Sign::Minus, true) => [l, l, e2, e1],
    };
    crossings.push(Crossing(x));
    Ok(orient_and_sign(&PdCode::new(crossings)?).with_outer_face(d.outer_face()))
}

/// Pushes a finger of edge `over` across edge `under` through the first face
/// they both bound, adding one positive and one negative crossing.
pub fn r2_insert(d: &KnotDiagram, over: u32, under: u32) -> Result<KnotDiagram, KnotError> {
    let faces = d.faces()?;
    let face = faces
        .iter()
        .find(|f| f.edges.iter().any(|e| e.0 == over) && f.edges.iter().any(|e| e.0 == under))
        .ok_or(KnotError::EdgesNotCoFacial { a: over, b: under })?;
    r2_insert_in_face(d, face.id, over, under)
}

/// As [`r2_insert`] with an explicit face.
pub fn r2_insert_in_face(
    d: &KnotDiagram,
    face: usize,
    over: u32,
    under: u32,
) -> Result<KnotDiagram, KnotError> {
    let m = d.pd().edge_count() as u32;
    for e in [over, under] {
        if e == 0 || e > m {
            return Err(KnotError::NoSuchEdge(e));
        }
    }
    if over == under {
        return Err(KnotError::DegenerateMove(format!(
            "R2 needs two distinct edges, got {over} twice"
        )));
    }
    let faces = d.faces()?;
    let f = faces.get(face).ok_or(KnotError::InvalidFace {
        face,
        faces: faces.len(),
    })?;
    let along = |label: u32| f.edges.iter().find(|e| e.0 == label).map(|e| e.1);
    let (Some(a_along), Some(b_along)) = (along(over), along(under)) else {
        return Err(KnotError::EdgesNotCoFacial { a: over, b: under });
    };

    // Local picture: the face lies between the over-edge (on top, walked
    // eastwards) and the under-edge (below, walked westwards). The finger
    // drops from the top with its left arm through P and right arm through Q
    // and its tip below the under-edge.
    let relabel = Relabel::new(m as usize, &[over, under]);
    let a = |k| relabel.piece(over, k);
    let b = |k| relabel.piece(under, k);
    let (left_arm, right_arm) = if a_along { (a(0), a(2)) } else { (a(2), a(0)) };
    let tip = a(1);
    let b_mid = b(1);
    let (b_west, b_east) = if b_along { (b(2), b(0)) } else { (b(0), b(2)) };

    // [W, S, E, N] around each new crossing.
    let p = [b_west, tip, b_mid, left_arm];
    let q = [b_mid, tip, b_east, right_arm];
    let start_west = |[w, s, e, n]: [u32; 4]| if b_along { [e, n, w, s] } else { [w, s, e, n] };

    let mut crossings = relabel.relabel_existing(d);
    crossings.push(Crossing(start_west(p)));
    crossings.push(Crossing(start_west(q)));
    Ok(orient_and_sign(&PdCode::new(crossings)?).with_outer_face(d.outer_face()))
}

/// Applies `count` random R1/R2 insertions and returns the moves used.
pub fn random_moves<R: Rng + ?Sized>(
    d: &KnotDiagram,
    count: usize,
    rng: &mut R,
) -> Result<(KnotDiagram, Vec<Move>), KnotError> {
    let mut current = d.clone();
    let mut log = Vec::with_capacity(count);
    for _ in 0..count {
        let m = current.pd().edge_count().max(1) as u32;
        let candidates: Vec<(usize, u32, u32)> = if m >= 2 {
            current
                .faces()?
                .iter()
                .flat_map(|f| {
                    let mut labels: Vec<u32> = f.edges.iter().map(|e| e.0).collect();
                    labels.sort_unstable();
                    labels.dedup();
                    let pairs: Vec<(usize, u32, u32)> = labels
                        .iter()
                        .flat_map(|&x| {
                            labels
                                .iter()
                                .filter(move |&&y| y != x)
                                .map(move |&y| (f.id, x, y))
                        })
                        .collect();
                    pairs
                })
                .collect()
        } else {
            Vec::new()
        };
        let use_r2 = !candidates.is_empty() && rng.random_bool(0.5);
        if use_r2 {
            let &(face, over, under) = candidates.choose(rng).expect("non-empty");
            current = r2_insert_in_face(&current, face, over, under)?;
            log.push(Move::R2 { face, over, under });
        } else {
            let edge = rng.random_range(1..=m);
            let sign = if rng.random_bool(0.5) {
                Sign::Plus
            } else {
                Sign::Minus
            };
            let kink = Kink {
                sign,
                over_first: rng.random_bool(0.5),
            };
            current = r1_insert(&current, edge, kink)?;
            log.push(Move::R1 { edge, kink });
        }
    }
    Ok((current, log))
}
