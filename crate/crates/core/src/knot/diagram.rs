//! Oriented diagrams: crossing signs, faces, checkerboard colouring and the
//! signed Tait graph.
//!
//! Corner `i` of a crossing is the wedge between positions `i - 1` and `i`
//! (counter-clockwise), so corner 0 sits between the over-strand end at
//! position 3 and the incoming under-strand. Corners 0 and 2 face each other,
//! as do 1 and 3.

use serde::{Deserialize, Serialize};

use super::pd::PdCode;
use super::tait::{Sign, TaitEdge, TaitGraph};
use super::KnotError;

/// A position within a crossing, `0..4` counter-clockwise from the incoming
/// under-strand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Slot {
    pub crossing: usize,
    pub pos: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotDiagram {
    pd: PdCode,
    /// Position (1 or 3) where the over-strand enters each crossing.
    over_in: Vec<usize>,
    signs: Vec<i32>,
    outer_face: usize,
}

/// Orients every edge along increasing labels and assigns crossing signs.
///
/// A crossing is `+1` when the under-strand, turned a quarter counter-clockwise,
/// points along the over-strand, i.e. when the over-strand runs from position
/// 1 to position 3.
pub fn orient_and_sign(pd: &PdCode) -> KnotDiagram {
    let m = pd.edge_count() as u32;
    let next = |l: u32| if l == m { 1 } else { l + 1 };
    let mut over_in = Vec::with_capacity(pd.len());
    let mut signs = Vec::with_capacity(pd.len());
    for x in pd.crossings() {
        let [_, b, c, d] = x.0;
        let forward = d == next(b);
        let backward = b == next(d);
        // With a single crossing both tests pass; the over-strand then enters
        // on the label that just left underneath.
        let enters_at_b = match (forward, backward) {
            (true, false) => true,
            (false, true) => false,
            _ => b == c,
        };
        over_in.push(if enters_at_b { 1 } else { 3 });
        signs.push(if enters_at_b { 1 } else { -1 });
    }
    KnotDiagram {
        pd: pd.clone(),
        over_in,
        signs,
        outer_face: 0,
    }
}

/// A face of the diagram: the cycle of crossing corners around it, plus the
/// edges walked between them (face kept on the right-hand side).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub id: usize,
    /// `(crossing, corner)` pairs in traversal order.
    pub boundary: Vec<(usize, usize)>,
    /// `(edge label, agrees_with_orientation)` for each edge walked.
    pub edges: Vec<(u32, bool)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Colour {
    Black,
    White,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckerboardColoring {
    pub outer_face: usize,
    pub colours: Vec<Colour>,
}

impl CheckerboardColoring {
    pub fn black_count(&self) -> usize {
        self.colours.iter().filter(|&&c| c == Colour::Black).count()
    }
}

impl KnotDiagram {
    pub fn pd(&self) -> &PdCode {
        &self.pd
    }

    pub fn crossing_count(&self) -> usize {
        self.pd.len()
    }

    pub fn signs(&self) -> &[i32] {
        &self.signs
    }

    pub fn writhe(&self) -> i32 {
        self.signs.iter().sum()
    }

    pub fn outer_face(&self) -> usize {
        self.outer_face
    }

    pub fn with_outer_face(mut self, face: usize) -> Self {
        self.outer_face = face;
        self
    }

    /// Whether position `pos` of crossing `x` is where its edge arrives.
    pub fn is_incoming(&self, x: usize, pos: usize) -> bool {
        pos == 0 || pos == self.over_in[x]
    }

    /// Tail and head slots of edge `label`.
    pub fn edge_ends(&self, label: u32) -> Option<(Slot, Slot)> {
        let mut tail = None;
        let mut head = None;
        for (x, crossing) in self.pd.crossings().iter().enumerate() {
            for (pos, &l) in crossing.0.iter().enumerate() {
                if l == label {
                    let slot = Slot { crossing: x, pos };
                    if self.is_incoming(x, pos) {
                        head = Some(slot);
                    } else {
                        tail = Some(slot);
                    }
                }
            }
        }
        tail.zip(head)
    }

    /// The other end of the edge leaving through `slot`.
    fn partner(&self) -> Vec<[Slot; 4]> {
        let m = self.pd.edge_count();
        let mut seen: Vec<Vec<Slot>> = vec![Vec::with_capacity(2); m + 1];
        for (x, crossing) in self.pd.crossings().iter().enumerate() {
            for (pos, &l) in crossing.0.iter().enumerate() {
                seen[l as usize].push(Slot { crossing: x, pos });
            }
        }
        let mut out = vec![
            [Slot {
                crossing: 0,
                pos: 0
            }; 4];
            self.pd.len()
        ];
        for slots in seen.iter().skip(1) {
            let (s0, s1) = (slots[0], slots[1]);
            out[s0.crossing][s0.pos] = s1;
            out[s1.crossing][s1.pos] = s0;
        }
        out
    }

    /// Traces faces through the corner rotation system. A planar code has
    /// exactly `c + 2` faces.
    pub fn faces(&self) -> Result<Vec<Face>, KnotError> {
        let c = self.pd.len();
        if c == 0 {
            let face = |id| Face {
                id,
                boundary: Vec::new(),
                edges: Vec::new(),
            };
            return Ok(vec![face(0), face(1)]);
        }
        let partner = self.partner();
        let mut face_of = vec![[usize::MAX; 4]; c];
        let mut faces = Vec::new();
        for x0 in 0..c {
            for i0 in 0..4 {
                if face_of[x0][i0] != usize::MAX {
                    continue;
                }
                let id = faces.len();
                let mut boundary = Vec::new();
                let mut edges = Vec::new();
                let (mut x, mut i) = (x0, i0);
                while face_of[x][i] == usize::MAX {
                    face_of[x][i] = id;
                    boundary.push((x, i));
                    let label = self.pd.crossings()[x].0[i];
                    edges.push((label, !self.is_incoming(x, i)));
                    let next = partner[x][i];
                    x = next.crossing;
                    i = (next.pos + 1) % 4;
                }
                faces.push(Face {
                    id,
                    boundary,
                    edges,
                });
            }
        }
        if faces.len() != c + 2 {
            return Err(KnotError::NonPlanarCode {
                faces: faces.len(),
                crossings: c,
            });
        }
        Ok(faces)
    }

    /// Face id of every corner, indexed `[crossing][corner]`.
    pub fn corner_faces(faces: &[Face], crossings: usize) -> Vec<[usize; 4]> {
        let mut out = vec![[0usize; 4]; crossings];
        for f in faces {
            for &(x, i) in &f.boundary {
                out[x][i] = f.id;
            }
        }
        out
    }

    /// Proper two-colouring of the faces with `outer_face` white.
    pub fn checkerboard(&self, outer_face: usize) -> Result<CheckerboardColoring, KnotError> {
        let faces = self.faces()?;
        if outer_face >= faces.len() {
            return Err(KnotError::InvalidFace {
                face: outer_face,
                faces: faces.len(),
            });
        }
        if self.pd.is_empty() {
            let mut colours = vec![Colour::Black; 2];
            colours[outer_face] = Colour::White;
            return Ok(CheckerboardColoring {
                outer_face,
                colours,
            });
        }
        // Faces on the two sides of an edge are adjacent.
        let m = self.pd.edge_count();
        let mut sides: Vec<Vec<usize>> = vec![Vec::with_capacity(2); m + 1];
        for f in &faces {
            for &(label, _) in &f.edges {
                sides[label as usize].push(f.id);
            }
        }
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); faces.len()];
        for s in sides.iter().skip(1) {
            if s[0] != s[1] {
                adj[s[0]].push(s[1]);
                adj[s[1]].push(s[0]);
            }
        }
        let mut colour: Vec<Option<Colour>> = vec![None; faces.len()];
        colour[outer_face] = Some(Colour::White);
        let mut queue = std::collections::VecDeque::from([outer_face]);
        while let Some(f) = queue.pop_front() {
            let here = colour[f].expect("queued faces are coloured");
            let there = match here {
                Colour::White => Colour::Black,
                Colour::Black => Colour::White,
            };
            for &g in &adj[f] {
                match colour[g] {
                    None => {
                        colour[g] = Some(there);
                        queue.push_back(g);
                    }
                    Some(existing) if existing != there => {
                        return Err(KnotError::NonPlanarCode {
                            faces: faces.len(),
                            crossings: self.pd.len(),
                        })
                    }
                    Some(_) => {}
                }
            }
        }
        let colours = colour
            .into_iter()
            .map(|c| c.expect("face graph of a knot diagram is connected"))
            .collect();
        Ok(CheckerboardColoring {
            outer_face,
            colours,
        })
    }

    /// Signed graph on the black faces.
    ///
    /// A crossing's edge is `+` when rotating the over-strand counter-clockwise
    /// sweeps the white corners (corners 0 and 2), and then joins the black
    /// faces at corners 1 and 3; otherwise it is `-` and joins corners 0 and 2.
    pub fn tait_graph(&self, coloring: &CheckerboardColoring) -> Result<TaitGraph, KnotError> {
        let faces = self.faces()?;
        let mut vertex_of = vec![usize::MAX; faces.len()];
        let mut n = 0;
        for (f, colour) in coloring.colours.iter().enumerate() {
            if *colour == Colour::Black {
                vertex_of[f] = n;
                n += 1;
            }
        }
        let corners = Self::corner_faces(&faces, self.pd.len());
        let edges = corners
            .iter()
            .map(|cf| {
                if coloring.colours[cf[0]] == Colour::White {
                    TaitEdge::new(vertex_of[cf[1]], vertex_of[cf[3]], Sign::Plus)
                } else {
                    TaitEdge::new(vertex_of[cf[0]], vertex_of[cf[2]], Sign::Minus)
                }
            })
            .collect();
        TaitGraph::new(n, edges)
    }

    /// Tait graph with the diagram's own outer face.
    pub fn default_tait_graph(&self) -> Result<TaitGraph, KnotError> {
        let coloring = self.checkerboard(self.outer_face)?;
        self.tait_graph(&coloring)
    }
}
