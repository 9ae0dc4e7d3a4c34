//! Knot diagrams: PD codes, orientation and writhe, faces and checkerboard
//! colouring, signed Tait graphs, Reidemeister insertions and the Kauffman
//! state-sum oracle.

mod braid;
mod diagram;
mod kauffman;
mod library;
mod moves;
mod pd;
mod tait;

pub use braid::{braid_closure, random_braid_knot};
pub use diagram::{orient_and_sign, CheckerboardColoring, Colour, Face, KnotDiagram, Slot};
pub use kauffman::{kauffman_jones, BracketStates, MAX_STATE_SUM_CROSSINGS};
pub use library::{builtin, builtin_knots, unknot, KnotRecord, BUILTIN_NAMES};
pub use moves::{r1_insert, r2_insert, r2_insert_in_face, random_moves, Kink, Move};
pub use pd::{parse_pd, Crossing, PdCode};
pub use tait::{Sign, TaitEdge, TaitGraph};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KnotError {
    #[error("malformed PD record: {0}")]
    MalformedRecord(String),
    #[error("edge label {label} occurs {count} times (expected exactly twice)")]
    BadEdgeMultiplicity { label: u32, count: u32 },
    #[error("not a single closed strand: {0}")]
    MultiComponent(String),
    #[error("PD code is not planar: {faces} faces for {crossings} crossings")]
    NonPlanarCode { faces: usize, crossings: usize },
    #[error("face {face} does not exist ({faces} faces)")]
    InvalidFace { face: usize, faces: usize },
    #[error("edge {0} does not exist")]
    NoSuchEdge(u32),
    #[error("edges {a} and {b} do not bound a common face")]
    EdgesNotCoFacial { a: u32, b: u32 },
    #[error("degenerate move: {0}")]
    DegenerateMove(String),
    #[error("state sum over {crossings} crossings exceeds the cap of {max}")]
    TooManyCrossings { crossings: usize, max: usize },
    #[error("invalid Tait graph: {0}")]
    InvalidGraph(String),
    #[error("invalid braid: {0}")]
    InvalidBraid(String),
    #[error("inconsistent knot record `{name}`: {reason}")]
    InconsistentRecord { name: String, reason: String },
    #[error("unknown builtin knot `{0}`")]
    UnknownKnot(String),
}
