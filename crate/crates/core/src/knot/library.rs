//! Knot records and the builtin library of four equivalent trefoil diagrams.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::diagram::orient_and_sign;
use super::pd::{parse_pd, PdCode};
use super::tait::{Sign, TaitEdge, TaitGraph};
use super::KnotError;

pub const BUILTIN_NAMES: [&str; 4] = [
    "trefoil",
    "closed-trefoil",
    "trefoil+twist",
    "closed-trefoil+twist",
];

const TREFOIL_PD: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";
const TREFOIL_TWIST_PD: &str = "X[1,4,2,5] X[3,8,4,1] X[5,2,6,3] X[6,7,7,8]";

/// A knot as the pipeline consumes it: a signed Tait graph plus the writhe of
/// the diagram it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct KnotRecord {
    pub name: String,
    pub tait_graph: TaitGraph,
    pub writhe: i32,
    pub pd: Option<PdCode>,
    pub exact_jones_at_i: Option<Complex64>,
}

/// On-disk shape of a record.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct RecordFile {
    name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pd: Option<String>,
    tait_edges: Vec<TaitEdge>,
    writhe: i32,
    tau: i32,
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    exact_jones_at_i: Option<[f64; 2]>,
}

impl KnotRecord {
    /// Builds a record and checks it against its PD code when one is given.
    pub fn new(
        name: impl Into<String>,
        tait_graph: TaitGraph,
        writhe: i32,
        pd: Option<PdCode>,
        exact_jones_at_i: Option<Complex64>,
    ) -> Result<Self, KnotError> {
        let record = KnotRecord {
            name: name.into(),
            tait_graph,
            writhe,
            pd,
            exact_jones_at_i,
        };
        record.validate()?;
        Ok(record)
    }

    /// Record derived from a PD code with its default outer face.
    pub fn from_pd(name: impl Into<String>, pd: PdCode) -> Result<Self, KnotError> {
        let d = orient_and_sign(&pd);
        let tait_graph = d.default_tait_graph()?;
        Ok(KnotRecord {
            name: name.into(),
            tait_graph,
            writhe: d.writhe(),
            pd: Some(pd),
            exact_jones_at_i: None,
        })
    }

    pub fn n(&self) -> usize {
        self.tait_graph.n()
    }

    pub fn tau(&self) -> i32 {
        self.tait_graph.tau()
    }

    fn inconsistent(&self, reason: String) -> KnotError {
        KnotError::InconsistentRecord {
            name: self.name.clone(),
            reason,
        }
    }

    pub fn validate(&self) -> Result<(), KnotError> {
        let Some(pd) = &self.pd else {
            return Ok(());
        };
        let d = orient_and_sign(pd);
        if d.writhe() != self.writhe {
            return Err(self.inconsistent(format!(
                "stored writhe {} but the PD code has writhe {}",
                self.writhe,
                d.writhe()
            )));
        }
        let derived = d.default_tait_graph()?;
        if !isomorphic(&derived, &self.tait_graph) {
            return Err(self.inconsistent(format!(
                "stored Tait graph (n={}, tau={}) differs from the one derived from the PD code (n={}, tau={})",
                self.tait_graph.n(),
                self.tait_graph.tau(),
                derived.n(),
                derived.tau()
            )));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let file = RecordFile {
            name: self.name.clone(),
            pd: self.pd.as_ref().map(|p| p.to_string()),
            tait_edges: self.tait_graph.edges().to_vec(),
            writhe: self.writhe,
            tau: self.tau(),
            n: self.n(),
            exact_jones_at_i: self.exact_jones_at_i.map(|z| [z.re, z.im]),
        };
        serde_json::to_string_pretty(&file).expect("record serialises")
    }

    pub fn from_json(text: &str) -> Result<Self, KnotError> {
        let file: RecordFile =
            serde_json::from_str(text).map_err(|e| KnotError::MalformedRecord(e.to_string()))?;
        let pd = file.pd.as_deref().map(parse_pd).transpose()?;
        let tait_graph = TaitGraph::new(file.n, file.tait_edges)?;
        let record = KnotRecord {
            name: file.name,
            tait_graph,
            writhe: file.writhe,
            pd,
            exact_jones_at_i: file.exact_jones_at_i.map(|[re, im]| Complex64::new(re, im)),
        };
        if record.tau() != file.tau {
            return Err(record.inconsistent(format!(
                "stored tau {} but the edge signs sum to {}",
                file.tau,
                record.tau()
            )));
        }
        record.validate()?;
        Ok(record)
    }
}

/// Equality up to vertex relabelling. Exhaustive over permutations, which is
/// fine for the small graphs records carry; larger graphs must match exactly.
fn isomorphic(a: &TaitGraph, b: &TaitGraph) -> bool {
    if a.n() != b.n() || a.edges().len() != b.edges().len() || a.tau() != b.tau() {
        return false;
    }
    let target = b.canonical_edges();
    if a.canonical_edges() == target {
        return true;
    }
    if a.n() > 8 {
        return false;
    }
    let mut perm: Vec<usize> = (0..a.n()).collect();
    permutations_any(&mut perm, 0, &mut |p| {
        let mapped: Vec<TaitEdge> = a
            .edges()
            .iter()
            .map(|e| TaitEdge::new(p[e.u], p[e.v], e.sign))
            .collect();
        TaitGraph::new(a.n(), mapped)
            .map(|g| g.canonical_edges() == target)
            .unwrap_or(false)
    })
}

fn permutations_any(perm: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    if k == perm.len() {
        return f(perm);
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        if permutations_any(perm, k + 1, f) {
            return true;
        }
        perm.swap(k, i);
    }
    false
}

fn graph(n: usize, edges: &[(usize, usize, Sign)]) -> TaitGraph {
    TaitGraph::new(
        n,
        edges
            .iter()
            .map(|&(u, v, s)| TaitEdge::new(u, v, s))
            .collect(),
    )
    .expect("builtin graphs are in range")
}

/// The four diagrams of the trefoil used throughout: the standard diagram and
/// a kinked version, each seen from both checkerboard colourings.
pub fn builtin_knots() -> Vec<KnotRecord> {
    use Sign::{Minus, Plus};
    let minus_one = Some(Complex64::new(-1.0, 0.0));
    vec![
        KnotRecord {
            name: "trefoil".into(),
            tait_graph: graph(3, &[(0, 1, Plus), (1, 2, Plus), (0, 2, Plus)]),
            writhe: 3,
            pd: Some(parse_pd(TREFOIL_PD).expect("builtin PD parses")),
            exact_jones_at_i: minus_one,
        },
        KnotRecord {
            name: "closed-trefoil".into(),
            tait_graph: graph(2, &[(0, 1, Minus), (0, 1, Minus), (0, 1, Minus)]),
            writhe: 3,
            pd: None,
            exact_jones_at_i: minus_one,
        },
        KnotRecord {
            name: "trefoil+twist".into(),
            tait_graph: graph(
                4,
                &[(0, 1, Plus), (1, 2, Plus), (0, 2, Plus), (2, 3, Minus)],
            ),
            writhe: 4,
            pd: Some(parse_pd(TREFOIL_TWIST_PD).expect("builtin PD parses")),
            exact_jones_at_i: minus_one,
        },
        KnotRecord {
            name: "closed-trefoil+twist".into(),
            tait_graph: graph(
                3,
                &[(0, 1, Minus), (0, 1, Minus), (0, 1, Minus), (1, 2, Minus)],
            ),
            writhe: 4,
            pd: None,
            exact_jones_at_i: minus_one,
        },
    ]
}

/// The crossing-free circle: one isolated black face.
pub fn unknot() -> KnotRecord {
    KnotRecord {
        name: "unknot".into(),
        tait_graph: TaitGraph::unknot(),
        writhe: 0,
        pd: None,
        exact_jones_at_i: Some(Complex64::new(1.0, 0.0)),
    }
}

/// A builtin by name; `unknot` is accepted alongside the trefoil diagrams.
pub fn builtin(name: &str) -> Result<KnotRecord, KnotError> {
    if name == "unknot" {
        return Ok(unknot());
    }
    builtin_knots()
        .into_iter()
        .find(|k| k.name == name)
        .ok_or_else(|| KnotError::UnknownKnot(name.to_string()))
}
