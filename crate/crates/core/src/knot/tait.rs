use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::KnotError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_value(v: i64) -> Option<Self> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// One crossing of the diagram seen as an edge between black regions.
/// `u == v` is a self-loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TaitEdge {
    pub u: usize,
    pub v: usize,
    pub sign: Sign,
}

impl TaitEdge {
    pub fn new(u: usize, v: usize, sign: Sign) -> Self {
        TaitEdge { u, v, sign }
    }

    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }
}

impl Serialize for TaitEdge {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        (self.u, self.v, self.sign.value()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for TaitEdge {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let (u, v, sign) = <(usize, usize, i64)>::deserialize(d)?;
        let sign =
            Sign::from_value(sign).ok_or_else(|| D::Error::custom("Tait sign must be +1 or -1"))?;
        Ok(TaitEdge { u, v, sign })
    }
}

/// Signed multigraph on the black regions of a diagram. Parallel edges and
/// self-loops are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TaitGraph {
    n: usize,
    edges: Vec<TaitEdge>,
}

impl TaitGraph {
    pub fn new(n: usize, edges: Vec<TaitEdge>) -> Result<Self, KnotError> {
        if let Some(e) = edges.iter().find(|e| e.u >= n || e.v >= n) {
            return Err(KnotError::InvalidGraph(format!(
                "edge ({}, {}) out of range for {n} vertices",
                e.u, e.v
            )));
        }
        Ok(TaitGraph { n, edges })
    }

    /// Single vertex, no edges: the Tait graph of the crossing-free unknot.
    pub fn unknot() -> Self {
        TaitGraph {
            n: 1,
            edges: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[TaitEdge] {
        &self.edges
    }

    /// Tait number: the sum of edge signs.
    pub fn tau(&self) -> i32 {
        self.edges.iter().map(|e| e.sign.value()).sum()
    }

    /// Edges with endpoints ordered `u <= v` and the list sorted; two graphs
    /// with equal canonical forms are identical up to edge order.
    pub fn canonical_edges(&self) -> Vec<TaitEdge> {
        let mut out: Vec<TaitEdge> = self
            .edges
            .iter()
            .map(|e| TaitEdge::new(e.u.min(e.v), e.u.max(e.v), e.sign))
            .collect();
        out.sort_by_key(|e| (e.u, e.v, e.sign));
        out
    }
}
