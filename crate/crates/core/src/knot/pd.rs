//! Planar-diagram codes.
//!
//! A crossing is written `X[a,b,c,d]`: the four incident edge labels in
//! counter-clockwise order, starting from the incoming under-strand. Edge
//! labels run `1..=2c` and increase along the (single) strand, so the
//! under-strand always leaves on `c = a + 1 (mod 2c)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::KnotError;

/// Four edge labels around a crossing, counter-clockwise from the incoming
/// under-strand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crossing(pub [u32; 4]);

impl Crossing {
    pub fn labels(&self) -> [u32; 4] {
        self.0
    }
}

impl fmt::Display for Crossing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "X[{a},{b},{c},{d}]")
    }
}

/// A validated single-component planar diagram code. The empty code is the
/// zero-crossing unknot.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<[u32; 4]>", into = "Vec<[u32; 4]>")]
pub struct PdCode {
    crossings: Vec<Crossing>,
}

impl PdCode {
    /// The zero-crossing unknot.
    pub fn unknot() -> Self {
        PdCode {
            crossings: Vec::new(),
        }
    }

    /// Validates and wraps a list of crossings.
    pub fn new(crossings: Vec<Crossing>) -> Result<Self, KnotError> {
        validate(&crossings)?;
        Ok(PdCode { crossings })
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }

    /// Number of edges, `2c`.
    pub fn edge_count(&self) -> usize {
        2 * self.crossings.len()
    }
}

impl fmt::Display for PdCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.crossings.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl TryFrom<Vec<[u32; 4]>> for PdCode {
    type Error = KnotError;

    fn try_from(raw: Vec<[u32; 4]>) -> Result<Self, Self::Error> {
        PdCode::new(raw.into_iter().map(Crossing).collect())
    }
}

impl From<PdCode> for Vec<[u32; 4]> {
    fn from(pd: PdCode) -> Self {
        pd.crossings.into_iter().map(|x| x.0).collect()
    }
}

impl std::str::FromStr for PdCode {
    type Err = KnotError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_pd(s)
    }
}

/// Parses whitespace-separated `X[a,b,c,d]` records.
///
/// The literal `unknot` (or `PD[]`) yields the empty code; a blank string is
/// rejected as malformed.
pub fn parse_pd(text: &str) -> Result<PdCode, KnotError> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(KnotError::MalformedRecord("empty input".into()));
    }
    if trimmed == "unknot" || trimmed == "PD[]" {
        return Ok(PdCode::unknot());
    }
    // Tolerate a `PD[ ... ]` wrapper and commas between records.
    let body = trimmed
        .strip_prefix("PD[")
        .and_then(|s| s.strip_suffix(']'))
        .unwrap_or(trimmed);

    let mut crossings = Vec::new();
    let mut rest = body.trim_start_matches([' ', '\t', '\n', '\r', ',']);
    while !rest.is_empty() {
        let after_x = rest.strip_prefix("X[").ok_or_else(|| {
            KnotError::MalformedRecord(format!("expected `X[` at `{}`", head(rest)))
        })?;
        let close = after_x.find(']').ok_or_else(|| {
            KnotError::MalformedRecord(format!("unterminated record `{}`", head(rest)))
        })?;
        let fields: Vec<&str> = after_x[..close].split(',').map(str::trim).collect();
        if fields.len() != 4 {
            return Err(KnotError::MalformedRecord(format!(
                "record needs 4 labels, got {}",
                fields.len()
            )));
        }
        let mut labels = [0u32; 4];
        for (slot, field) in labels.iter_mut().zip(&fields) {
            *slot = field
                .parse::<u32>()
                .ok()
                .filter(|&v| v > 0)
                .ok_or_else(|| KnotError::MalformedRecord(format!("bad edge label `{field}`")))?;
        }
        crossings.push(Crossing(labels));
        rest = after_x[close + 1..].trim_start_matches([' ', '\t', '\n', '\r', ',']);
    }
    PdCode::new(crossings)
}

fn head(s: &str) -> &str {
    let end = s.char_indices().nth(12).map_or(s.len(), |(i, _)| i);
    &s[..end]
}

fn validate(crossings: &[Crossing]) -> Result<(), KnotError> {
    let c = crossings.len();
    if c == 0 {
        return Ok(());
    }
    let m = 2 * c as u32;
    let mut count = vec![0u32; m as usize + 1];
    for x in crossings {
        for &l in &x.0 {
            if l == 0 || l > m {
                return Err(KnotError::BadEdgeMultiplicity { label: l, count: 1 });
            }
            count[l as usize] += 1;
        }
    }
    if let Some((label, &n)) = count.iter().enumerate().skip(1).find(|(_, &n)| n != 2) {
        return Err(KnotError::BadEdgeMultiplicity {
            label: label as u32,
            count: n,
        });
    }

    // Every strand piece through a crossing joins consecutive labels; the
    // traversal 1 -> 2 -> ... -> 2c -> 1 must use each such pair exactly once.
    let next = |l: u32| if l == m { 1 } else { l + 1 };
    let mut pairs: Vec<(u32, u32)> = Vec::with_capacity(2 * c);
    for x in crossings {
        let [a, b, cc, d] = x.0;
        if cc != next(a) {
            return Err(KnotError::MultiComponent(format!(
                "under-strand of {x} does not continue {a} -> {}",
                next(a)
            )));
        }
        pairs.push(ordered(a, cc));
        if d != next(b) && b != next(d) {
            return Err(KnotError::MultiComponent(format!(
                "over-strand of {x} does not join consecutive labels"
            )));
        }
        pairs.push(ordered(b, d));
    }
    pairs.sort_unstable();
    let mut expected: Vec<(u32, u32)> = (1..=m).map(|l| ordered(l, next(l))).collect();
    expected.sort_unstable();
    if pairs != expected {
        return Err(KnotError::MultiComponent(
            "strand traversal closes before visiting every edge".into(),
        ));
    }
    Ok(())
}

fn ordered(a: u32, b: u32) -> (u32, u32) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}
