//! Diagrams from braid closures, used to generate varied test and benchmark
//! knots.

use rand::Rng;

use super::pd::{Crossing, PdCode};
use super::KnotError;

/// PD code of the closure of a braid on `strands` strands.
///
/// `word` entries are `±(i + 1)` for the generator crossing strands `i` and
/// `i + 1`; positive means the strand coming from the left passes over. The
/// braid is drawn top to bottom and closed on the right.
pub fn braid_closure(strands: usize, word: &[i32]) -> Result<PdCode, KnotError> {
    if strands == 0 {
        return Err(KnotError::InvalidBraid(
            "a braid needs at least one strand".into(),
        ));
    }
    if word.is_empty() {
        if strands == 1 {
            return Ok(PdCode::unknot());
        }
        return Err(KnotError::MultiComponent(format!(
            "trivial braid on {strands} strands"
        )));
    }
    let mut cur: Vec<usize> = (0..strands).collect();
    let mut next_id = strands;
    // (nw_in, ne_in, sw_out, se_out, left_over)
    let mut raw = Vec::with_capacity(word.len());
    for &g in word {
        let i = g.unsigned_abs() as usize;
        if g == 0 || i >= strands {
            return Err(KnotError::InvalidBraid(format!(
                "generator {g} on {strands} strands"
            )));
        }
        let i = i - 1;
        let (nw, ne) = (cur[i], cur[i + 1]);
        let (sw, se) = (next_id, next_id + 1);
        next_id += 2;
        raw.push((nw, ne, sw, se, g > 0));
        cur[i] = sw;
        cur[i + 1] = se;
    }
    if strands > 1 && cur.iter().enumerate().any(|(p, &c)| c == p) {
        return Err(KnotError::MultiComponent(
            "a strand takes part in no crossing".into(),
        ));
    }
    // The closure glues each bottom segment to the top segment above it.
    let mut canon: Vec<usize> = (0..next_id).collect();
    for (p, &bottom) in cur.iter().enumerate() {
        canon[bottom] = p;
    }
    let mut succ = vec![usize::MAX; next_id];
    for &(nw, ne, sw, se, _) in &raw {
        succ[canon[nw]] = canon[se];
        succ[canon[ne]] = canon[sw];
    }
    let segments = 2 * word.len();
    let mut label = vec![0u32; next_id];
    let mut seg = canon[raw[0].0];
    for step in 0..segments {
        if label[seg] != 0 {
            return Err(KnotError::MultiComponent("braid closure is a link".into()));
        }
        label[seg] = step as u32 + 1;
        seg = succ[seg];
    }
    if seg != canon[raw[0].0] {
        return Err(KnotError::MultiComponent("braid closure is a link".into()));
    }
    let l = |s: usize| label[canon[s]];
    let crossings = raw
        .iter()
        .map(|&(nw, ne, sw, se, left_over)| {
            if left_over {
                Crossing([l(ne), l(nw), l(sw), l(se)])
            } else {
                Crossing([l(nw), l(sw), l(se), l(ne)])
            }
        })
        .collect();
    PdCode::new(crossings)
}

/// Random knot diagram with between `min_crossings` and `max_crossings`
/// crossings, drawn as a braid closure on 2 to 4 strands.
pub fn random_braid_knot<R: Rng + ?Sized>(
    rng: &mut R,
    min_crossings: usize,
    max_crossings: usize,
) -> PdCode {
    assert!(min_crossings >= 1 && min_crossings <= max_crossings);
    loop {
        let strands = rng.random_range(2..=4usize).min(max_crossings + 1);
        let len = rng.random_range(min_crossings.max(strands - 1)..=max_crossings);
        let word: Vec<i32> = (0..len)
            .map(|_| {
                let g = rng.random_range(1..strands as i32 + 1);
                if rng.random_bool(0.5) {
                    g
                } else {
                    -g
                }
            })
            .collect();
        if let Ok(pd) = braid_closure(strands, &word) {
            return pd;
        }
    }
}
