//! Kauffman-bracket state sum: the exponential-time oracle for the Jones
//! polynomial.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;

use super::diagram::KnotDiagram;
use super::KnotError;
use crate::branch::principal_pow;

pub const MAX_STATE_SUM_CROSSINGS: usize = 20;

/// Smoothing counts of a diagram: for every state, `#A - #B` and the number
/// of loops. Independent of `t`, so one enumeration serves many evaluation
/// points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketStates {
    writhe: i32,
    /// `(#A - #B, loops) -> number of states`.
    histogram: BTreeMap<(i32, u32), u64>,
}

impl BracketStates {
    /// Enumerates all `2^c` smoothings. The A-smoothing joins positions
    /// (0,3) and (1,2) of a crossing; the B-smoothing joins (0,1) and (2,3).
    pub fn enumerate(d: &KnotDiagram) -> Result<Self, KnotError> {
        let c = d.crossing_count();
        if c > MAX_STATE_SUM_CROSSINGS {
            return Err(KnotError::TooManyCrossings {
                crossings: c,
                max: MAX_STATE_SUM_CROSSINGS,
            });
        }
        if c == 0 {
            return Ok(BracketStates {
                writhe: 0,
                histogram: BTreeMap::from([((0, 1), 1)]),
            });
        }
        let labels: Vec<[usize; 4]> = d
            .pd()
            .crossings()
            .iter()
            .map(|x| x.0.map(|l| l as usize - 1))
            .collect();
        let m = 2 * c;
        let total: u64 = 1 << c;
        let chunk: u64 = 1 << 12;
        let histogram = (0..total.div_ceil(chunk))
            .into_par_iter()
            .map(|k| {
                let mut hist: BTreeMap<(i32, u32), u64> = BTreeMap::new();
                let mut parent = vec![0usize; m];
                for state in k * chunk..((k + 1) * chunk).min(total) {
                    for (i, p) in parent.iter_mut().enumerate() {
                        *p = i;
                    }
                    let mut components = m as u32;
                    for (x, lab) in labels.iter().enumerate() {
                        let pairs = if state >> x & 1 == 0 {
                            [(lab[0], lab[3]), (lab[1], lab[2])]
                        } else {
                            [(lab[0], lab[1]), (lab[2], lab[3])]
                        };
                        for (u, v) in pairs {
                            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                            if ru != rv {
                                parent[ru] = rv;
                                components -= 1;
                            }
                        }
                    }
                    let b_count = state.count_ones() as i32;
                    *hist
                        .entry((c as i32 - 2 * b_count, components))
                        .or_insert(0) += 1;
                }
                hist
            })
            .reduce(BTreeMap::new, |mut acc, h| {
                for (k, v) in h {
                    *acc.entry(k).or_insert(0) += v;
                }
                acc
            });
        Ok(BracketStates {
            writhe: d.writhe(),
            histogram,
        })
    }

    /// Normalised bracket `<K>` at `A`, with `<O> = 1`.
    pub fn bracket(&self, a: Complex64) -> Complex64 {
        let d = -a * a - (a * a).inv();
        self.histogram
            .iter()
            .map(|(&(k, loops), &count)| count as f64 * a.powi(k) * d.powi(loops as i32 - 1))
            .sum()
    }

    /// `V(t) = (-A^3)^{-w} <K>` with `A = t^{-1/4}` on the principal branch.
    pub fn jones(&self, t: Complex64) -> Complex64 {
        let a = principal_pow(t, -0.25);
        (-a.powi(3)).powi(-self.writhe) * self.bracket(a)
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Jones polynomial of the diagram at `t` by the full state sum.
pub fn kauffman_jones(d: &KnotDiagram, t: Complex64) -> Result<Complex64, KnotError> {
    Ok(BracketStates::enumerate(d)?.jones(t))
}
