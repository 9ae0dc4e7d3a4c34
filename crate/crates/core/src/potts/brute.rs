use num_complex::Complex64;
use rayon::prelude::*;

use super::{couplings, eval_point, PottsError};
use crate::knot::{Sign, TaitEdge, TaitGraph};

/// Largest `q^n` the direct sum will enumerate.
pub const MAX_BRUTE_FORCE_STATES: u128 = 1 << 24;

/// Number of spin assignments with a given count of agreeing `+` and `-`
/// edges. Self-loops always agree and are counted separately.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatisfiedHistogram {
    plus_edges: usize,
    minus_edges: usize,
    plus_loops: usize,
    minus_loops: usize,
    /// `counts[a * (minus_edges + 1) + b]`.
    counts: Vec<u64>,
}

impl SatisfiedHistogram {
    pub fn enumerate(g: &TaitGraph, q: u32) -> Result<Self, PottsError> {
        if q < 2 {
            return Err(PottsError::InvalidQ(q));
        }
        let n = g.n();
        let states = (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if states > MAX_BRUTE_FORCE_STATES {
            return Err(PottsError::TooLarge {
                what: "brute-force sum",
                states,
                limit: MAX_BRUTE_FORCE_STATES,
            });
        }
        let (loops, edges): (Vec<&TaitEdge>, Vec<&TaitEdge>) =
            g.edges().iter().partition(|e| e.is_loop());
        let plus: Vec<(usize, usize)> = edges
            .iter()
            .filter(|e| e.sign == Sign::Plus)
            .map(|e| (e.u, e.v))
            .collect();
        let minus: Vec<(usize, usize)> = edges
            .iter()
            .filter(|e| e.sign == Sign::Minus)
            .map(|e| (e.u, e.v))
            .collect();
        let plus_loops = loops.iter().filter(|e| e.sign == Sign::Plus).count();
        let width = minus.len() + 1;
        let bins = (plus.len() + 1) * width;
        let total = states as u64;
        let chunk: u64 = 1 << 14;
        let counts = (0..total.div_ceil(chunk))
            .into_par_iter()
            .map(|k| {
                let mut hist = vec![0u64; bins];
                let start = k * chunk;
                let end = ((k + 1) * chunk).min(total);
                let mut spins = digits(start, q, n);
                for _ in start..end {
                    let a = plus.iter().filter(|&&(u, v)| spins[u] == spins[v]).count();
                    let b = minus.iter().filter(|&&(u, v)| spins[u] == spins[v]).count();
                    hist[a * width + b] += 1;
                    increment(&mut spins, q);
                }
                hist
            })
            .reduce(
                || vec![0u64; bins],
                |mut acc, h| {
                    for (x, y) in acc.iter_mut().zip(h) {
                        *x += y;
                    }
                    acc
                },
            );
        Ok(SatisfiedHistogram {
            plus_edges: plus.len(),
            minus_edges: minus.len(),
            plus_loops,
            minus_loops: loops.len() - plus_loops,
            counts,
        })
    }

    /// `Z` for arbitrary agreement weights.
    pub fn evaluate(&self, w_plus: Complex64, w_minus: Complex64) -> Complex64 {
        let width = self.minus_edges + 1;
        let mut z = Complex64::new(0.0, 0.0);
        for a in 0..=self.plus_edges {
            for b in 0..=self.minus_edges {
                let count = self.counts[a * width + b];
                if count > 0 {
                    z += count as f64 * w_plus.powi(a as i32) * w_minus.powi(b as i32);
                }
            }
        }
        z * w_plus.powi(self.plus_loops as i32) * w_minus.powi(self.minus_loops as i32)
    }

    pub fn total_states(&self) -> u64 {
        self.counts.iter().sum()
    }
}

fn digits(mut index: u64, q: u32, n: usize) -> Vec<u32> {
    let mut out = vec![0u32; n];
    for d in out.iter_mut() {
        *d = (index % q as u64) as u32;
        index /= q as u64;
    }
    out
}

fn increment(spins: &mut [u32], q: u32) {
    for s in spins.iter_mut() {
        *s += 1;
        if *s < q {
            return;
        }
        *s = 0;
    }
}

/// Direct sum over all `q^n` spin assignments.
pub fn partition_bruteforce(g: &TaitGraph, q: u32) -> Result<Complex64, PottsError> {
    let k = couplings(eval_point(q)?.t)?;
    Ok(SatisfiedHistogram::enumerate(g, q)?.evaluate(k.w_plus, k.w_minus))
}
