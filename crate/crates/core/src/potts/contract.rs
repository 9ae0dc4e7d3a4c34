use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;

use super::{couplings, eval_point, PottsError};
use crate::knot::{Sign, TaitGraph};

/// Largest intermediate table the contraction will allocate.
pub const MAX_FACTOR_ENTRIES: u128 = 1 << 26;

/// The Potts model as a network of copy tensors on vertices joined by `q x q`
/// edge matrices (the edge weight on the diagonal, 1 elsewhere).
#[derive(Debug, Clone, PartialEq)]
pub struct TensorNetwork {
    q: u32,
    /// Number of edge legs on each vertex tensor, self-loops excluded.
    arity: Vec<usize>,
    /// `(u, v, diagonal weight)` per non-loop edge.
    edges: Vec<(usize, usize, Complex64)>,
    /// Product of self-loop weights.
    loop_factor: Complex64,
    order: Vec<usize>,
}

#[derive(Debug, Clone)]
struct Factor {
    scope: Vec<usize>,
    table: Vec<Complex64>,
}

impl TensorNetwork {
    pub fn new(g: &TaitGraph, q: u32) -> Result<Self, PottsError> {
        let k = couplings(eval_point(q)?.t)?;
        let weight = |s: Sign| match s {
            Sign::Plus => k.w_plus,
            Sign::Minus => k.w_minus,
        };
        let mut arity = vec![0; g.n()];
        let mut edges = Vec::new();
        let mut loop_factor = Complex64::new(1.0, 0.0);
        for e in g.edges() {
            if e.is_loop() {
                loop_factor *= weight(e.sign);
            } else {
                arity[e.u] += 1;
                arity[e.v] += 1;
                edges.push((e.u, e.v, weight(e.sign)));
            }
        }
        let order = min_degree_order(g.n(), &edges);
        Ok(TensorNetwork {
            q,
            arity,
            edges,
            loop_factor,
            order,
        })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn arity(&self) -> &[usize] {
        &self.arity
    }

    pub fn elimination_order(&self) -> &[usize] {
        &self.order
    }

    /// The `q x q` matrix on edge `i`.
    pub fn edge_matrix(&self, i: usize) -> Vec<Vec<Complex64>> {
        let w = self.edges[i].2;
        let q = self.q as usize;
        (0..q)
            .map(|a| {
                (0..q)
                    .map(|b| if a == b { w } else { Complex64::new(1.0, 0.0) })
                    .collect()
            })
            .collect()
    }

    /// Sums out vertices in elimination order. Parallel edges are merged into
    /// one pairwise table first.
    pub fn contract(&self) -> Result<Complex64, PottsError> {
        let q = self.q as usize;
        let mut pair: BTreeMap<(usize, usize), Vec<Complex64>> = BTreeMap::new();
        for &(u, v, w) in &self.edges {
            let (a, b) = (u.min(v), u.max(v));
            let table = pair
                .entry((a, b))
                .or_insert_with(|| vec![Complex64::new(1.0, 0.0); q * q]);
            for s in 0..q {
                table[s + s * q] *= w;
            }
        }
        let mut factors: Vec<Factor> = pair
            .into_iter()
            .map(|((a, b), table)| Factor {
                scope: vec![a, b],
                table,
            })
            .collect();
        let mut scalar = self.loop_factor;
        for &v in &self.order {
            let (touching, rest): (Vec<Factor>, Vec<Factor>) =
                factors.into_iter().partition(|f| f.scope.contains(&v));
            factors = rest;
            if touching.is_empty() {
                scalar *= self.q as f64;
                continue;
            }
            let merged = sum_out(&touching, v, q)?;
            if merged.scope.is_empty() {
                scalar *= merged.table[0];
            } else {
                factors.push(merged);
            }
        }
        debug_assert!(factors.is_empty());
        Ok(scalar)
    }
}

/// Greedy elimination order: repeatedly take the vertex with the fewest
/// remaining neighbours, lowest index first on ties.
fn min_degree_order(n: usize, edges: &[(usize, usize, Complex64)]) -> Vec<usize> {
    let mut nbrs: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for &(u, v, _) in edges {
        nbrs[u].insert(v);
        nbrs[v].insert(u);
    }
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (nbrs[v].len(), v))
            .expect("a vertex remains");
        alive[v] = false;
        let around: Vec<usize> = nbrs[v].iter().copied().collect();
        for &a in &around {
            nbrs[a].remove(&v);
            for &b in &around {
                if a != b {
                    nbrs[a].insert(b);
                }
            }
        }
        nbrs[v].clear();
        order.push(v);
    }
    order
}

/// Multiplies the factors together and sums over vertex `v`.
fn sum_out(factors: &[Factor], v: usize, q: usize) -> Result<Factor, PottsError> {
    let mut scope: BTreeSet<usize> = BTreeSet::new();
    for f in factors {
        scope.extend(f.scope.iter().copied());
    }
    scope.remove(&v);
    // Digit 0 is the summed vertex, the rest follow the output scope.
    let mut vars = vec![v];
    vars.extend(scope.iter().copied());
    let entries = (q as u128)
        .checked_pow(vars.len() as u32)
        .unwrap_or(u128::MAX);
    if entries > MAX_FACTOR_ENTRIES {
        return Err(PottsError::TooLarge {
            what: "contraction table",
            states: entries,
            limit: MAX_FACTOR_ENTRIES,
        });
    }
    let strides: Vec<Vec<usize>> = factors
        .iter()
        .map(|f| {
            vars.iter()
                .map(|var| match f.scope.iter().position(|s| s == var) {
                    Some(p) => q.pow(p as u32),
                    None => 0,
                })
                .collect()
        })
        .collect();
    let out_len = entries as usize / q;
    let mut table = vec![Complex64::new(0.0, 0.0); out_len];
    let mut digits = vec![0usize; vars.len()];
    for (out, slot) in table.iter_mut().enumerate() {
        let mut rest = out;
        for d in digits.iter_mut().skip(1) {
            *d = rest % q;
            rest /= q;
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for s in 0..q {
            digits[0] = s;
            let mut prod = Complex64::new(1.0, 0.0);
            for (f, st) in factors.iter().zip(&strides) {
                let idx: usize = digits.iter().zip(st).map(|(d, k)| d * k).sum();
                prod *= f.table[idx];
            }
            acc += prod;
        }
        *slot = acc;
    }
    Ok(Factor {
        scope: scope.into_iter().collect(),
        table,
    })
}

/// Partition function by variable elimination on the tensor network.
pub fn partition_contract(g: &TaitGraph, q: u32) -> Result<Complex64, PottsError> {
    TensorNetwork::new(g, q)?.contract()
}
