//! Exact K_t counting: total, per vertex and per edge.
//!
//! Cliques are listed once each as increasing vertex tuples; the extension
//! step intersects the candidate set with the neighbours above the last
//! vertex added.

use serde::Serialize;

use crate::error::Result;
use crate::graph::{bit, low_mask, Bits, Edge, Graph};

/// Exact clique tallies for one order `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliqueCounts {
    pub t: usize,
    pub total: u128,
    /// `per_vertex[v]` = number of K_t containing `v`.
    pub per_vertex: Vec<u128>,
    /// Aligned with [`Graph::edges`]: number of K_t containing each edge.
    pub per_edge: Vec<u128>,
}

impl CliqueCounts {
    /// Count for edge `e`, or `None` if `e` is not an edge of `g`.
    pub fn through_edge(&self, g: &Graph, e: Edge) -> Option<u128> {
        g.edge_index(e).map(|i| self.per_edge[i])
    }
}

#[inline]
fn above(v: usize) -> u64 {
    !low_mask(v + 1)
}

/// Number of copies of K_t in `g`. `t = 0` is rejected by panic.
pub fn clique_total(g: &Graph, t: usize) -> u128 {
    assert!(t >= 1, "clique order must be at least 1");
    fn go(g: &Graph, cand: u64, need: usize) -> u128 {
        if need == 1 {
            return cand.count_ones() as u128;
        }
        let mut sum = 0;
        let mut rest = cand;
        // Only vertices that leave at least `need - 1` later candidates can start a clique.
        while rest.count_ones() as usize >= need {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let next = cand & g.row(v) & above(v);
            if next.count_ones() as usize >= need - 1 {
                sum += go(g, next, need - 1);
            }
        }
        sum
    }
    if t > g.n() {
        return 0;
    }
    go(g, low_mask(g.n()), t)
}

struct Tally<'a> {
    g: &'a Graph,
    edge_slot: Vec<usize>,
    total: u128,
    per_vertex: Vec<u128>,
    per_edge: Vec<u128>,
    stack: Vec<usize>,
}

impl Tally<'_> {
    fn slot(&self, a: usize, b: usize) -> usize {
        self.edge_slot[a * self.g.n() + b]
    }

    fn extend(&mut self, cand: u64, need: usize) {
        if need == 1 {
            let c = cand.count_ones() as u128;
            if c == 0 {
                return;
            }
            self.total += c;
            for i in 0..self.stack.len() {
                let a = self.stack[i];
                self.per_vertex[a] += c;
                for j in (i + 1)..self.stack.len() {
                    let s = self.slot(a, self.stack[j]);
                    self.per_edge[s] += c;
                }
                for w in Bits(cand) {
                    let s = self.slot(a, w);
                    self.per_edge[s] += 1;
                }
            }
            for w in Bits(cand) {
                self.per_vertex[w] += 1;
            }
            return;
        }
        for v in Bits(cand) {
            let next = cand & self.g.row(v) & above(v);
            if (next.count_ones() as usize) + 1 < need {
                continue;
            }
            self.stack.push(v);
            self.extend(next, need - 1);
            self.stack.pop();
        }
    }
}

/// Exact K_t counts with per-vertex and per-edge tallies.
///
/// Panics if `t == 0`.
pub fn count_cliques(g: &Graph, t: usize) -> CliqueCounts {
    assert!(t >= 1, "clique order must be at least 1");
    let n = g.n();
    let edges = g.edges();
    let mut edge_slot = vec![usize::MAX; n * n];
    for (i, e) in edges.iter().enumerate() {
        edge_slot[e.u * n + e.v] = i;
        edge_slot[e.v * n + e.u] = i;
    }
    let mut tally = Tally {
        g,
        edge_slot,
        total: 0,
        per_vertex: vec![0; n],
        per_edge: vec![0; edges.len()],
        stack: Vec::with_capacity(t),
    };
    if t <= n {
        tally.extend(low_mask(n), t);
    }
    CliqueCounts {
        t,
        total: tally.total,
        per_vertex: tally.per_vertex,
        per_edge: tally.per_edge,
    }
}

/// Number of non-empty cliques of any order.
pub fn count_all_cliques(g: &Graph) -> u128 {
    fn go(g: &Graph, cand: u64) -> u128 {
        Bits(cand)
            .map(|v| 1 + go(g, cand & g.row(v) & above(v)))
            .sum()
    }
    go(g, low_mask(g.n()))
}

/// N(G, K_t, x): cliques of order `t` through `x`, computed as the number of
/// K_{t-1} in the subgraph induced by the neighbourhood of `x`.
pub fn cliques_through_vertex(g: &Graph, x: usize, t: usize) -> Result<u128> {
    assert!(t >= 1, "clique order must be at least 1");
    if x >= g.n() {
        return Err(crate::Error::MissingVertex { vertex: x });
    }
    if t == 1 {
        return Ok(1);
    }
    let (hood, _) = g.induced_subgraph(g.neighbors(x))?;
    Ok(clique_total(&hood, t - 1))
}

/// w(e): number of common neighbours of the endpoints of `e`.
pub fn common_neighbors(g: &Graph, e: Edge) -> Result<usize> {
    g.require_edge(e)?;
    Ok((g.row(e.u) & g.row(e.v) & !(bit(e.u) | bit(e.v))).count_ones() as usize)
}
