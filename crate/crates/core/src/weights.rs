//! Edge weights from exact path and cycle searches.
//!
//! `p(e)` is the length (edge count) of a longest simple path whose edge set
//! contains `e`. `c(e)` is the length of a longest cycle through `e`, and 2
//! when `e` is a bridge. Both are exact; graphs above the search cap are
//! rejected rather than approximated, since an underestimated weight would
//! make the derived bounds unsound.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{bit, reach, Bits, Edge, Graph};

/// Default order cap for the exact searches.
pub const DEFAULT_EXACT_CAP: usize = 20;

/// Weight of an edge that lies on no cycle.
pub const ACYCLIC_EDGE_WEIGHT: usize = 2;

fn check_cap(g: &Graph, cap: usize, what: &'static str) -> Result<()> {
    if g.n() > cap {
        Err(Error::CapExceeded { what, n: g.n(), cap })
    } else {
        Ok(())
    }
}

/// Longest simple path starting at `start` inside `free` (start excluded).
struct OneSided<'a> {
    adj: &'a [u64],
    best: usize,
    ceiling: usize,
}

impl OneSided<'_> {
    fn run(&mut self, cur: usize, free: u64, len: usize) {
        if len > self.best {
            self.best = len;
        }
        if self.best >= self.ceiling {
            return;
        }
        let next = self.adj[cur] & free;
        if next == 0 {
            return;
        }
        // Everything still reachable from `cur` is an upper bound on the extension.
        let room = (reach(self.adj, next, free)).count_ones() as usize;
        if len + room <= self.best {
            return;
        }
        for w in Bits(next) {
            self.run(w, free & !bit(w), len + 1);
            if self.best >= self.ceiling {
                return;
            }
        }
    }
}

fn longest_from(adj: &[u64], start: usize, free: u64) -> usize {
    let ceiling = reach(adj, adj[start] & free, free).count_ones() as usize;
    let mut s = OneSided {
        adj,
        best: 0,
        ceiling,
    };
    s.run(start, free, 0);
    s.best
}

/// Two-sided search: grow the part ending at `u` outward, and for each such
/// left part take the longest continuation from `v` through unused vertices.
struct TwoSided<'a> {
    adj: &'a [u64],
    right_end: usize,
    best: usize,
    ceiling: usize,
}

impl TwoSided<'_> {
    fn run(&mut self, cur: usize, free: u64, left_len: usize) {
        let right = longest_from(self.adj, self.right_end, free);
        self.best = self.best.max(left_len + 1 + right);
        if self.best >= self.ceiling {
            return;
        }
        let next = self.adj[cur] & free;
        if next == 0 {
            return;
        }
        let seeds = next | (self.adj[self.right_end] & free);
        let room = reach(self.adj, seeds, free).count_ones() as usize;
        if left_len + 1 + room <= self.best {
            return;
        }
        for w in Bits(next) {
            self.run(w, free & !bit(w), left_len + 1);
            if self.best >= self.ceiling {
                return;
            }
        }
    }
}

fn path_weight(g: &Graph, e: Edge) -> usize {
    let adj = g.rows();
    let component = g.reachable_within(e.u, g.vertices());
    let free = component.bits() & !(bit(e.u) | bit(e.v));
    let mut s = TwoSided {
        adj,
        right_end: e.v,
        best: 1,
        ceiling: component.len() - 1,
    };
    s.run(e.u, free, 0);
    s.best
}

/// Longest `u`–`v` path avoiding the edge `uv` itself.
struct Detour<'a> {
    adj: &'a [u64],
    target: usize,
    best: usize,
    ceiling: usize,
}

impl Detour<'_> {
    fn run(&mut self, cur: usize, free: u64, len: usize) {
        let next = self.adj[cur] & free;
        // `free` still contains the target; stepping onto it closes the detour.
        if next & bit(self.target) != 0 && len + 1 > self.best {
            self.best = len + 1;
        }
        if self.best >= self.ceiling {
            return;
        }
        let inner = next & !bit(self.target);
        if inner == 0 {
            return;
        }
        let room = reach(self.adj, inner, free);
        if room & bit(self.target) == 0 || len + room.count_ones() as usize <= self.best {
            return;
        }
        for w in Bits(inner) {
            self.run(w, free & !bit(w), len + 1);
            if self.best >= self.ceiling {
                return;
            }
        }
    }
}

fn cycle_weight(g: &Graph, e: Edge) -> usize {
    let mut adj = g.rows().to_vec();
    adj[e.u] &= !bit(e.v);
    adj[e.v] &= !bit(e.u);
    let component = reach(&adj, bit(e.u), u64::MAX);
    if component & bit(e.v) == 0 {
        return ACYCLIC_EDGE_WEIGHT;
    }
    let mut s = Detour {
        adj: &adj,
        target: e.v,
        best: 0,
        ceiling: component.count_ones() as usize - 1,
    };
    s.run(e.u, component & !bit(e.u), 0);
    // A u-v path in G - e has at least two edges, so the cycle has length >= 3.
    s.best + 1
}

/// p(e): length of a longest path containing `e`.
pub fn longest_path_through_edge(g: &Graph, e: Edge, cap: usize) -> Result<usize> {
    g.require_edge(e)?;
    check_cap(g, cap, "exact longest-path search")?;
    Ok(path_weight(g, e))
}

/// c(e): length of a longest cycle containing `e`, or 2 if there is none.
pub fn longest_cycle_through_edge(g: &Graph, e: Edge, cap: usize) -> Result<usize> {
    g.require_edge(e)?;
    check_cap(g, cap, "exact longest-cycle search")?;
    Ok(cycle_weight(g, e))
}

/// Degrees, per-edge path and cycle weights, and their global maxima.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightMap {
    pub degrees: Vec<usize>,
    pub max_degree: usize,
    /// Aligned with [`Graph::edges`].
    pub edges: Vec<Edge>,
    pub p: Vec<usize>,
    pub c: Vec<usize>,
    /// Longest path length; 0 for edgeless graphs.
    pub longest_path: usize,
    /// Longest cycle length; 0 for forests.
    pub circumference: usize,
}

impl WeightMap {
    pub fn p_of(&self, e: Edge) -> Option<usize> {
        self.edges.iter().position(|&f| f == e).map(|i| self.p[i])
    }

    pub fn c_of(&self, e: Edge) -> Option<usize> {
        self.edges.iter().position(|&f| f == e).map(|i| self.c[i])
    }
}

/// Computes the full [`WeightMap`] for `g`.
pub fn all_weights(g: &Graph, cap: usize) -> Result<WeightMap> {
    check_cap(g, cap, "exact path/cycle weights")?;
    let edges = g.edges();
    let p: Vec<usize> = edges.iter().map(|&e| path_weight(g, e)).collect();
    let c: Vec<usize> = edges.iter().map(|&e| cycle_weight(g, e)).collect();
    let degrees = g.degrees();
    Ok(WeightMap {
        max_degree: degrees.iter().copied().max().unwrap_or(0),
        degrees,
        longest_path: p.iter().copied().max().unwrap_or(0),
        circumference: c.iter().copied().filter(|&w| w >= 3).max().unwrap_or(0),
        edges,
        p,
        c,
    })
}
