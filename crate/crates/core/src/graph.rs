//! Immutable simple undirected graphs on at most 64 vertices.
//!
//! Every vertex row is a single `u64` neighbour bitset, so set operations
//! (common neighbourhoods, clique extension, reachability) are word ops.

use std::fmt;
use std::io::BufRead;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard upper bound on the vertex count.
pub const MAX_VERTICES: usize = 64;

#[inline]
pub(crate) const fn bit(v: usize) -> u64 {
    1u64 << v
}

#[inline]
pub(crate) const fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterator over the set bits of a word, lowest first.
#[derive(Clone, Copy, Debug)]
pub struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Bits {}

/// A set of vertex ids below 64, stored as a bitset.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const fn empty() -> Self {
        VertexSet(0)
    }

    /// All vertices `0..n`.
    pub const fn full(n: usize) -> Self {
        VertexSet(low_mask(n))
    }

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(bit(v))
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 & bit(v) != 0
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0 |= bit(v);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.0 &= !bit(v);
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> Bits {
        Bits(self.0)
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::empty();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let ids = Vec::<usize>::deserialize(d)?;
        if let Some(&bad) = ids.iter().find(|&&v| v >= MAX_VERTICES) {
            return Err(serde::de::Error::custom(format!("vertex id {bad} out of range")));
        }
        Ok(ids.into_iter().collect())
    }
}

/// An edge in canonical order `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    /// Builds the canonical form of the unordered pair `{a, b}`.
    pub fn new(a: usize, b: usize) -> Self {
        debug_assert_ne!(a, b);
        if a < b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

/// Immutable simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
    m: usize,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        check_order(n)?;
        Ok(Graph {
            n,
            adj: vec![0; n],
            m: 0,
        })
    }

    pub fn complete(n: usize) -> Result<Self> {
        check_order(n)?;
        let all = low_mask(n);
        let adj = (0..n).map(|v| all & !bit(v)).collect();
        Ok(Graph {
            n,
            adj,
            m: n * n.saturating_sub(1) / 2,
        })
    }

    /// Path on `n` vertices `0-1-...-(n-1)`.
    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::from_edge_list(n, &edges)
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!("cycle needs n >= 3, got {n}")));
        }
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        edges.push((n - 1, 0));
        Graph::from_edge_list(n, &edges)
    }

    /// Star with centre 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Result<Self> {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Graph::from_edge_list(leaves + 1, &edges)
    }

    /// Builds a graph from an edge list. Duplicate pairs collapse; self-loops
    /// and out-of-range ids are rejected with the offending position.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        check_order(n)?;
        let mut adj = vec![0u64; n];
        for (position, &(a, b)) in edges.iter().enumerate() {
            for vertex in [a, b] {
                if vertex >= n {
                    return Err(Error::VertexOutOfRange {
                        vertex,
                        n,
                        position,
                    });
                }
            }
            if a == b {
                return Err(Error::SelfLoop {
                    vertex: a,
                    position,
                });
            }
            adj[a] |= bit(b);
            adj[b] |= bit(a);
        }
        Ok(Graph::from_rows_unchecked(adj))
    }

    /// Builds a graph from raw adjacency rows, validating symmetry and loops.
    pub fn from_adjacency(adj: Vec<u64>) -> Result<Self> {
        let n = adj.len();
        check_order(n)?;
        let mask = low_mask(n);
        for (v, &row) in adj.iter().enumerate() {
            if row & !mask != 0 {
                let vertex = (row & !mask).trailing_zeros() as usize;
                return Err(Error::VertexOutOfRange {
                    vertex,
                    n,
                    position: v,
                });
            }
            if row & bit(v) != 0 {
                return Err(Error::SelfLoop {
                    vertex: v,
                    position: v,
                });
            }
            for w in Bits(row) {
                if adj[w] & bit(v) == 0 {
                    return Err(Error::InvalidParameter(format!(
                        "adjacency not symmetric at ({v}, {w})"
                    )));
                }
            }
        }
        Ok(Graph::from_rows_unchecked(adj))
    }

    pub(crate) fn from_rows_unchecked(adj: Vec<u64>) -> Self {
        let degree_sum: u32 = adj.iter().map(|r| r.count_ones()).sum();
        Graph {
            n: adj.len(),
            adj,
            m: degree_sum as usize / 2,
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Open neighbourhood N(v).
    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    /// Closed neighbourhood N[v].
    #[inline]
    pub fn closed_neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v] | bit(v))
    }

    #[inline]
    pub(crate) fn row(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Maximum degree; 0 for the empty graph.
    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] & bit(v) != 0
    }

    /// Edges in lexicographic `(u, v)` order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for v in Bits(self.adj[u] & !low_mask(u + 1)) {
                out.push(Edge { u, v });
            }
        }
        out
    }

    /// Position of `e` in [`Graph::edges`], if present.
    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        if !self.has_edge(e.u, e.v) {
            return None;
        }
        let before: u32 = self.adj[..e.u]
            .iter()
            .enumerate()
            .map(|(w, &r)| (r & !low_mask(w + 1)).count_ones())
            .sum();
        let within = (self.adj[e.u] & !low_mask(e.u + 1) & low_mask(e.v)).count_ones();
        Some((before + within) as usize)
    }

    /// Checks that `e` is an edge and returns it.
    pub fn require_edge(&self, e: Edge) -> Result<Edge> {
        if self.has_edge(e.u, e.v) {
            Ok(e)
        } else {
            Err(Error::NotAnEdge { u: e.u, v: e.v })
        }
    }

    /// Induced subgraph on `s`, relabelled `0..|s|` in ascending id order.
    /// The second component maps new ids to old ids.
    pub fn induced_subgraph(&self, s: VertexSet) -> Result<(Graph, Vec<usize>)> {
        if let Some(vertex) = s.difference(self.vertices()).min() {
            return Err(Error::MissingVertex { vertex });
        }
        let map = s.to_vec();
        let adj = map
            .iter()
            .map(|&old| {
                map.iter()
                    .enumerate()
                    .filter(|&(_, &w)| self.adj[old] & bit(w) != 0)
                    .fold(0u64, |row, (new, _)| row | bit(new))
            })
            .collect();
        Ok((Graph::from_rows_unchecked(adj), map))
    }

    /// `G - x`, relabelling the remaining vertices in ascending order.
    pub fn delete_vertex(&self, x: usize) -> Result<Graph> {
        if x >= self.n {
            return Err(Error::MissingVertex { vertex: x });
        }
        let mut keep = self.vertices();
        keep.remove(x);
        Ok(self.induced_subgraph(keep)?.0)
    }

    /// `G \ Z`: same vertex set, listed edges removed.
    pub fn delete_edges(&self, edges: &[Edge]) -> Result<Graph> {
        let mut adj = self.adj.clone();
        for &e in edges {
            self.require_edge(e)?;
            adj[e.u] &= !bit(e.v);
            adj[e.v] &= !bit(e.u);
        }
        Ok(Graph::from_rows_unchecked(adj))
    }

    /// Disjoint union, with `other` relabelled after `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        check_order(n)?;
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|&r| r << self.n));
        Ok(Graph::from_rows_unchecked(adj))
    }

    /// Relabels so that old vertex `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length mismatch");
        let mut adj = vec![0u64; self.n];
        for v in 0..self.n {
            adj[perm[v]] = Bits(self.adj[v]).fold(0, |row, w| row | bit(perm[w]));
        }
        Graph::from_rows_unchecked(adj)
    }

    /// Vertices reachable from `start` using only vertices in `within`.
    pub fn reachable_within(&self, start: usize, within: VertexSet) -> VertexSet {
        VertexSet(reach(&self.adj, bit(start) & within.0, within.0))
    }

    /// Connected components ordered by smallest member.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let mut left = low_mask(self.n);
        let mut out = Vec::new();
        while left != 0 {
            let seed = left & left.wrapping_neg();
            let comp = reach(&self.adj, seed, left);
            out.push(VertexSet(comp));
            left &= !comp;
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// True iff every pair of vertices in `s` is adjacent.
    pub fn is_clique(&self, s: VertexSet) -> bool {
        s.iter().all(|v| s.0 & !bit(v) & !self.adj[v] == 0)
    }

    /// Reads the plain edge-list format: a header line `n m`, then `m` lines `u v`.
    pub fn read_edge_list<R: BufRead>(reader: R) -> Result<Graph> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        let mut last_line = 0;
        for (idx, line) in reader.lines().enumerate() {
            let line_no = idx + 1;
            last_line = line_no;
            let line = line.map_err(|e| Error::EdgeList {
                line: line_no,
                reason: e.to_string(),
            })?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let pair = parse_pair(trimmed, line_no)?;
            match header {
                None => header = Some(pair),
                Some((_, m)) => {
                    if edges.len() == m {
                        return Err(Error::EdgeList {
                            line: line_no,
                            reason: format!("more than the {m} declared edges"),
                        });
                    }
                    edges.push(pair);
                }
            }
        }
        let (n, m) = header.ok_or(Error::EdgeList {
            line: last_line.max(1),
            reason: "missing `n m` header".into(),
        })?;
        if edges.len() != m {
            return Err(Error::EdgeList {
                line: last_line,
                reason: format!("expected {m} edges, found {}", edges.len()),
            });
        }
        Graph::from_edge_list(n, &edges)
    }

    /// Writes the plain edge-list format.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.m);
        for e in self.edges() {
            out.push_str(&format!("{} {}\n", e.u, e.v));
        }
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("m", &self.m)
            .field("edges", &self.edges())
            .finish()
    }
}

fn check_order(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        Err(Error::TooManyVertices {
            n,
            cap: MAX_VERTICES,
        })
    } else {
        Ok(())
    }
}

fn parse_pair(text: &str, line: usize) -> Result<(usize, usize)> {
    let mut it = text.split_whitespace();
    let mut next = |what: &str| -> Result<usize> {
        let tok = it.next().ok_or_else(|| Error::EdgeList {
            line,
            reason: format!("missing {what}"),
        })?;
        tok.parse().map_err(|_| Error::EdgeList {
            line,
            reason: format!("`{tok}` is not a non-negative integer"),
        })
    };
    let a = next("first field")?;
    let b = next("second field")?;
    if it.next().is_some() {
        return Err(Error::EdgeList {
            line,
            reason: "expected exactly two fields".into(),
        });
    }
    Ok((a, b))
}

/// Flood fill from `seed` inside `within`.
pub(crate) fn reach(adj: &[u64], seed: u64, within: u64) -> u64 {
    let mut seen = seed & within;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0;
        for v in Bits(frontier) {
            next |= adj[v];
        }
        frontier = next & within & !seen;
        seen |= frontier;
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;

    fn paw() -> Graph {
        // triangle 0-1-2 with pendant 3 attached at 0
        Graph::from_edge_list(4, &[(0, 1), (0, 2), (1, 2), (0, 3)]).unwrap()
    }

    #[test]
    fn from_edge_list_examples() {
        let k4 = Graph::from_edge_list(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(k4.m(), 6);
        assert_eq!(k4, Graph::complete(4).unwrap());

        let p3 = Graph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(p3.degrees(), vec![1, 2, 1]);

        let single = Graph::from_edge_list(1, &[]).unwrap();
        assert_eq!((single.n(), single.m()), (1, 0));
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = Graph::from_edge_list(3, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.m(), 1);
    }

    #[test]
    fn edge_list_errors_carry_position() {
        assert_eq!(
            Graph::from_edge_list(3, &[(0, 1), (1, 3)]),
            Err(Error::VertexOutOfRange {
                vertex: 3,
                n: 3,
                position: 1
            })
        );
        assert_eq!(
            Graph::from_edge_list(3, &[(0, 1), (1, 2), (2, 2)]),
            Err(Error::SelfLoop {
                vertex: 2,
                position: 2
            })
        );
        assert!(matches!(
            Graph::empty(65),
            Err(Error::TooManyVertices { n: 65, .. })
        ));
    }

    #[test]
    fn induced_subgraph_examples() {
        let k4 = Graph::complete(4).unwrap();
        let (k3, map) = k4.induced_subgraph([0, 1, 2].into_iter().collect()).unwrap();
        assert_eq!(k3, Graph::complete(3).unwrap());
        assert_eq!(map, vec![0, 1, 2]);

        let p3 = Graph::path(3).unwrap();
        let (two, map) = p3.induced_subgraph([0, 2].into_iter().collect()).unwrap();
        assert_eq!((two.n(), two.m()), (2, 0));
        assert_eq!(map, vec![0, 2]);

        // C5 minus vertex 0 leaves the path 1-2-3-4.
        let c5 = Graph::cycle(5).unwrap();
        let (p4, map) = c5.induced_subgraph([1, 2, 3, 4].into_iter().collect()).unwrap();
        assert_eq!(p4.edges(), vec![Edge::new(0, 1), Edge::new(1, 2), Edge::new(2, 3)]);
        assert_eq!(map, vec![1, 2, 3, 4]);

        assert_eq!(
            p3.induced_subgraph([0, 5].into_iter().collect()).unwrap_err(),
            Error::MissingVertex { vertex: 5 }
        );
    }

    #[test]
    fn deletion_examples() {
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(k4.delete_vertex(2).unwrap(), Graph::complete(3).unwrap());

        let p3 = Graph::path(3).unwrap();
        assert_eq!(p3.delete_edges(&[]).unwrap(), p3);

        let g = paw().delete_edges(&[Edge::new(0, 3)]).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edges(), vec![Edge::new(0, 1), Edge::new(0, 2), Edge::new(1, 2)]);
        assert_eq!(g.degree(3), 0);

        assert_eq!(
            p3.delete_edges(&[Edge::new(0, 2)]),
            Err(Error::NotAnEdge { u: 0, v: 2 })
        );
        assert_eq!(p3.delete_vertex(3), Err(Error::MissingVertex { vertex: 3 }));
    }

    #[test]
    fn components_examples() {
        let g = Graph::complete(4)
            .unwrap()
            .disjoint_union(&Graph::complete(3).unwrap())
            .unwrap();
        let comps = g.connected_components();
        assert_eq!(comps.iter().map(|c| c.len()).collect::<Vec<_>>(), vec![4, 3]);

        let e3 = Graph::empty(3).unwrap();
        assert_eq!(
            e3.connected_components(),
            vec![VertexSet::singleton(0), VertexSet::singleton(1), VertexSet::singleton(2)]
        );
        assert_eq!(Graph::cycle(5).unwrap().connected_components().len(), 1);
    }

    #[test]
    fn clique_examples() {
        let k4 = Graph::complete(4).unwrap();
        assert!(k4.is_clique(k4.vertices()));
        let p3 = Graph::path(3).unwrap();
        assert!(!p3.is_clique(p3.vertices()));
        assert!(p3.is_clique(VertexSet::singleton(0)));
        assert!(p3.is_clique(VertexSet::empty()));
    }

    #[test]
    fn edge_index_matches_edges_order() {
        let g = paw();
        for (i, e) in g.edges().into_iter().enumerate() {
            assert_eq!(g.edge_index(e), Some(i));
        }
        assert_eq!(g.edge_index(Edge::new(1, 3)), None);
    }

    #[test]
    fn edge_list_text_round_trip() {
        let g = paw();
        let text = g.to_edge_list();
        assert_eq!(text, "4 4\n0 1\n0 2\n0 3\n1 2\n");
        assert_eq!(Graph::read_edge_list(text.as_bytes()).unwrap(), g);
    }

    #[test]
    fn edge_list_text_errors() {
        let err = Graph::read_edge_list("3 2\n0 1\n1 x\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::EdgeList { line: 3, .. }), "{err:?}");
        let err = Graph::read_edge_list("3 2\n0 1\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::EdgeList { .. }));
        let err = Graph::read_edge_list("".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::EdgeList { .. }));
    }
}
