//! Canonical labels, exhaustive enumeration of isomorphism classes, and
//! seeded random graph models.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bit, Bits, Graph};
use crate::graph6::write_graph6;

/// Largest order accepted by [`canonical_form`].
pub const CANONICAL_CAP: usize = 10;

/// Largest order the built-in enumerator generates.
pub const ENUMERATION_CAP: usize = 8;

/// Attempts made by the regular sampler before giving up.
pub const MAX_REGULAR_ATTEMPTS: usize = 100_000;

/// Stable colour refinement, colours ranked by their signatures so the
/// resulting ordered partition is isomorphism invariant.
fn refine(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut color = vec![0usize; n];
    let mut classes = 1;
    loop {
        let signatures: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut counts = vec![0usize; classes];
                for w in g.neighbors(v).iter() {
                    counts[color[w]] += 1;
                }
                (color[v], counts)
            })
            .collect();
        let mut ranked = signatures.clone();
        ranked.sort();
        ranked.dedup();
        for v in 0..n {
            color[v] = ranked.binary_search(&signatures[v]).expect("signature present");
        }
        if ranked.len() == classes {
            return color;
        }
        classes = ranked.len();
    }
}

struct Canon<'a> {
    adj: &'a [u64],
    /// Colour required at each position of the labelling.
    slot: Vec<usize>,
    color: Vec<usize>,
    perm: Vec<usize>,
    /// Column `k` holds the bits `x(0,k) .. x(k-1,k)`, `x(0,k)` most significant.
    code: Vec<u64>,
    best: Option<(Vec<u64>, Vec<usize>)>,
}

impl Canon<'_> {
    fn twins(&self, u: usize, v: usize) -> bool {
        self.adj[u] & !bit(v) == self.adj[v] & !bit(u)
    }

    fn column(&self, k: usize, v: usize) -> u64 {
        (0..k).fold(0, |col, i| {
            (col << 1) | u64::from(self.adj[self.perm[i]] & bit(v) != 0)
        })
    }

    fn search(&mut self, k: usize, used: u64) {
        let n = self.perm.len();
        if k == n {
            if self.best.as_ref().is_none_or(|(code, _)| self.code < *code) {
                self.best = Some((self.code.clone(), self.perm.clone()));
            }
            return;
        }
        let cands: Vec<(usize, u64)> = (0..n)
            .filter(|&v| used & bit(v) == 0 && self.color[v] == self.slot[k])
            .map(|v| (v, self.column(k, v)))
            .collect();
        let low = cands.iter().map(|&(_, c)| c).min().expect("slot has a candidate");
        if let Some((best, _)) = &self.best {
            if (&self.code[..k], low) > (&best[..k], best[k]) {
                return;
            }
        }
        let mut tried: Vec<usize> = Vec::new();
        for &(v, col) in &cands {
            // Swapping twins is an automorphism fixing every placed vertex.
            if col != low || tried.iter().any(|&u| self.twins(u, v)) {
                continue;
            }
            tried.push(v);
            self.perm[k] = v;
            self.code[k] = col;
            self.search(k + 1, used | bit(v));
        }
    }
}

/// The representative of `g`'s isomorphism class whose column-order
/// adjacency bit string is lexicographically least, among labellings that
/// respect the refined degree partition.
pub fn canonical_graph(g: &Graph) -> Result<Graph> {
    let n = g.n();
    if n > CANONICAL_CAP {
        return Err(Error::CapExceeded {
            what: "canonical labelling",
            n,
            cap: CANONICAL_CAP,
        });
    }
    let color = refine(g);
    let mut slot = color.clone();
    slot.sort();
    let mut canon = Canon {
        adj: g.rows(),
        slot,
        color,
        perm: vec![0; n],
        code: vec![0; n],
        best: None,
    };
    canon.search(0, 0);
    let (_, order) = canon.best.expect("search reaches a leaf");
    let mut position = vec![0; n];
    for (k, &v) in order.iter().enumerate() {
        position[v] = k;
    }
    Ok(g.permute(&position))
}

/// graph6 of [`canonical_graph`]; equal iff the graphs are isomorphic.
pub fn canonical_form(g: &Graph) -> Result<String> {
    Ok(write_graph6(&canonical_graph(g)?))
}

fn extend(level: &[Graph], n: usize) -> Vec<Graph> {
    let found: Vec<(usize, String, Graph)> = level
        .par_iter()
        .flat_map_iter(|parent| {
            (0u64..1 << (n - 1)).map(move |nbrs| {
                let mut adj = parent.rows().to_vec();
                for w in Bits(nbrs) {
                    adj[w] |= bit(n - 1);
                }
                adj.push(nbrs);
                let child = canonical_graph(&Graph::from_rows_unchecked(adj))
                    .expect("order within canonical cap");
                (child.m(), write_graph6(&child), child)
            })
        })
        .collect();
    let unique: BTreeMap<(usize, String), Graph> = found
        .into_iter()
        .map(|(m, label, g)| ((m, label), g))
        .collect();
    unique.into_values().collect()
}

/// One canonical representative per isomorphism class on `n` vertices,
/// ordered by edge count and then canonical label.
pub fn enumerate_graphs(n: usize) -> Result<Vec<Graph>> {
    if n > ENUMERATION_CAP {
        return Err(Error::CapExceeded {
            what: "built-in enumeration (pipe graph6 from an external generator such as geng)",
            n,
            cap: ENUMERATION_CAP,
        });
    }
    let mut level = vec![Graph::empty(0)?];
    for k in 1..=n {
        level = extend(&level, k);
    }
    Ok(level)
}

/// Random graph models.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "model")]
pub enum RandomModel {
    /// Each pair independently with probability `p`.
    Gnp { p: f64 },
    /// Uniform over pairings of the configuration model, conditioned on simplicity.
    Regular { d: usize },
}

impl RandomModel {
    pub fn validate(&self, n: usize) -> Result<()> {
        match *self {
            RandomModel::Gnp { p } if !(0.0..=1.0).contains(&p) => Err(Error::InvalidParameter(
                format!("edge probability {p} outside [0, 1]"),
            )),
            RandomModel::Regular { d } if n > 0 && d >= n => Err(Error::InvalidParameter(
                format!("no {d}-regular graph on {n} vertices"),
            )),
            RandomModel::Regular { d } if (n * d) % 2 == 1 => Err(Error::InvalidParameter(
                format!("no {d}-regular graph on {n} vertices: n*d is odd"),
            )),
            RandomModel::Regular { d } if n == 0 && d > 0 => Err(Error::InvalidParameter(
                format!("no {d}-regular graph on 0 vertices"),
            )),
            _ => Ok(()),
        }
    }
}

fn gnp<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut adj = vec![0u64; n];
    for j in 1..n {
        for i in 0..j {
            if rng.random_bool(p) {
                adj[i] |= bit(j);
                adj[j] |= bit(i);
            }
        }
    }
    Graph::from_rows_unchecked(adj)
}

fn pairing<R: Rng>(n: usize, d: usize, rng: &mut R) -> Option<Vec<u64>> {
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    stubs.shuffle(rng);
    let mut adj = vec![0u64; n];
    for pair in stubs.chunks_exact(2) {
        let (a, b) = (pair[0], pair[1]);
        if a == b || adj[a] & bit(b) != 0 {
            return None;
        }
        adj[a] |= bit(b);
        adj[b] |= bit(a);
    }
    Some(adj)
}

fn regular<R: Rng>(n: usize, d: usize, rng: &mut R) -> Result<Graph> {
    // Dense targets are sampled as complements, where rejection is rare.
    let complement = n > 0 && d > (n - 1) / 2;
    let k = if complement { n - 1 - d } else { d };
    for _ in 0..MAX_REGULAR_ATTEMPTS {
        if let Some(mut adj) = pairing(n, k, rng) {
            if complement {
                let all = crate::graph::low_mask(n);
                for (v, row) in adj.iter_mut().enumerate() {
                    *row = all & !*row & !bit(v);
                }
            }
            return Ok(Graph::from_rows_unchecked(adj));
        }
    }
    Err(Error::InvalidParameter(format!(
        "no simple {d}-regular pairing on {n} vertices after {MAX_REGULAR_ATTEMPTS} attempts"
    )))
}

/// Draws one graph using `rng`.
pub fn random_graph_with<R: Rng>(model: RandomModel, n: usize, rng: &mut R) -> Result<Graph> {
    if n > crate::graph::MAX_VERTICES {
        return Err(Error::TooManyVertices {
            n,
            cap: crate::graph::MAX_VERTICES,
        });
    }
    model.validate(n)?;
    match model {
        RandomModel::Gnp { p } => Ok(gnp(n, p, rng)),
        RandomModel::Regular { d } => regular(n, d, rng),
    }
}

/// Draws one graph from a ChaCha8 stream seeded with `seed`.
pub fn random_graph(model: RandomModel, n: usize, seed: u64) -> Result<Graph> {
    random_graph_with(model, n, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// `count` graphs drawn in sequence from one seeded stream.
pub fn random_graphs(model: RandomModel, n: usize, count: usize, seed: u64) -> Result<Vec<Graph>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_graph_with(model, n, &mut rng))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn p3_variants() -> [Graph; 3] {
        [
            Graph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap(),
            Graph::from_edge_list(3, &[(0, 2), (2, 1)]).unwrap(),
            Graph::from_edge_list(3, &[(1, 0), (0, 2)]).unwrap(),
        ]
    }

    #[test]
    fn canonical_invariance() {
        let labels: BTreeSet<String> =
            p3_variants().iter().map(|g| canonical_form(g).unwrap()).collect();
        assert_eq!(labels.len(), 1);
        assert_ne!(
            canonical_form(&Graph::path(3).unwrap()).unwrap(),
            canonical_form(&Graph::complete(3).unwrap()).unwrap()
        );
    }

    #[test]
    fn three_edge_graphs_on_four_vertices() {
        let pairs = [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)];
        let mut labels = BTreeSet::new();
        let mut labelled = 0;
        for mask in 0u32..64 {
            if mask.count_ones() != 3 {
                continue;
            }
            labelled += 1;
            let edges: Vec<_> = (0..6).filter(|i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
            labels.insert(canonical_form(&Graph::from_edge_list(4, &edges).unwrap()).unwrap());
        }
        assert_eq!(labelled, 20);
        assert_eq!(labels.len(), 3);
    }

    #[test]
    fn canonical_form_under_random_relabelling() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=CANONICAL_CAP {
            for _ in 0..10 {
                let g = random_graph_with(RandomModel::Gnp { p: 0.4 }, n, &mut rng).unwrap();
                let mut perm: Vec<usize> = (0..n).collect();
                perm.shuffle(&mut rng);
                let h = g.permute(&perm);
                assert_eq!(canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
                let c = canonical_graph(&g).unwrap();
                assert_eq!(c.m(), g.m());
                assert_eq!(canonical_graph(&c).unwrap(), c);
            }
        }
    }

    #[test]
    fn canonical_form_of_symmetric_graphs() {
        for n in [8, 10] {
            for g in [
                Graph::complete(n).unwrap(),
                Graph::empty(n).unwrap(),
                Graph::cycle(n).unwrap(),
            ] {
                let c = canonical_graph(&g).unwrap();
                assert_eq!(c.degrees(), g.degrees());
            }
        }
        assert!(matches!(
            canonical_form(&Graph::empty(11).unwrap()),
            Err(Error::CapExceeded { cap: CANONICAL_CAP, .. })
        ));
    }

    #[test]
    fn small_enumeration_counts() {
        let counts: Vec<usize> = (0..=5).map(|n| enumerate_graphs(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34]);
    }

    #[test]
    fn enumeration_order_and_cap() {
        let graphs = enumerate_graphs(4).unwrap();
        assert_eq!(graphs.first().unwrap().m(), 0);
        assert_eq!(graphs.last().unwrap().m(), 6);
        let keys: Vec<(usize, String)> = graphs.iter().map(|g| (g.m(), write_graph6(g))).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        assert!(matches!(enumerate_graphs(9), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn gnp_extremes_and_determinism() {
        for seed in [0, 1, 99] {
            assert_eq!(
                random_graph(RandomModel::Gnp { p: 1.0 }, 5, seed).unwrap(),
                Graph::complete(5).unwrap()
            );
            assert_eq!(
                random_graph(RandomModel::Gnp { p: 0.0 }, 5, seed).unwrap(),
                Graph::empty(5).unwrap()
            );
        }
        let a = random_graph(RandomModel::Gnp { p: 0.5 }, 12, 42).unwrap();
        let b = random_graph(RandomModel::Gnp { p: 0.5 }, 12, 42).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            random_graphs(RandomModel::Gnp { p: 0.3 }, 8, 5, 3).unwrap(),
            random_graphs(RandomModel::Gnp { p: 0.3 }, 8, 5, 3).unwrap()
        );
        assert!(random_graph(RandomModel::Gnp { p: 1.5 }, 5, 0).is_err());
    }

    #[test]
    fn regular_sampler() {
        for (n, d) in [(8, 3), (10, 4), (10, 7), (6, 5), (7, 0), (12, 2)] {
            let g = random_graph(RandomModel::Regular { d }, n, 5).unwrap();
            assert!(g.degrees().iter().all(|&x| x == d), "n={n} d={d}");
            assert_eq!(g, random_graph(RandomModel::Regular { d }, n, 5).unwrap());
        }
        assert!(random_graph(RandomModel::Regular { d: 3 }, 5, 0).is_err());
        assert!(random_graph(RandomModel::Regular { d: 5 }, 5, 0).is_err());
    }
}
