//! Slow reference implementations used to cross-check the fast paths.
//!
//! Each oracle shares nothing with the code it checks beyond [`Graph`]:
//! cliques are found by testing every vertex subset, path and cycle weights
//! by a Hamiltonian-path table over vertex subsets, and isomorphism classes
//! by union-find over all labelled graphs.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Order cap for [`naive_clique_count`].
pub const CLIQUE_ORACLE_CAP: usize = 10;
/// Order cap for [`subset_dp_weights`].
pub const WEIGHT_ORACLE_CAP: usize = 9;
/// Order cap for [`labelled_class_count`].
pub const CLASS_ORACLE_CAP: usize = 7;

fn cap(g: &Graph, cap: usize, what: &'static str) -> Result<()> {
    if g.n() > cap {
        Err(Error::CapExceeded { what, n: g.n(), cap })
    } else {
        Ok(())
    }
}

fn adjacent(g: &Graph, u: usize, v: usize) -> bool {
    g.neighbors(u).contains(v)
}

/// Counts `t`-subsets of `V(G)` that are pairwise adjacent.
pub fn naive_clique_count(g: &Graph, t: usize) -> Result<u128> {
    cap(g, CLIQUE_ORACLE_CAP, "naive clique oracle")?;
    let n = g.n();
    let mut count = 0u128;
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != t {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let clique = members
            .iter()
            .enumerate()
            .all(|(i, &u)| members[i + 1..].iter().all(|&v| adjacent(g, u, v)));
        if clique {
            count += 1;
        }
    }
    Ok(count)
}

/// `(p, c)` per edge of [`Graph::edges`], computed from the table
/// `starts[mask][v]` = set of `s` with a Hamiltonian path of `G[mask]` from `s` to `v`.
pub fn subset_dp_weights(g: &Graph) -> Result<(Vec<usize>, Vec<usize>)> {
    cap(g, WEIGHT_ORACLE_CAP, "subset-DP weight oracle")?;
    let n = g.n();
    let full = 1usize << n;
    let mut starts = vec![vec![0u32; n]; full];
    for v in 0..n {
        starts[1 << v][v] = 1 << v;
    }
    for mask in 1..full {
        for v in 0..n {
            let s = starts[mask][v];
            if s == 0 {
                continue;
            }
            for w in 0..n {
                if mask >> w & 1 == 0 && adjacent(g, v, w) {
                    starts[mask | 1 << w][w] |= s;
                }
            }
        }
    }
    let ends_at = |mask: usize, v: usize| starts[mask][v] != 0;

    let mut p = Vec::new();
    let mut c = Vec::new();
    for e in g.edges() {
        let (u, v) = (e.u, e.v);
        let mut best_path = 1;
        for left in 1..full {
            if left >> u & 1 == 0 || left >> v & 1 == 1 || !ends_at(left, u) {
                continue;
            }
            let rest = (full - 1) & !left;
            let mut right = rest;
            loop {
                if right >> v & 1 == 1 && ends_at(right, v) {
                    let len = (left | right).count_ones() as usize - 1;
                    best_path = best_path.max(len);
                }
                if right == 0 {
                    break;
                }
                right = (right - 1) & rest;
            }
        }
        p.push(best_path);

        let mut best_cycle = 2;
        for mask in 1..full {
            if mask.count_ones() >= 3 && starts[mask][v] >> u & 1 == 1 {
                best_cycle = best_cycle.max(mask.count_ones() as usize);
            }
        }
        c.push(best_cycle);
    }
    Ok((p, c))
}

fn pair_index(i: usize, j: usize) -> usize {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    b * (b - 1) / 2 + a
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        let up = parent[parent[x as usize] as usize];
        parent[x as usize] = up;
        x = up;
    }
    x
}

/// Number of isomorphism classes of graphs on `n` labelled vertices, found by
/// merging every labelled graph with its images under adjacent transpositions.
pub fn labelled_class_count(n: usize) -> Result<usize> {
    if n > CLASS_ORACLE_CAP {
        return Err(Error::CapExceeded {
            what: "labelled class oracle",
            n,
            cap: CLASS_ORACLE_CAP,
        });
    }
    let pairs = n * n.saturating_sub(1) / 2;
    let total = 1u32 << pairs;
    let maps: Vec<Vec<usize>> = (0..n.saturating_sub(1))
        .map(|k| {
            let swap = |x: usize| match x {
                x if x == k => k + 1,
                x if x == k + 1 => k,
                x => x,
            };
            let mut map = vec![0; pairs];
            for j in 1..n {
                for i in 0..j {
                    map[pair_index(i, j)] = pair_index(swap(i), swap(j));
                }
            }
            map
        })
        .collect();
    let mut parent: Vec<u32> = (0..total).collect();
    let mut classes = total as usize;
    for code in 0..total {
        for map in &maps {
            let image = (0..pairs)
                .filter(|&b| code >> b & 1 == 1)
                .fold(0u32, |acc, b| acc | 1 << map[b]);
            let (a, b) = (find(&mut parent, code), find(&mut parent, image));
            if a != b {
                parent[a as usize] = b;
                classes -= 1;
            }
        }
    }
    Ok(classes)
}
