//! Classical and localized upper bounds on clique counts, as exact rationals.
//!
//! Localized bounds keep their integer numerators (`*_sum` functions) so
//! tightness can be decided by a single integer comparison such as
//! `t * N(G, K_t) == sum_v C(d(v), t - 1)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::binom::{binomial, choose};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ratio::ExactRatio;
use crate::weights::WeightMap;

/// Every bound the crate evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    WoodClassical,
    WoodTotal,
    CcPathClassical,
    CcCycleClassical,
    LocalVertex,
    LocalVertexTotal,
    LocalEdgePath,
    LocalEdgeCycleConjecture,
}

impl BoundKind {
    pub const ALL: [BoundKind; 8] = [
        BoundKind::WoodClassical,
        BoundKind::WoodTotal,
        BoundKind::CcPathClassical,
        BoundKind::CcCycleClassical,
        BoundKind::LocalVertex,
        BoundKind::LocalVertexTotal,
        BoundKind::LocalEdgePath,
        BoundKind::LocalEdgeCycleConjecture,
    ];

    /// The four localized bounds.
    pub const LOCALIZED: [BoundKind; 4] = [
        BoundKind::LocalVertex,
        BoundKind::LocalVertexTotal,
        BoundKind::LocalEdgePath,
        BoundKind::LocalEdgeCycleConjecture,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundKind::WoodClassical => "wood_classical",
            BoundKind::WoodTotal => "wood_total",
            BoundKind::CcPathClassical => "cc_path_classical",
            BoundKind::CcCycleClassical => "cc_cycle_classical",
            BoundKind::LocalVertex => "local_vertex",
            BoundKind::LocalVertexTotal => "local_vertex_total",
            BoundKind::LocalEdgePath => "local_edge_path",
            BoundKind::LocalEdgeCycleConjecture => "local_edge_cycle_conjecture",
        }
    }

    /// Bounds on the number of cliques of every order, not a single `t`.
    pub fn is_total(self) -> bool {
        matches!(self, BoundKind::WoodTotal | BoundKind::LocalVertexTotal)
    }

    /// Conjectured rather than proven.
    pub fn is_conjecture(self) -> bool {
        self == BoundKind::LocalEdgeCycleConjecture
    }

    /// Smallest order the bound is defined for.
    pub fn min_order(self) -> usize {
        match self {
            BoundKind::CcPathClassical
            | BoundKind::CcCycleClassical
            | BoundKind::LocalEdgePath
            | BoundKind::LocalEdgeCycleConjecture => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for BoundKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BoundKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown bound kind `{s}`")))
    }
}

fn overflow(what: &'static str) -> Error {
    Error::Overflow { what }
}

fn need_order(t: usize, min: usize, what: &str) -> Result<()> {
    if t < min {
        Err(Error::InvalidParameter(format!("{what} needs t >= {min}, got {t}")))
    } else {
        Ok(())
    }
}

fn check_weights(g: &Graph, w: &WeightMap) -> Result<()> {
    if w.edges.len() != g.m() || w.degrees.len() != g.n() {
        Err(Error::InvalidParameter(
            "weight map was computed for a different graph".into(),
        ))
    } else {
        Ok(())
    }
}

fn t_choose_2(t: usize) -> u128 {
    (t as u128) * (t as u128).saturating_sub(1) / 2
}

/// `n / (d + 1) * C(d + 1, t)`, the bound for maximum degree `d`.
pub fn wood_bound(n: u64, d: u64, t: u64) -> Result<ExactRatio> {
    need_order(t as usize, 1, "degree bound")?;
    let num = (n as u128)
        .checked_mul(binomial(d + 1, t)?)
        .ok_or_else(|| overflow("degree bound"))?;
    ExactRatio::from_parts(num, d as u128 + 1)
}

/// `n / (d + 1) * (2^(d+1) - 1)`, bounding cliques of all orders.
pub fn wood_total_bound(n: u64, d: u64) -> Result<ExactRatio> {
    let all = 1u128
        .checked_shl(d as u32 + 1)
        .filter(|_| d < 127)
        .ok_or_else(|| overflow("all-orders degree bound"))?
        - 1;
    let num = (n as u128)
        .checked_mul(all)
        .ok_or_else(|| overflow("all-orders degree bound"))?;
    ExactRatio::from_parts(num, d as u128 + 1)
}

fn edge_cap_bound(m: u64, r: u64, t: u64, what: &'static str) -> Result<ExactRatio> {
    need_order(t as usize, 2, what)?;
    if r < 2 {
        return Err(Error::InvalidParameter(format!("{what} needs r >= 2, got {r}")));
    }
    let num = (m as u128)
        .checked_mul(binomial(r, t)?)
        .ok_or_else(|| overflow(what))?;
    ExactRatio::from_parts(num, binomial(r, 2)?)
}

/// `m / C(r, 2) * C(r, t)` for graphs with no path on `r + 1` vertices.
pub fn cc_path_bound(m: u64, r: u64, t: u64) -> Result<ExactRatio> {
    edge_cap_bound(m, r, t, "path-length bound")
}

/// Same closed form as [`cc_path_bound`], for circumference at most `r`.
pub fn cc_cycle_bound(m: u64, r: u64, t: u64) -> Result<ExactRatio> {
    edge_cap_bound(m, r, t, "circumference bound")
}

/// `sum_v C(d(v), t - 1)`.
pub fn local_vertex_sum(g: &Graph, t: usize) -> Result<u128> {
    need_order(t, 1, "vertex bound")?;
    (0..g.n()).try_fold(0u128, |acc, v| {
        acc.checked_add(choose(g.degree(v) as i64, t as i64 - 1)?)
            .ok_or_else(|| overflow("vertex bound"))
    })
}

/// `(1/t) sum_v C(d(v), t - 1)`.
pub fn local_vertex_bound(g: &Graph, t: usize) -> Result<ExactRatio> {
    ExactRatio::from_parts(local_vertex_sum(g, t)?, t as u128)
}

/// `sum_v (2^(d(v)+1) - 1) / (d(v) + 1)`, accumulated per distinct degree.
pub fn local_vertex_total_bound(g: &Graph) -> Result<ExactRatio> {
    let mut by_degree = [0u64; 64];
    for v in 0..g.n() {
        by_degree[g.degree(v)] += 1;
    }
    by_degree
        .iter()
        .enumerate()
        .filter(|&(_, &k)| k > 0)
        .try_fold(ExactRatio::ZERO, |acc, (d, &k)| {
            acc.checked_add(wood_total_bound(k, d as u64)?)
        })
}

/// `sum_e C(p(e) - 1, t - 2)`.
pub fn local_edge_path_sum(g: &Graph, w: &WeightMap, t: usize) -> Result<u128> {
    need_order(t, 2, "path-weight bound")?;
    check_weights(g, w)?;
    w.p.iter().try_fold(0u128, |acc, &p| {
        acc.checked_add(choose(p as i64 - 1, t as i64 - 2)?)
            .ok_or_else(|| overflow("path-weight bound"))
    })
}

/// `(1 / C(t, 2)) sum_e C(p(e) - 1, t - 2)`.
pub fn local_edge_path_bound(g: &Graph, w: &WeightMap, t: usize) -> Result<ExactRatio> {
    ExactRatio::from_parts(local_edge_path_sum(g, w, t)?, t_choose_2(t))
}

/// `sum_e C(c(e) - 2, t - 2)`.
pub fn local_edge_cycle_sum(g: &Graph, w: &WeightMap, t: usize) -> Result<u128> {
    need_order(t, 2, "cycle-weight bound")?;
    check_weights(g, w)?;
    w.c.iter().try_fold(0u128, |acc, &c| {
        acc.checked_add(choose(c as i64 - 2, t as i64 - 2)?)
            .ok_or_else(|| overflow("cycle-weight bound"))
    })
}

/// `(1 / C(t, 2)) sum_e C(c(e) - 2, t - 2)`, the conjectured cycle bound.
pub fn local_edge_cycle_bound(g: &Graph, w: &WeightMap, t: usize) -> Result<ExactRatio> {
    ExactRatio::from_parts(local_edge_cycle_sum(g, w, t)?, t_choose_2(t))
}

/// `r` for the path-length bound: the graph has no path with `longest + 1`
/// edges. Floors at 2, which only matters for edgeless graphs.
pub fn path_parameter(w: &WeightMap) -> u64 {
    (w.longest_path as u64 + 1).max(2)
}

/// `r` for the circumference bound; forests use 2.
pub fn cycle_parameter(w: &WeightMap) -> u64 {
    (w.circumference as u64).max(2)
}

/// Value of one bound kind. `t` is ignored for the all-orders kinds.
pub fn bound_value(g: &Graph, w: &WeightMap, kind: BoundKind, t: usize) -> Result<ExactRatio> {
    let (n, m) = (g.n() as u64, g.m() as u64);
    let d = w.max_degree as u64;
    match kind {
        BoundKind::WoodClassical => wood_bound(n, d, t as u64),
        BoundKind::WoodTotal => wood_total_bound(n, d),
        BoundKind::CcPathClassical => cc_path_bound(m, path_parameter(w), t as u64),
        BoundKind::CcCycleClassical => cc_cycle_bound(m, cycle_parameter(w), t as u64),
        BoundKind::LocalVertex => local_vertex_bound(g, t),
        BoundKind::LocalVertexTotal => local_vertex_total_bound(g),
        BoundKind::LocalEdgePath => local_edge_path_bound(g, w, t),
        BoundKind::LocalEdgeCycleConjecture => local_edge_cycle_bound(g, w, t),
    }
}

/// One localized-vs-classical comparison pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DominancePair {
    pub local: ExactRatio,
    pub classical: ExactRatio,
    /// The classical parameter used (`d` or `r`).
    pub parameter: u64,
    /// `classical - local`.
    pub gap: ExactRatio,
}

impl DominancePair {
    fn new(local: ExactRatio, classical: ExactRatio, parameter: u64) -> Result<Self> {
        Ok(DominancePair {
            gap: classical.checked_sub(local)?,
            local,
            classical,
            parameter,
        })
    }

    pub fn holds(&self) -> bool {
        !self.gap.is_negative()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DominanceRecord {
    pub t: usize,
    /// Vertex bound against the degree bound with `d = max degree`.
    pub vertex: DominancePair,
    /// Path-weight bound against the path-length bound with `r = longest path + 1`;
    /// absent for edgeless graphs.
    pub edge: Option<DominancePair>,
}

impl DominanceRecord {
    pub fn holds(&self) -> bool {
        self.vertex.holds() && self.edge.as_ref().is_none_or(DominancePair::holds)
    }
}

/// Checks that each localized bound is no larger than the classical bound it
/// refines. A failure here means a bug, not a mathematical finding.
pub fn compare_local_vs_classical(g: &Graph, w: &WeightMap, t: usize) -> Result<DominanceRecord> {
    need_order(t, 2, "dominance comparison")?;
    check_weights(g, w)?;
    let d = w.max_degree as u64;
    let vertex = DominancePair::new(
        local_vertex_bound(g, t)?,
        wood_bound(g.n() as u64, d, t as u64)?,
        d,
    )?;
    let edge = if g.m() > 0 {
        let r = w.longest_path as u64 + 1;
        Some(DominancePair::new(
            local_edge_path_bound(g, w, t)?,
            cc_path_bound(g.m() as u64, r, t as u64)?,
            r,
        )?)
    } else {
        None
    };
    Ok(DominanceRecord { t, vertex, edge })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::all_weights;
    use proptest::prelude::*;

    fn r(n: i128, d: i128) -> ExactRatio {
        ExactRatio::new(n, d).unwrap()
    }

    fn paw() -> Graph {
        Graph::from_edge_list(4, &[(0, 1), (0, 2), (1, 2), (0, 3)]).unwrap()
    }

    #[test]
    fn wood_examples() {
        assert_eq!(wood_bound(4, 3, 3).unwrap(), r(4, 1));
        // 5 * C(3,3) / 3 and the other closed form 5/3 * C(2,2)
        assert_eq!(wood_bound(5, 2, 3).unwrap(), r(5, 3));
        for n in 0..6 {
            for d in 0..6 {
                assert_eq!(wood_bound(n, d, 1).unwrap(), r(n as i128, 1));
            }
        }
        assert!(wood_bound(3, 2, 0).is_err());
    }

    #[test]
    fn wood_closed_forms_agree() {
        // n/(d+1) C(d+1,t) == n/t C(d,t-1)
        for n in 1..8u64 {
            for d in 0..12u64 {
                for t in 1..=d + 2 {
                    let other = ExactRatio::from_parts(
                        n as u128 * binomial(d, t - 1).unwrap(),
                        t as u128,
                    )
                    .unwrap();
                    assert_eq!(wood_bound(n, d, t).unwrap(), other);
                }
            }
        }
    }

    #[test]
    fn wood_total_examples() {
        assert_eq!(wood_total_bound(3, 2).unwrap(), r(7, 1));
        assert_eq!(wood_total_bound(4, 3).unwrap(), r(15, 1));
        assert_eq!(wood_total_bound(1, 0).unwrap(), r(1, 1));
        assert!(wood_total_bound(1, 126).is_ok());
        assert!(wood_total_bound(2, 127).is_err());
    }

    #[test]
    fn edge_cap_examples() {
        assert_eq!(cc_path_bound(6, 4, 3).unwrap(), r(4, 1));
        assert_eq!(cc_path_bound(3, 3, 3).unwrap(), r(1, 1));
        for m in 0..10 {
            for rr in 2..8 {
                assert_eq!(cc_path_bound(m, rr, 2).unwrap(), r(m as i128, 1));
                assert_eq!(cc_cycle_bound(m, rr, 2).unwrap(), r(m as i128, 1));
            }
        }
        assert_eq!(cc_cycle_bound(6, 4, 3).unwrap(), r(4, 1));
        assert_eq!(cc_cycle_bound(12, 4, 3).unwrap(), r(8, 1));
        assert!(cc_path_bound(3, 1, 3).is_err());
        assert!(cc_path_bound(3, 3, 1).is_err());
    }

    #[test]
    fn local_vertex_examples() {
        assert_eq!(local_vertex_bound(&Graph::complete(4).unwrap(), 3).unwrap(), r(4, 1));
        assert_eq!(local_vertex_bound(&Graph::path(3).unwrap(), 3).unwrap(), r(1, 3));
        assert_eq!(local_vertex_bound(&paw(), 2).unwrap(), r(4, 1));
        assert_eq!(local_vertex_bound(&paw(), 3).unwrap(), r(5, 3));
    }

    #[test]
    fn local_vertex_total_examples() {
        assert_eq!(local_vertex_total_bound(&Graph::complete(3).unwrap()).unwrap(), r(7, 1));
        assert_eq!(local_vertex_total_bound(&Graph::empty(1).unwrap()).unwrap(), r(1, 1));
        // 3/2 + 7/3 + 3/2
        assert_eq!(local_vertex_total_bound(&Graph::path(3).unwrap()).unwrap(), r(16, 3));
        assert_eq!(local_vertex_total_bound(&Graph::empty(0).unwrap()).unwrap(), ExactRatio::ZERO);
    }

    #[test]
    fn local_edge_examples() {
        let k4 = Graph::complete(4).unwrap();
        let wk4 = all_weights(&k4, 20).unwrap();
        assert_eq!(local_edge_path_bound(&k4, &wk4, 3).unwrap(), r(4, 1));
        assert_eq!(local_edge_cycle_bound(&k4, &wk4, 3).unwrap(), r(4, 1));

        let p4 = Graph::path(4).unwrap();
        let wp4 = all_weights(&p4, 20).unwrap();
        assert_eq!(local_edge_path_bound(&p4, &wp4, 3).unwrap(), r(2, 1));
        assert_eq!(local_edge_cycle_bound(&p4, &wp4, 3).unwrap(), ExactRatio::ZERO);
        assert_eq!(local_edge_cycle_bound(&p4, &wp4, 2).unwrap(), r(3, 1));

        assert!(local_edge_path_bound(&p4, &wk4, 3).is_err());
        assert!(local_edge_path_bound(&p4, &wp4, 1).is_err());
    }

    #[test]
    fn dominance_examples() {
        let c5 = Graph::cycle(5).unwrap();
        let w = all_weights(&c5, 20).unwrap();
        let rec = compare_local_vs_classical(&c5, &w, 3).unwrap();
        assert_eq!(rec.vertex.local, r(5, 3));
        assert_eq!(rec.vertex.classical, r(5, 3));
        assert!(rec.holds());

        let paw = paw();
        let w = all_weights(&paw, 20).unwrap();
        let rec = compare_local_vs_classical(&paw, &w, 3).unwrap();
        assert_eq!(rec.vertex.local, r(5, 3));
        assert_eq!(rec.vertex.classical, r(4, 1));
        assert_eq!(rec.vertex.gap, r(7, 3));

        let k4 = Graph::complete(4).unwrap();
        let w = all_weights(&k4, 20).unwrap();
        let rec = compare_local_vs_classical(&k4, &w, 3).unwrap();
        assert!(rec.vertex.gap.is_zero());
        assert!(rec.edge.unwrap().gap.is_zero());

        let e = Graph::empty(3).unwrap();
        let w = all_weights(&e, 20).unwrap();
        assert!(compare_local_vs_classical(&e, &w, 2).unwrap().edge.is_none());
    }

    #[test]
    fn kind_names_round_trip() {
        for k in BoundKind::ALL {
            assert_eq!(k.name().parse::<BoundKind>().unwrap(), k);
            assert_eq!(serde_json::to_string(&k).unwrap(), format!("\"{}\"", k.name()));
        }
        assert!("nope".parse::<BoundKind>().is_err());
    }

    #[test]
    fn neighbourhood_binomial_identity() {
        // (1/t)C(d-1,t-1) = (1/t)C(d,t-1) - (1/d)C(d,t-1) + (1/(td))C(d,t-1)
        for d in 2..=40u64 {
            for t in 2..=d {
                let c = binomial(d, t - 1).unwrap() as i128;
                let (ti, di) = (t as i128, d as i128);
                let lhs = r(binomial(d - 1, t - 1).unwrap() as i128, ti);
                let rhs = r(c, ti)
                    .checked_sub(r(c, di))
                    .unwrap()
                    .checked_add(r(c, ti * di))
                    .unwrap();
                assert_eq!(lhs, rhs, "d={d}, t={t}");
            }
        }
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let mut edges = Vec::new();
                let mut k = 0;
                for j in 1..n {
                    for i in 0..j {
                        if bits[k] {
                            edges.push((i, j));
                        }
                        k += 1;
                    }
                }
                Graph::from_edge_list(n, &edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn order_two_collapses_to_edge_count(g in arb_graph(9)) {
            let w = all_weights(&g, 20).unwrap();
            let m = r(g.m() as i128, 1);
            prop_assert_eq!(local_vertex_bound(&g, 2).unwrap(), m);
            prop_assert_eq!(local_edge_path_bound(&g, &w, 2).unwrap(), m);
            prop_assert_eq!(local_edge_cycle_bound(&g, &w, 2).unwrap(), m);
            prop_assert_eq!(cc_path_bound(g.m() as u64, path_parameter(&w), 2).unwrap(), m);
        }

        #[test]
        fn totals_chain(g in arb_graph(9)) {
            let all = crate::cliques::count_all_cliques(&g);
            let local = local_vertex_total_bound(&g).unwrap();
            let classical = wood_total_bound(g.n() as u64, g.max_degree() as u64).unwrap();
            prop_assert!(local.cmp_integer(all).is_ge());
            prop_assert!(local <= classical);
        }

        #[test]
        fn dominance_always_holds(g in arb_graph(9), t in 2usize..8) {
            let w = all_weights(&g, 20).unwrap();
            prop_assert!(compare_local_vs_classical(&g, &w, t).unwrap().holds());
        }
    }
}
