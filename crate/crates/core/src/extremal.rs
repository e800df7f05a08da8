//! Structural certificates for bound tightness.
//!
//! Each localized bound has a structural condition under which it is tight:
//! clique components of `G[X]` for the degree-weighted bound, clique
//! components of `G \ Z` for the path-weighted bound, and a block forest on
//! `G \ W` for the cycle-weighted bound. The certificates here are computed
//! from structure alone, independently of the bound arithmetic, so that
//! [`cross_validate`] can test the tightness characterizations rather than
//! assume them.

use serde::{Deserialize, Serialize};

use crate::blocks::{block_decomposition, non_clique_block};
use crate::bounds::{
    local_edge_cycle_sum, local_edge_path_sum, local_vertex_sum, path_parameter,
};
use crate::cliques::clique_total;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexSet};
use crate::graph6::write_graph6;
use crate::weights::{all_weights, WeightMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    /// Components of `G[X]` are cliques, `X = {v : d(v) + 1 >= t}`.
    VertexCliqueComponents,
    /// Components of `G \ Z` are cliques, `Z = {e : p(e) + 1 < t}`.
    EdgeCliqueComponents,
    /// `G \ W` is a block forest, `W = {e : c(e) < t}`.
    CycleBlockForest,
    /// Disjoint union of copies of `K_{d+1}`, `d` the maximum degree.
    DegreeCliqueUnion,
    /// Disjoint union of copies of `K_r` plus isolated vertices.
    PathCliqueUnion,
    /// Block forest whose blocks are all `K_r`, plus isolated vertices.
    CycleCliqueBlocks,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EqualityCertificate {
    pub kind: CertificateKind,
    pub holds: bool,
    /// A non-clique component or block (original vertex ids); present iff `!holds`.
    pub evidence: Option<VertexSet>,
    /// The graph the condition was checked on, as graph6.
    pub reduced_graph: String,
}

impl EqualityCertificate {
    fn new(kind: CertificateKind, reduced: &Graph, evidence: Option<VertexSet>) -> Self {
        EqualityCertificate {
            kind,
            holds: evidence.is_none(),
            evidence,
            reduced_graph: write_graph6(reduced),
        }
    }
}

fn need_order(t: usize, min: usize) -> Result<()> {
    if t < min {
        Err(Error::InvalidParameter(format!("order t = {t} below minimum {min}")))
    } else {
        Ok(())
    }
}

/// Vertices with `d(v) >= t - 1`.
pub fn x_set(g: &Graph, t: usize) -> VertexSet {
    (0..g.n())
        .filter(|&v| g.degree(v) + 1 >= t)
        .collect()
}

/// Edges with `p(e) + 1 < t`; none of them lies in a `K_t`.
pub fn z_set(w: &WeightMap, t: usize) -> Vec<Edge> {
    w.edges
        .iter()
        .zip(&w.p)
        .filter(|&(_, &p)| p + 1 < t)
        .map(|(&e, _)| e)
        .collect()
}

/// Edges with `c(e) < t`; none of them lies in a `K_t`.
pub fn w_set(w: &WeightMap, t: usize) -> Vec<Edge> {
    w.edges
        .iter()
        .zip(&w.c)
        .filter(|&(_, &c)| c < t)
        .map(|(&e, _)| e)
        .collect()
}

/// `G[X]` with its relabelling map.
pub fn vertex_reduction(g: &Graph, t: usize) -> (Graph, Vec<usize>) {
    g.induced_subgraph(x_set(g, t))
        .expect("X is a subset of V(G)")
}

/// Repeats the `G[X]` reduction until every remaining vertex has degree at
/// least `t - 1` in the remaining graph (the `(t-1)`-core).
pub fn vertex_core(g: &Graph, t: usize) -> (Graph, Vec<usize>) {
    let mut keep = g.vertices();
    loop {
        let drop: VertexSet = keep
            .iter()
            .filter(|&v| g.neighbors(v).intersection(keep).len() + 1 < t)
            .collect();
        if drop.is_empty() {
            break;
        }
        keep = keep.difference(drop);
    }
    g.induced_subgraph(keep).expect("core is a subset of V(G)")
}

/// `G \ Z`.
pub fn edge_reduction(g: &Graph, w: &WeightMap, t: usize) -> Graph {
    g.delete_edges(&z_set(w, t)).expect("Z edges belong to G")
}

/// `G \ W`.
pub fn cycle_reduction(g: &Graph, w: &WeightMap, t: usize) -> Graph {
    g.delete_edges(&w_set(w, t)).expect("W edges belong to G")
}

fn first_non_clique_component(g: &Graph) -> Option<VertexSet> {
    g.connected_components()
        .into_iter()
        .find(|&c| !g.is_clique(c))
}

fn lift(set: VertexSet, map: &[usize]) -> VertexSet {
    set.iter().map(|v| map[v]).collect()
}

/// Every connected component of `G[X]` is a clique.
pub fn vertex_equality_certificate(g: &Graph, t: usize) -> Result<EqualityCertificate> {
    need_order(t, 1)?;
    let (reduced, map) = vertex_reduction(g, t);
    let evidence = first_non_clique_component(&reduced).map(|s| lift(s, &map));
    Ok(EqualityCertificate::new(
        CertificateKind::VertexCliqueComponents,
        &reduced,
        evidence,
    ))
}

/// Every connected component of `G \ Z` is a clique (isolated vertices count).
pub fn edge_equality_certificate(
    g: &Graph,
    w: &WeightMap,
    t: usize,
) -> Result<EqualityCertificate> {
    need_order(t, 2)?;
    let reduced = edge_reduction(g, w, t);
    let evidence = first_non_clique_component(&reduced);
    Ok(EqualityCertificate::new(
        CertificateKind::EdgeCliqueComponents,
        &reduced,
        evidence,
    ))
}

/// `G \ W` is a block forest.
pub fn cycle_equality_certificate(
    g: &Graph,
    w: &WeightMap,
    t: usize,
) -> Result<EqualityCertificate> {
    need_order(t, 2)?;
    let reduced = cycle_reduction(g, w, t);
    let evidence = non_clique_block(&reduced);
    Ok(EqualityCertificate::new(
        CertificateKind::CycleBlockForest,
        &reduced,
        evidence,
    ))
}

/// Every component is a `K_{d+1}` with `d` the maximum degree.
pub fn degree_clique_union_certificate(g: &Graph) -> EqualityCertificate {
    let order = g.max_degree() + 1;
    let evidence = g
        .connected_components()
        .into_iter()
        .find(|&c| c.len() != order || !g.is_clique(c));
    EqualityCertificate::new(CertificateKind::DegreeCliqueUnion, g, evidence)
}

/// Every component is a `K_r` or a single vertex.
pub fn path_clique_union_certificate(g: &Graph, r: usize) -> EqualityCertificate {
    let evidence = g
        .connected_components()
        .into_iter()
        .find(|&c| c.len() != 1 && (c.len() != r || !g.is_clique(c)));
    EqualityCertificate::new(CertificateKind::PathCliqueUnion, g, evidence)
}

/// Block forest in which every block is a `K_r`; isolated vertices allowed.
pub fn cycle_clique_blocks_certificate(g: &Graph, r: usize) -> EqualityCertificate {
    let d = block_decomposition(g);
    let evidence = (0..d.blocks.len())
        .map(|i| d.block_vertices(i))
        .find(|&b| b.len() != r || !g.is_clique(b));
    EqualityCertificate::new(CertificateKind::CycleCliqueBlocks, g, evidence)
}

/// Outcome of testing "bound is tight iff certificate holds" on one graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    BothHold,
    BothFail,
    #[serde(rename = "DISCREPANCY")]
    Discrepancy,
    /// The statement asserts tightness unconditionally at this order
    /// (`t = 1` for the vertex bound, `t = 2` for the edge bounds).
    Exempt,
}

impl Verdict {
    fn of(equality: bool, certificate: bool) -> Self {
        match (equality, certificate) {
            (true, true) => Verdict::BothHold,
            (false, false) => Verdict::BothFail,
            _ => Verdict::Discrepancy,
        }
    }
}

/// Tightness flag and certificate flag evaluated on the same graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IffCheck {
    pub equality: bool,
    pub certificate: bool,
    pub verdict: Verdict,
    /// graph6 of the graph both sides were evaluated on.
    pub graph: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremCheck {
    /// The comparison the verdict is based on.
    pub reduced: IffCheck,
    /// Tightness on `G` itself against the certificate on `G`'s reduction.
    /// Reported for the vertex bound only, where the two differ.
    pub unreduced: Option<IffCheck>,
}

impl TheoremCheck {
    pub fn verdict(&self) -> Verdict {
        self.reduced.verdict
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossValidation {
    pub t: usize,
    pub vertex: TheoremCheck,
    /// Absent for `t < 2`.
    pub edge: Option<TheoremCheck>,
    /// Absent for `t < 2`.
    pub cycle: Option<TheoremCheck>,
}

/// `t * N(G, K_t) == sum_v C(d(v), t - 1)`.
pub fn vertex_bound_tight(g: &Graph, t: usize) -> Result<bool> {
    Ok(clique_total(g, t) * t as u128 == local_vertex_sum(g, t)?)
}

/// `C(t, 2) * N(G, K_t) == sum_e C(p(e) - 1, t - 2)`.
pub fn edge_bound_tight(g: &Graph, w: &WeightMap, t: usize) -> Result<bool> {
    let pairs = (t * (t - 1) / 2) as u128;
    Ok(clique_total(g, t) * pairs == local_edge_path_sum(g, w, t)?)
}

/// `C(t, 2) * N(G, K_t) == sum_e C(c(e) - 2, t - 2)`.
pub fn cycle_bound_tight(g: &Graph, w: &WeightMap, t: usize) -> Result<bool> {
    let pairs = (t * (t - 1) / 2) as u128;
    Ok(clique_total(g, t) * pairs == local_edge_cycle_sum(g, w, t)?)
}

fn check(equality: bool, certificate: bool, graph: &Graph, exempt: bool) -> IffCheck {
    IffCheck {
        equality,
        certificate,
        verdict: if exempt {
            Verdict::Exempt
        } else {
            Verdict::of(equality, certificate)
        },
        graph: write_graph6(graph),
    }
}

fn vertex_check(g: &Graph, t: usize) -> Result<TheoremCheck> {
    let exempt = t == 1;
    let unreduced = check(
        vertex_bound_tight(g, t)?,
        vertex_equality_certificate(g, t)?.holds,
        g,
        exempt,
    );
    // Vertices of degree below t - 1 contribute to neither side; dropping
    // them repeatedly leaves a graph where every vertex can lie in a K_t.
    let (core, _) = vertex_core(g, t);
    let reduced = check(
        vertex_bound_tight(&core, t)?,
        vertex_equality_certificate(&core, t)?.holds,
        &core,
        exempt,
    );
    Ok(TheoremCheck {
        reduced,
        unreduced: Some(unreduced),
    })
}

/// Tightness of each localized bound against its certificate, at order `t`.
pub fn cross_validate_with(g: &Graph, w: &WeightMap, t: usize) -> Result<CrossValidation> {
    need_order(t, 1)?;
    let vertex = vertex_check(g, t)?;
    let (edge, cycle) = if t >= 2 {
        let exempt = t == 2;
        let edge = TheoremCheck {
            reduced: check(
                edge_bound_tight(g, w, t)?,
                edge_equality_certificate(g, w, t)?.holds,
                g,
                exempt,
            ),
            unreduced: None,
        };
        let cycle = TheoremCheck {
            reduced: check(
                cycle_bound_tight(g, w, t)?,
                cycle_equality_certificate(g, w, t)?.holds,
                g,
                exempt,
            ),
            unreduced: None,
        };
        (Some(edge), Some(cycle))
    } else {
        (None, None)
    };
    Ok(CrossValidation {
        t,
        vertex,
        edge,
        cycle,
    })
}

/// [`cross_validate_with`], computing weights under `cap`.
pub fn cross_validate(g: &Graph, t: usize, cap: usize) -> Result<CrossValidation> {
    let w = all_weights(g, cap)?;
    cross_validate_with(g, &w, t)
}

/// The certificate matching the classical path-length bound with `r` taken
/// from the weights.
pub fn path_clique_union_for(g: &Graph, w: &WeightMap) -> EqualityCertificate {
    path_clique_union_certificate(g, path_parameter(w) as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{local_vertex_bound, local_edge_path_bound};
    use crate::graph6::parse_graph6;

    const CAP: usize = 20;

    fn paw() -> Graph {
        Graph::from_edge_list(4, &[(0, 1), (0, 2), (1, 2), (0, 3)]).unwrap()
    }

    fn tree() -> Graph {
        Graph::from_edge_list(6, &[(0, 1), (0, 2), (2, 3), (2, 4), (4, 5)]).unwrap()
    }

    fn two_k4_sharing_vertex() -> Graph {
        let mut edges = Vec::new();
        for block in [[0, 1, 2, 3], [3, 4, 5, 6]] {
            for i in 0..4 {
                for j in (i + 1)..4 {
                    edges.push((block[i], block[j]));
                }
            }
        }
        Graph::from_edge_list(7, &edges).unwrap()
    }

    fn k4_k4() -> Graph {
        let k4 = Graph::complete(4).unwrap();
        k4.disjoint_union(&k4).unwrap()
    }

    #[test]
    fn x_set_examples() {
        assert_eq!(x_set(&Graph::star(3).unwrap(), 3), VertexSet::singleton(0));
        assert_eq!(x_set(&Graph::complete(4).unwrap(), 3), VertexSet::full(4));
        assert_eq!(x_set(&paw(), 1), VertexSet::full(4));
        assert_eq!(x_set(&Graph::empty(3).unwrap(), 1), VertexSet::full(3));
    }

    #[test]
    fn z_and_w_examples() {
        let p4 = Graph::path(4).unwrap();
        let w = all_weights(&p4, CAP).unwrap();
        assert_eq!(z_set(&w, 5), p4.edges());
        assert!(z_set(&w, 4).is_empty());

        let k4 = Graph::complete(4).unwrap();
        let w = all_weights(&k4, CAP).unwrap();
        assert!(z_set(&w, 3).is_empty());
        assert!(w_set(&w, 3).is_empty());

        let t = tree();
        let w = all_weights(&t, CAP).unwrap();
        assert_eq!(w_set(&w, 3), t.edges());
    }

    #[test]
    fn vertex_certificate_examples() {
        let cert = vertex_equality_certificate(&k4_k4(), 3).unwrap();
        assert!(cert.holds);
        assert_eq!(cert.evidence, None);

        let p3 = Graph::path(3).unwrap();
        let cert = vertex_equality_certificate(&p3, 3).unwrap();
        assert!(cert.holds);
        assert_eq!(parse_graph6(&cert.reduced_graph).unwrap().n(), 1);

        let c5 = Graph::cycle(5).unwrap();
        let cert = vertex_equality_certificate(&c5, 3).unwrap();
        assert!(!cert.holds);
        assert_eq!(cert.evidence, Some(VertexSet::full(5)));
    }

    #[test]
    fn vertex_certificate_evidence_uses_original_ids() {
        // leaf 0 hangs off vertex 1 of the path 1-2-3, whose ends carry extra leaves
        let g = Graph::from_edge_list(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (1, 5)]).unwrap();
        let cert = vertex_equality_certificate(&g, 3).unwrap();
        assert!(!cert.holds);
        assert_eq!(cert.evidence.unwrap().to_vec(), vec![1, 2, 3]);
    }

    #[test]
    fn edge_certificate_examples() {
        let g = Graph::complete(4)
            .unwrap()
            .disjoint_union(&Graph::empty(2).unwrap())
            .unwrap();
        let w = all_weights(&g, CAP).unwrap();
        assert!(edge_equality_certificate(&g, &w, 3).unwrap().holds);

        let paw = paw();
        let w = all_weights(&paw, CAP).unwrap();
        let cert = edge_equality_certificate(&paw, &w, 3).unwrap();
        assert!(!cert.holds);
        assert_eq!(cert.evidence, Some(VertexSet::full(4)));

        let p4 = Graph::path(4).unwrap();
        let w = all_weights(&p4, CAP).unwrap();
        let cert = edge_equality_certificate(&p4, &w, 5).unwrap();
        assert!(cert.holds);
        assert_eq!(parse_graph6(&cert.reduced_graph).unwrap().m(), 0);
    }

    #[test]
    fn cycle_certificate_examples() {
        let g = two_k4_sharing_vertex();
        let w = all_weights(&g, CAP).unwrap();
        assert!(cycle_equality_certificate(&g, &w, 3).unwrap().holds);

        let c4 = Graph::cycle(4).unwrap();
        let w = all_weights(&c4, CAP).unwrap();
        assert!(w_set(&w, 3).is_empty());
        let cert = cycle_equality_certificate(&c4, &w, 3).unwrap();
        assert!(!cert.holds);
        assert_eq!(cert.evidence, Some(VertexSet::full(4)));

        let t = tree();
        let w = all_weights(&t, CAP).unwrap();
        assert!(cycle_equality_certificate(&t, &w, 3).unwrap().holds);
    }

    #[test]
    fn classical_structure_certificates() {
        assert!(degree_clique_union_certificate(&k4_k4()).holds);
        assert!(!degree_clique_union_certificate(&Graph::cycle(5).unwrap()).holds);
        let k4_k3 = Graph::complete(4).unwrap().disjoint_union(&Graph::complete(3).unwrap()).unwrap();
        assert!(!degree_clique_union_certificate(&k4_k3).holds);

        let g = Graph::complete(4).unwrap().disjoint_union(&Graph::empty(2).unwrap()).unwrap();
        assert!(path_clique_union_certificate(&g, 4).holds);
        assert!(!path_clique_union_certificate(&k4_k3, 4).holds);

        assert!(cycle_clique_blocks_certificate(&two_k4_sharing_vertex(), 4).holds);
        assert!(!cycle_clique_blocks_certificate(&paw(), 3).holds);
    }

    #[test]
    fn vertex_core_peels_repeatedly() {
        // triangle 0-1-2 with the path 2-3-4 hanging off it
        let g = Graph::from_edge_list(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4)]).unwrap();
        let (single, _) = vertex_reduction(&g, 3);
        assert_eq!(single.n(), 4);
        let (core, map) = vertex_core(&g, 3);
        assert_eq!(core, Graph::complete(3).unwrap());
        assert_eq!(map, vec![0, 1, 2]);
    }

    #[test]
    fn cross_validation_examples() {
        let k4 = Graph::complete(4).unwrap();
        let cv = cross_validate(&k4, 3, CAP).unwrap();
        assert_eq!(cv.vertex.verdict(), Verdict::BothHold);
        assert_eq!(cv.edge.as_ref().unwrap().verdict(), Verdict::BothHold);
        assert_eq!(cv.cycle.as_ref().unwrap().verdict(), Verdict::BothHold);

        let p3 = Graph::path(3).unwrap();
        let cv = cross_validate(&p3, 2, CAP).unwrap();
        assert!(cv.vertex.reduced.equality);
        assert!(!cv.vertex.reduced.certificate);
        assert_eq!(cv.vertex.verdict(), Verdict::Discrepancy);
        assert_eq!(cv.edge.unwrap().verdict(), Verdict::Exempt);

        let c5 = Graph::cycle(5).unwrap();
        let cv = cross_validate(&c5, 3, CAP).unwrap();
        assert_eq!(cv.vertex.verdict(), Verdict::BothFail);
        assert_eq!(cv.edge.unwrap().verdict(), Verdict::BothFail);

        let cv = cross_validate(&p3, 1, CAP).unwrap();
        assert_eq!(cv.vertex.verdict(), Verdict::Exempt);
        assert!(cv.edge.is_none());
    }

    #[test]
    fn p3_order_three_reduction() {
        // Unreduced: certificate on G[X] holds (a single vertex) but 0 < 1/3.
        let p3 = Graph::path(3).unwrap();
        let cv = cross_validate(&p3, 3, CAP).unwrap();
        let unreduced = cv.vertex.unreduced.as_ref().unwrap();
        assert!(!unreduced.equality);
        assert!(unreduced.certificate);
        assert_eq!(unreduced.verdict, Verdict::Discrepancy);
        // Reduced: the core is empty, both sides are 0.
        assert_eq!(cv.vertex.verdict(), Verdict::BothHold);
    }

    #[test]
    fn irrelevant_vertices_and_edges_contribute_nothing() {
        let g = Graph::from_edge_list(
            7,
            &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (4, 5), (4, 6), (5, 6), (0, 3)],
        )
        .unwrap();
        let w = all_weights(&g, CAP).unwrap();
        for t in 1..=g.n() {
            let x = x_set(&g, t);
            let (gx, _) = vertex_reduction(&g, t);
            assert_eq!(clique_total(&g, t), clique_total(&gx, t));
            let outside: u128 = (0..g.n())
                .filter(|&v| !x.contains(v))
                .map(|v| crate::binom::choose(g.degree(v) as i64, t as i64 - 1).unwrap())
                .sum();
            assert_eq!(outside, 0);
            assert!(local_vertex_bound(&g, t).is_ok());
        }
        for t in 2..=g.n() {
            let gz = edge_reduction(&g, &w, t);
            assert_eq!(clique_total(&g, t), clique_total(&gz, t));
            let z = z_set(&w, t);
            let dropped: u128 = z
                .iter()
                .map(|&e| crate::binom::choose(w.p_of(e).unwrap() as i64 - 1, t as i64 - 2).unwrap())
                .sum();
            assert_eq!(dropped, 0);
            assert!(local_edge_path_bound(&g, &w, t).is_ok());
        }
    }
}
