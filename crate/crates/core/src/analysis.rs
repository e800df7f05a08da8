//! Per-graph evaluation: bound reports, cross-validation and findings.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bounds::{
    bound_value, compare_local_vs_classical, cycle_parameter, path_parameter, BoundKind,
    DominanceRecord,
};
use crate::cliques::{clique_total, count_all_cliques};
use crate::error::{Error, Result};
use crate::extremal::{
    cross_validate_with, cycle_clique_blocks_certificate, cycle_equality_certificate,
    degree_clique_union_certificate, edge_equality_certificate, path_clique_union_certificate,
    vertex_equality_certificate, CrossValidation,
    EqualityCertificate, IffCheck, Verdict,
};
use crate::graph::Graph;
use crate::graph6::{parse_graph6, write_graph6};
use crate::ratio::ExactRatio;
use crate::weights::{all_weights, WeightMap};

/// One bound evaluated on one graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub kind: BoundKind,
    /// `None` for the all-orders kinds.
    pub t: Option<usize>,
    pub count: u128,
    pub bound: ExactRatio,
    /// `bound - count`; negative means the bound is violated.
    pub slack: ExactRatio,
    pub equality: bool,
    pub certificate: Option<EqualityCertificate>,
}

impl BoundReport {
    pub fn violated(&self) -> bool {
        self.slack.is_negative()
    }
}

/// Every component of `g` is a clique; exact tightness condition for the
/// all-orders vertex bound.
pub fn clique_components_certificate(g: &Graph) -> EqualityCertificate {
    // At t = 1 the reduction keeps every vertex.
    vertex_equality_certificate(g, 1).expect("t = 1 is valid")
}

fn certificate_for(
    g: &Graph,
    w: &WeightMap,
    kind: BoundKind,
    t: usize,
) -> Result<Option<EqualityCertificate>> {
    Ok(Some(match kind {
        BoundKind::LocalVertex => vertex_equality_certificate(g, t)?,
        BoundKind::LocalVertexTotal => clique_components_certificate(g),
        BoundKind::LocalEdgePath => edge_equality_certificate(g, w, t)?,
        BoundKind::LocalEdgeCycleConjecture => cycle_equality_certificate(g, w, t)?,
        BoundKind::WoodClassical | BoundKind::WoodTotal => degree_clique_union_certificate(g),
        BoundKind::CcPathClassical => path_clique_union_certificate(g, path_parameter(w) as usize),
        BoundKind::CcCycleClassical => {
            cycle_clique_blocks_certificate(g, cycle_parameter(w) as usize)
        }
    }))
}

/// Evaluates `kind` at order `t` (ignored for all-orders kinds).
pub fn bound_report(g: &Graph, w: &WeightMap, kind: BoundKind, t: usize) -> Result<BoundReport> {
    let (count, t) = if kind.is_total() {
        (count_all_cliques(g), None)
    } else {
        if t < kind.min_order() {
            return Err(Error::InvalidParameter(format!(
                "{kind} needs t >= {}, got {t}",
                kind.min_order()
            )));
        }
        (clique_total(g, t), Some(t))
    };
    let bound = bound_value(g, w, kind, t.unwrap_or(1))?;
    let slack = bound.minus_integer(count)?;
    Ok(BoundReport {
        kind,
        t,
        count,
        bound,
        equality: slack.is_zero(),
        slack,
        certificate: certificate_for(g, w, kind, t.unwrap_or(1))?,
    })
}

/// Everything evaluated at one order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderReport {
    pub t: usize,
    pub count: u128,
    pub bounds: Vec<BoundReport>,
    pub cross_validation: CrossValidation,
    /// Absent for `t < 2`.
    pub dominance: Option<DominanceRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphReport {
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    pub weights: WeightMap,
    /// The all-orders kinds among those requested.
    pub totals: Vec<BoundReport>,
    pub orders: Vec<OrderReport>,
}

/// Full analysis of `g` for each order in `orders` and each requested kind.
/// Kinds undefined at an order are skipped there.
pub fn analyze_graph(
    g: &Graph,
    orders: &[usize],
    kinds: &[BoundKind],
    weight_cap: usize,
) -> Result<GraphReport> {
    let w = all_weights(g, weight_cap)?;
    analyze_with(g, &w, orders, kinds)
}

pub fn analyze_with(
    g: &Graph,
    w: &WeightMap,
    orders: &[usize],
    kinds: &[BoundKind],
) -> Result<GraphReport> {
    let totals = kinds
        .iter()
        .filter(|k| k.is_total())
        .map(|&k| bound_report(g, w, k, 1))
        .collect::<Result<_>>()?;
    let orders = orders
        .iter()
        .map(|&t| {
            let bounds = kinds
                .iter()
                .filter(|k| !k.is_total() && t >= k.min_order())
                .map(|&k| bound_report(g, w, k, t))
                .collect::<Result<_>>()?;
            Ok(OrderReport {
                t,
                count: clique_total(g, t),
                bounds,
                cross_validation: cross_validate_with(g, w, t)?,
                dominance: if t >= 2 {
                    Some(compare_local_vs_classical(g, w, t)?)
                } else {
                    None
                },
            })
        })
        .collect::<Result<_>>()?;
    Ok(GraphReport {
        graph6: write_graph6(g),
        n: g.n(),
        m: g.m(),
        weights: w.clone(),
        totals,
        orders,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Category {
    /// A proven bound exceeded: always an implementation defect.
    BoundViolation,
    ConjectureViolation,
    /// Tightness and its structural certificate disagree.
    CharDiscrepancy,
    EqualityInstance,
    /// Smallest positive slack seen for one `(n, t, kind)`.
    MinSlack,
}

impl Category {
    pub const ALL: [Category; 5] = [
        Category::BoundViolation,
        Category::ConjectureViolation,
        Category::CharDiscrepancy,
        Category::EqualityInstance,
        Category::MinSlack,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Category::BoundViolation => "BOUND_VIOLATION",
            Category::ConjectureViolation => "CONJECTURE_VIOLATION",
            Category::CharDiscrepancy => "CHAR_DISCREPANCY",
            Category::EqualityInstance => "EQUALITY_INSTANCE",
            Category::MinSlack => "MIN_SLACK",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Category {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let wanted = s.to_ascii_uppercase().replace('-', "_");
        Category::ALL
            .into_iter()
            .find(|c| c.name() == wanted)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown finding category `{s}`")))
    }
}

/// One reportable outcome, replayable from its graph6 witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub category: Category,
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    pub t: Option<usize>,
    pub kind: BoundKind,
    pub count: u128,
    pub bound: ExactRatio,
    pub slack: ExactRatio,
    pub equality: bool,
    /// For discrepancies, the two sides of the iff and the graph they were
    /// evaluated on; otherwise the certificate attached to the bound.
    pub certificate: Option<bool>,
    pub verdict: Option<Verdict>,
    pub checked_on: Option<String>,
}

impl Finding {
    pub fn from_report(category: Category, g: &Graph, r: &BoundReport) -> Self {
        Finding {
            category,
            graph6: write_graph6(g),
            n: g.n(),
            m: g.m(),
            t: r.t,
            kind: r.kind,
            count: r.count,
            bound: r.bound,
            slack: r.slack,
            equality: r.equality,
            certificate: r.certificate.as_ref().map(|c| c.holds),
            verdict: None,
            checked_on: None,
        }
    }

    fn discrepancy(g: &Graph, r: &BoundReport, check: &IffCheck) -> Self {
        Finding {
            equality: check.equality,
            certificate: Some(check.certificate),
            verdict: Some(check.verdict),
            checked_on: Some(check.graph.clone()),
            ..Finding::from_report(Category::CharDiscrepancy, g, r)
        }
    }

    /// Re-derives this finding from the witness alone; true iff the category
    /// and every recorded value reproduce.
    pub fn replay(&self, weight_cap: usize) -> Result<bool> {
        let g = parse_graph6(&self.graph6)?;
        let w = all_weights(&g, weight_cap)?;
        let t = self.t.unwrap_or(1);
        let report = bound_report(&g, &w, self.kind, t)?;
        let again = match self.category {
            Category::CharDiscrepancy => {
                let cv = cross_validate_with(&g, &w, t)?;
                iff_for(&cv, self.kind)
                    .filter(|c| c.verdict == Verdict::Discrepancy)
                    .map(|c| Finding::discrepancy(&g, &report, c))
            }
            Category::BoundViolation | Category::ConjectureViolation => {
                Some(Finding::from_report(violation_category(self.kind), &g, &report))
                    .filter(|f| f.slack.is_negative() && f.category == self.category)
            }
            Category::EqualityInstance => Some(Finding::from_report(self.category, &g, &report))
                .filter(|f| f.equality),
            Category::MinSlack => Some(Finding::from_report(self.category, &g, &report))
                .filter(|f| !f.slack.is_negative() && !f.slack.is_zero()),
        };
        Ok(again.as_ref() == Some(self))
    }
}

pub fn violation_category(kind: BoundKind) -> Category {
    if kind.is_conjecture() {
        Category::ConjectureViolation
    } else {
        Category::BoundViolation
    }
}

/// The iff check that belongs to a localized per-order kind.
pub fn iff_for(cv: &CrossValidation, kind: BoundKind) -> Option<&IffCheck> {
    match kind {
        BoundKind::LocalVertex => Some(&cv.vertex.reduced),
        BoundKind::LocalEdgePath => cv.edge.as_ref().map(|c| &c.reduced),
        BoundKind::LocalEdgeCycleConjecture => cv.cycle.as_ref().map(|c| &c.reduced),
        _ => None,
    }
}

/// Violation, discrepancy and equality findings for one analysed graph, in
/// a fixed order: totals first, then by order and kind.
pub fn findings_for(g: &Graph, report: &GraphReport) -> Vec<Finding> {
    let mut out = Vec::new();
    let push_bound = |r: &BoundReport, out: &mut Vec<Finding>| {
        if r.violated() {
            out.push(Finding::from_report(violation_category(r.kind), g, r));
        } else if r.equality {
            out.push(Finding::from_report(Category::EqualityInstance, g, r));
        }
    };
    for r in &report.totals {
        push_bound(r, &mut out);
    }
    for order in &report.orders {
        for r in &order.bounds {
            push_bound(r, &mut out);
            if let Some(check) = iff_for(&order.cross_validation, r.kind) {
                if check.verdict == Verdict::Discrepancy {
                    out.push(Finding::discrepancy(g, r, check));
                }
            }
        }
    }
    out
}
