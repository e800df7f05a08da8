//! Graph streams and the verification sweep.
//!
//! Graphs are loaded up front, analysed on a rayon pool of the configured
//! width in fixed-size chunks, and merged on one thread in stream order, so
//! the findings and summary do not depend on the pool width.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::File;
use std::io::{self, BufRead, BufReader};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{analyze_with, findings_for, BoundReport, Category, Finding};
use crate::bounds::BoundKind;
use crate::enumerate::{enumerate_graphs, random_graphs, RandomModel};
use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};
use crate::graph6::{parse_graph6, write_graph6};
use crate::ratio::ExactRatio;
use crate::weights::{all_weights, DEFAULT_EXACT_CAP};

/// Default per-`(n, t)` limit on emitted equality instances.
pub const DEFAULT_EQUALITY_CAP: usize = 100;

#[derive(Clone, Debug, PartialEq)]
pub enum SourceKind {
    /// Every isomorphism class for each order in `min_n..=max_n`.
    Exhaustive { min_n: usize, max_n: usize },
    /// One graph6 string per line; `-` reads standard input.
    Graph6File(PathBuf),
    /// `count` graphs from one seeded stream.
    Random {
        model: RandomModel,
        n: usize,
        count: usize,
        seed: u64,
    },
    Graphs(Vec<Graph>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct GraphSource {
    pub kind: SourceKind,
    pub connected_only: bool,
    pub max_edges: Option<usize>,
}

impl GraphSource {
    pub fn new(kind: SourceKind) -> Self {
        GraphSource {
            kind,
            connected_only: false,
            max_edges: None,
        }
    }

    pub fn exhaustive(min_n: usize, max_n: usize) -> Self {
        GraphSource::new(SourceKind::Exhaustive { min_n, max_n })
    }

    pub fn graphs(graphs: Vec<Graph>) -> Self {
        GraphSource::new(SourceKind::Graphs(graphs))
    }

    pub fn connected_only(mut self, yes: bool) -> Self {
        self.connected_only = yes;
        self
    }

    pub fn max_edges(mut self, m: Option<usize>) -> Self {
        self.max_edges = m;
        self
    }

    fn keep(&self, g: &Graph) -> bool {
        (!self.connected_only || g.is_connected()) && self.max_edges.is_none_or(|m| g.m() <= m)
    }

    /// Materializes the stream; returns the kept graphs and the number filtered out.
    pub fn load(&self) -> Result<(Vec<Graph>, usize)> {
        let all = match &self.kind {
            SourceKind::Exhaustive { min_n, max_n } => {
                let mut out = Vec::new();
                for n in *min_n..=*max_n {
                    out.extend(enumerate_graphs(n)?);
                }
                out
            }
            SourceKind::Graph6File(path) => read_graph6_path(path)?,
            SourceKind::Random {
                model,
                n,
                count,
                seed,
            } => random_graphs(*model, *n, *count, *seed)?,
            SourceKind::Graphs(graphs) => graphs.clone(),
        };
        let total = all.len();
        let kept: Vec<Graph> = all.into_iter().filter(|g| self.keep(g)).collect();
        let dropped = total - kept.len();
        Ok((kept, dropped))
    }
}

/// Reads graph6 lines, skipping blank lines. Errors name the 1-based line.
pub fn read_graph6_stream<R: BufRead>(reader: R) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for (i, text) in reader.lines().enumerate() {
        let line = i + 1;
        let text = text.map_err(|e| Error::Line {
            line,
            error: Box::new(Error::Io {
                path: "input".into(),
                reason: e.to_string(),
            }),
        })?;
        if text.trim().is_empty() {
            continue;
        }
        let g = parse_graph6(text.trim()).map_err(|e| Error::Line {
            line,
            error: Box::new(e),
        })?;
        out.push(g);
    }
    Ok(out)
}

/// [`read_graph6_stream`] on a file, or standard input for `-`.
pub fn read_graph6_path(path: &Path) -> Result<Vec<Graph>> {
    if path.as_os_str() == "-" {
        return read_graph6_stream(io::stdin().lock());
    }
    let file = File::open(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        reason: e.to_string(),
    })?;
    read_graph6_stream(BufReader::new(file))
}

/// Which orders `t` to evaluate on each graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderRange {
    /// `2..=Δ(G)+1`; larger orders make both sides vanish.
    Auto,
    /// `1..=n` for each graph.
    AllOrders,
    Fixed { lo: usize, hi: usize },
}

impl OrderRange {
    pub fn fixed(lo: usize, hi: usize) -> Result<Self> {
        if lo < 1 || lo > hi || hi > MAX_VERTICES {
            return Err(Error::InvalidParameter(format!(
                "order range {lo}..={hi} must satisfy 1 <= lo <= hi <= {MAX_VERTICES}"
            )));
        }
        Ok(OrderRange::Fixed { lo, hi })
    }

    pub fn orders(&self, g: &Graph) -> Vec<usize> {
        match *self {
            OrderRange::Auto => (2..=g.max_degree() + 1).collect(),
            OrderRange::AllOrders => (1..=g.n()).collect(),
            OrderRange::Fixed { lo, hi } => (lo..=hi).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub orders: OrderRange,
    pub kinds: Vec<BoundKind>,
    pub parallelism: usize,
    pub weight_cap: usize,
    /// Equality instances emitted per `(n, t)`; `None` for no limit.
    pub equality_cap: Option<usize>,
    /// Stop after the first graph that violates a bound or the conjecture.
    pub stop_on_first: bool,
    /// Keep one row per evaluated bound for the slack table.
    pub collect_rows: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            orders: OrderRange::Auto,
            kinds: BoundKind::LOCALIZED.to_vec(),
            parallelism: 1,
            weight_cap: DEFAULT_EXACT_CAP,
            equality_cap: Some(DEFAULT_EQUALITY_CAP),
            stop_on_first: false,
            collect_rows: false,
        }
    }
}

/// One line of the slack table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SlackRow {
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    pub t: Option<usize>,
    pub kind: BoundKind,
    pub count: u128,
    pub bound_num: i128,
    pub bound_den: i128,
    pub equality: bool,
    pub certificate: Option<bool>,
}

impl SlackRow {
    pub fn new(g: &Graph, graph6: &str, r: &BoundReport) -> Self {
        SlackRow {
            graph6: graph6.to_string(),
            n: g.n(),
            m: g.m(),
            t: r.t,
            kind: r.kind,
            count: r.count,
            bound_num: r.bound.num(),
            bound_den: r.bound.den(),
            equality: r.equality,
            certificate: r.certificate.as_ref().map(|c| c.holds),
        }
    }
}

/// Aggregates for one `(n, t, kind)` cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellSummary {
    pub n: usize,
    pub t: Option<usize>,
    pub kind: BoundKind,
    pub evaluated: usize,
    pub equality_instances: usize,
    pub violations: usize,
    pub discrepancies: usize,
    pub min_positive_slack: Option<ExactRatio>,
    pub min_slack_witness: Option<String>,
}

/// A graph the sweep could not analyse, e.g. over the weight cap.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphError {
    pub index: usize,
    pub graph6: String,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub graphs_loaded: usize,
    pub filtered_out: usize,
    pub graphs_analysed: usize,
    pub errors: Vec<GraphError>,
    pub findings: BTreeMap<Category, usize>,
    pub equality_instances_suppressed: usize,
    pub dominance_checks: usize,
    pub dominance_breaches: usize,
    pub dominance_breach_witnesses: Vec<String>,
    pub stopped_early: bool,
    pub cells: Vec<CellSummary>,
}

impl SweepSummary {
    pub fn count(&self, c: Category) -> usize {
        self.findings.get(&c).copied().unwrap_or(0)
    }

    /// A proven bound was exceeded or a localized bound exceeded its
    /// classical counterpart: either means a defect, not a discovery.
    pub fn internal_breach(&self) -> bool {
        self.count(Category::BoundViolation) > 0 || self.dominance_breaches > 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepOutput {
    pub findings: Vec<Finding>,
    pub summary: SweepSummary,
    pub rows: Vec<SlackRow>,
}

struct Analysed {
    reports: Vec<BoundReport>,
    findings: Vec<Finding>,
    dominance_checks: usize,
    dominance_breaches: usize,
}

fn analyse_one(g: &Graph, config: &SearchConfig) -> Result<Analysed> {
    let w = all_weights(g, config.weight_cap)?;
    let report = analyze_with(g, &w, &config.orders.orders(g), &config.kinds)?;
    let findings = findings_for(g, &report);
    let dominance: Vec<bool> = report
        .orders
        .iter()
        .filter_map(|o| o.dominance.as_ref().map(|d| d.holds()))
        .collect();
    let mut reports = report.totals;
    reports.extend(report.orders.into_iter().flat_map(|o| o.bounds));
    Ok(Analysed {
        reports,
        findings,
        dominance_checks: dominance.len(),
        dominance_breaches: dominance.iter().filter(|&&ok| !ok).count(),
    })
}

struct Merger<'a> {
    config: &'a SearchConfig,
    summary: SweepSummary,
    findings: Vec<Finding>,
    rows: Vec<SlackRow>,
    cells: BTreeMap<(usize, Option<usize>, BoundKind), CellSummary>,
    min_slack: BTreeMap<(usize, Option<usize>, BoundKind), Finding>,
    equality_emitted: BTreeMap<(usize, Option<usize>), usize>,
    breach_witnesses: BTreeSet<String>,
}

impl Merger<'_> {
    fn cell(&mut self, n: usize, r: &BoundReport) -> &mut CellSummary {
        self.cells
            .entry((n, r.t, r.kind))
            .or_insert_with(|| CellSummary {
                n,
                t: r.t,
                kind: r.kind,
                evaluated: 0,
                equality_instances: 0,
                violations: 0,
                discrepancies: 0,
                min_positive_slack: None,
                min_slack_witness: None,
            })
    }

    /// Returns true when the sweep should stop.
    fn absorb(&mut self, index: usize, g: &Graph, outcome: Result<Analysed>) -> bool {
        let graph6 = write_graph6(g);
        let a = match outcome {
            Ok(a) => a,
            Err(e) => {
                self.summary.errors.push(GraphError {
                    index,
                    graph6,
                    message: e.to_string(),
                });
                return false;
            }
        };
        self.summary.graphs_analysed += 1;
        self.summary.dominance_checks += a.dominance_checks;
        self.summary.dominance_breaches += a.dominance_breaches;
        if a.dominance_breaches > 0 {
            self.breach_witnesses.insert(graph6.clone());
        }
        let n = g.n();
        for r in &a.reports {
            if self.config.collect_rows {
                self.rows.push(SlackRow::new(g, &graph6, r));
            }
            let cell = self.cell(n, r);
            cell.evaluated += 1;
            if r.equality {
                cell.equality_instances += 1;
            }
            if r.violated() {
                cell.violations += 1;
            }
            let positive = !r.violated() && !r.equality;
            if positive && cell.min_positive_slack.is_none_or(|s| r.slack < s) {
                cell.min_positive_slack = Some(r.slack);
                cell.min_slack_witness = Some(graph6.clone());
                self.min_slack.insert(
                    (n, r.t, r.kind),
                    Finding::from_report(Category::MinSlack, g, r),
                );
            }
        }
        let mut stop = false;
        for f in a.findings {
            match f.category {
                Category::CharDiscrepancy => {
                    if let Some(c) = self.cells.get_mut(&(n, f.t, f.kind)) {
                        c.discrepancies += 1;
                    }
                }
                Category::EqualityInstance => {
                    let emitted = self.equality_emitted.entry((n, f.t)).or_insert(0);
                    if self.config.equality_cap.is_some_and(|cap| *emitted >= cap) {
                        self.summary.equality_instances_suppressed += 1;
                        continue;
                    }
                    *emitted += 1;
                }
                Category::BoundViolation | Category::ConjectureViolation => {
                    stop |= self.config.stop_on_first;
                }
                Category::MinSlack => {}
            }
            *self.summary.findings.entry(f.category).or_insert(0) += 1;
            self.findings.push(f);
        }
        stop
    }

    fn finish(mut self) -> SweepOutput {
        for (_, f) in std::mem::take(&mut self.min_slack) {
            *self.summary.findings.entry(Category::MinSlack).or_insert(0) += 1;
            self.findings.push(f);
        }
        self.summary.cells = self.cells.into_values().collect();
        self.summary.dominance_breach_witnesses = self.breach_witnesses.into_iter().collect();
        SweepOutput {
            findings: self.findings,
            summary: self.summary,
            rows: self.rows,
        }
    }
}

/// Evaluates every graph of `source` under `config`.
pub fn run_sweep(source: &GraphSource, config: &SearchConfig) -> Result<SweepOutput> {
    if config.parallelism == 0 {
        return Err(Error::InvalidParameter("parallelism must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.parallelism)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("cannot build worker pool: {e}")))?;
    pool.install(|| {
        let (graphs, filtered_out) = source.load()?;
        let mut merger = Merger {
            config,
            summary: SweepSummary {
                graphs_loaded: graphs.len() + filtered_out,
                filtered_out,
                ..SweepSummary::default()
            },
            findings: Vec::new(),
            rows: Vec::new(),
            cells: BTreeMap::new(),
            min_slack: BTreeMap::new(),
            equality_emitted: BTreeMap::new(),
            breach_witnesses: BTreeSet::new(),
        };
        let chunk = 64 * config.parallelism;
        'chunks: for (c, batch) in graphs.chunks(chunk).enumerate() {
            let outcomes: Vec<Result<Analysed>> =
                batch.par_iter().map(|g| analyse_one(g, config)).collect();
            for (i, (g, outcome)) in batch.iter().zip(outcomes).enumerate() {
                if merger.absorb(c * chunk + i, g, outcome) {
                    merger.summary.stopped_early = true;
                    break 'chunks;
                }
            }
        }
        Ok(merger.finish())
    })
}

/// Findings as JSON lines.
pub fn findings_to_jsonl(findings: &[Finding]) -> String {
    findings
        .iter()
        .map(|f| serde_json::to_string(f).expect("findings serialize") + "\n")
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    #[test]
    fn graph6_stream_reports_line() {
        let text = "C~\n\nBw\n!!\n";
        match read_graph6_stream(Cursor::new(text)) {
            Err(Error::Line { line, .. }) => assert_eq!(line, 4),
            other => panic!("{other:?}"),
        }
        let ok = read_graph6_stream(Cursor::new("C~\n\nBw\n")).unwrap();
        assert_eq!(ok.len(), 2);
    }

    #[test]
    fn filters() {
        let source = GraphSource::exhaustive(4, 4).connected_only(true);
        let (graphs, dropped) = source.load().unwrap();
        assert_eq!((graphs.len(), dropped), (6, 5));
        let (graphs, _) = GraphSource::exhaustive(4, 4).max_edges(Some(2)).load().unwrap();
        assert_eq!(graphs.len(), 4);
    }

    #[test]
    fn order_ranges() {
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(OrderRange::Auto.orders(&k4), vec![2, 3, 4]);
        assert_eq!(OrderRange::AllOrders.orders(&k4), vec![1, 2, 3, 4]);
        assert_eq!(OrderRange::fixed(3, 3).unwrap().orders(&k4), vec![3]);
        assert!(OrderRange::fixed(0, 3).is_err());
        assert!(OrderRange::fixed(4, 3).is_err());
        assert!(OrderRange::Auto.orders(&Graph::empty(3).unwrap()).is_empty());
    }

    #[test]
    fn k4_equality_rows() {
        let source = GraphSource::graphs(vec![Graph::complete(4).unwrap()]);
        let config = SearchConfig {
            orders: OrderRange::fixed(3, 3).unwrap(),
            ..SearchConfig::default()
        };
        let out = run_sweep(&source, &config).unwrap();
        let eq: Vec<_> = out
            .findings
            .iter()
            .filter(|f| f.category == Category::EqualityInstance)
            .collect();
        assert_eq!(eq.len(), 4);
        assert_eq!(out.summary.count(Category::MinSlack), 0);
    }

    #[test]
    fn small_sweep_is_width_independent() {
        let source = GraphSource::exhaustive(1, 5);
        let run = |width| {
            let config = SearchConfig {
                parallelism: width,
                collect_rows: true,
                ..SearchConfig::default()
            };
            let out = run_sweep(&source, &config).unwrap();
            (
                findings_to_jsonl(&out.findings),
                serde_json::to_string(&out.summary).unwrap(),
                out.rows,
            )
        };
        assert_eq!(run(1), run(4));
    }

    #[test]
    fn vertex_discrepancy_at_two_starts_with_p3() {
        let config = SearchConfig {
            orders: OrderRange::fixed(2, 2).unwrap(),
            kinds: vec![BoundKind::LocalVertex, BoundKind::LocalEdgePath],
            ..SearchConfig::default()
        };
        let out = run_sweep(&GraphSource::exhaustive(1, 5), &config).unwrap();
        let disc: Vec<_> = out
            .findings
            .iter()
            .filter(|f| f.category == Category::CharDiscrepancy)
            .collect();
        assert!(!disc.is_empty());
        assert!(disc.iter().all(|f| f.kind == BoundKind::LocalVertex));
        let smallest = disc.iter().min_by_key(|f| (f.n, f.m)).unwrap();
        let witness = parse_graph6(&smallest.graph6).unwrap();
        assert_eq!(
            crate::enumerate::canonical_form(&witness).unwrap(),
            crate::enumerate::canonical_form(&Graph::path(3).unwrap()).unwrap()
        );
    }

    #[test]
    fn cap_errors_are_recorded() {
        let source = GraphSource::graphs(vec![Graph::path(4).unwrap(), Graph::path(6).unwrap()]);
        let config = SearchConfig {
            weight_cap: 5,
            ..SearchConfig::default()
        };
        let out = run_sweep(&source, &config).unwrap();
        assert_eq!(out.summary.graphs_analysed, 1);
        assert_eq!(out.summary.errors.len(), 1);
        assert_eq!(out.summary.errors[0].index, 1);
    }

    #[test]
    fn equality_cap_suppresses() {
        let config = SearchConfig {
            equality_cap: Some(1),
            ..SearchConfig::default()
        };
        let out = run_sweep(&GraphSource::exhaustive(3, 4), &config).unwrap();
        assert!(out.summary.equality_instances_suppressed > 0);
        let mut per: BTreeMap<(usize, Option<usize>), usize> = BTreeMap::new();
        for f in out.findings.iter().filter(|f| f.category == Category::EqualityInstance) {
            *per.entry((f.n, f.t)).or_default() += 1;
        }
        assert!(per.values().all(|&c| c == 1));
    }
}
