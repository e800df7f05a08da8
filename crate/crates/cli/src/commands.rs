use std::fs::{self, File};
use std::io::{self, BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Serialize;

use cliquebound::analysis::{analyze_graph, Category};
use cliquebound::cliques::clique_total;
use cliquebound::enumerate::{enumerate_graphs, random_graph};
use cliquebound::graph6::{parse_graph6, write_graph6};
use cliquebound::oracle::{naive_clique_count, subset_dp_weights};
use cliquebound::search::{
    findings_to_jsonl, run_sweep, GraphSource, OrderRange, SearchConfig, SlackRow, SourceKind,
    SweepOutput,
};
use cliquebound::weights::{all_weights, DEFAULT_EXACT_CAP};
use cliquebound::Graph;

use crate::args::{
    AnalyzeArgs, EnumerateArgs, GraphArgs, InputFormat, OracleArgs, OracleMode, OrderArgs, Output,
    SweepArgs,
};
use crate::render;

/// Exit codes.
pub const CLEAN: u8 = 0;
pub const FINDINGS: u8 = 1;
pub const USAGE: u8 = 2;
pub const BREACH: u8 = 3;

fn read_source(path: &Path) -> Result<Box<dyn BufRead>> {
    if path.as_os_str() == "-" {
        Ok(Box::new(BufReader::new(io::stdin())))
    } else {
        let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
        Ok(Box::new(BufReader::new(file)))
    }
}

fn load_graph(args: &GraphArgs) -> Result<Graph> {
    if let Some(text) = &args.graph6 {
        return Ok(parse_graph6(text)?);
    }
    if let Some(model) = args.random {
        let n = args.n.expect("clap requires --n with --random");
        return Ok(random_graph(model, n, args.seed)?);
    }
    let Some(path) = &args.input else {
        bail!("give a graph with --graph6, --input or --random");
    };
    let mut reader = read_source(path)?;
    match args.format {
        InputFormat::EdgeList => Ok(Graph::read_edge_list(reader)?),
        InputFormat::Graph6 => {
            let mut text = String::new();
            reader.read_to_string(&mut text)?;
            let mut lines = text.lines().filter(|l| !l.trim().is_empty());
            let first = lines.next().context("input holds no graph")?;
            if lines.next().is_some() {
                bail!("expected one graph; use `verify` for streams");
            }
            Ok(parse_graph6(first.trim())?)
        }
    }
}

fn order_range(args: &OrderArgs) -> Result<OrderRange> {
    Ok(match (args.orders, args.all_orders) {
        (Some((lo, hi)), _) => OrderRange::fixed(lo, hi)?,
        (None, true) => OrderRange::AllOrders,
        (None, false) => OrderRange::Auto,
    })
}

fn write_csv<W: Write>(rows: &[SlackRow], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for row in rows {
        out.serialize(row)?;
    }
    out.flush()?;
    Ok(())
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    let file = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    Ok(BufWriter::new(file))
}

pub fn analyze(args: &AnalyzeArgs) -> Result<u8> {
    let g = load_graph(&args.graph)?;
    let orders = order_range(&args.orders)?.orders(&g);
    let report = analyze_graph(&g, &orders, &args.kinds.0, args.weight_cap)?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match args.output {
        Output::Human => write!(out, "{}", render::graph_report(&report))?,
        Output::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?,
        Output::Csv => {
            let rows: Vec<SlackRow> = report
                .totals
                .iter()
                .chain(report.orders.iter().flat_map(|o| &o.bounds))
                .map(|b| SlackRow::new(&g, &report.graph6, b))
                .collect();
            write_csv(&rows, &mut out)?;
        }
    }
    let violated = report
        .totals
        .iter()
        .chain(report.orders.iter().flat_map(|o| &o.bounds))
        .any(|b| b.violated() && !b.kind.is_conjecture());
    let dominance_breach = report
        .orders
        .iter()
        .any(|o| o.dominance.as_ref().is_some_and(|d| !d.holds()));
    Ok(if violated || dominance_breach { BREACH } else { CLEAN })
}

fn sweep_source(args: &SweepArgs) -> Result<GraphSource> {
    let s = &args.source;
    let kind = if let Some(path) = &s.input {
        SourceKind::Graph6File(path.clone())
    } else if let Some((lo, hi)) = s.exhaustive {
        SourceKind::Exhaustive { min_n: lo, max_n: hi }
    } else if let Some(model) = s.random {
        let Some(n) = args.n else {
            bail!("--random needs --n");
        };
        SourceKind::Random {
            model,
            n,
            count: args.count,
            seed: args.seed,
        }
    } else {
        bail!("give a source: --input, --exhaustive or --random");
    };
    Ok(GraphSource::new(kind)
        .connected_only(args.connected_only)
        .max_edges(args.max_edges))
}

fn default_parallelism() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn run(args: &SweepArgs) -> Result<SweepOutput> {
    let config = SearchConfig {
        orders: order_range(&args.orders)?,
        kinds: args.kinds.0.clone(),
        parallelism: args.parallelism.unwrap_or_else(default_parallelism),
        weight_cap: args.weight_cap,
        equality_cap: (!args.all_equalities).then_some(args.equality_cap),
        stop_on_first: args.stop_on_first,
        collect_rows: args.csv.is_some() || args.output == Output::Csv,
    };
    Ok(run_sweep(&sweep_source(args)?, &config)?)
}

pub fn sweep(args: &SweepArgs, fail_on: &[Category]) -> Result<u8> {
    let out = run(args)?;
    let body = match args.output {
        Output::Json => findings_to_jsonl(&out.findings),
        Output::Human => {
            let mut text: String = out
                .findings
                .iter()
                .map(|f| render::finding(f) + "\n")
                .collect();
            text.push_str(&render::summary(&out.summary));
            text
        }
        Output::Csv => {
            let mut buf = Vec::new();
            write_csv(&out.rows, &mut buf)?;
            String::from_utf8(buf)?
        }
    };
    match &args.findings {
        Some(path) => fs::write(path, body).with_context(|| format!("cannot write {}", path.display()))?,
        None => io::stdout().lock().write_all(body.as_bytes())?,
    }
    if let Some(path) = &args.summary {
        let mut w = create(path)?;
        serde_json::to_writer_pretty(&mut w, &out.summary)?;
        writeln!(w)?;
    }
    if let Some(path) = &args.csv {
        write_csv(&out.rows, create(path)?)?;
    }
    let s = &out.summary;
    if args.output != Output::Human {
        eprint!("{}", render::summary(s));
    }
    Ok(if s.internal_breach() {
        BREACH
    } else if !s.errors.is_empty() {
        USAGE
    } else if fail_on.iter().any(|&c| s.count(c) > 0) {
        FINDINGS
    } else {
        CLEAN
    })
}

#[derive(Serialize)]
struct Listed {
    graph6: String,
    n: usize,
    m: usize,
}

pub fn enumerate(args: &EnumerateArgs) -> Result<u8> {
    let mut graphs = Vec::new();
    for n in args.n.0..=args.n.1 {
        graphs.extend(
            enumerate_graphs(n)?
                .into_iter()
                .filter(|g| !args.connected_only || g.is_connected())
                .filter(|g| args.max_edges.is_none_or(|m| g.m() <= m)),
        );
    }
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    if args.count {
        writeln!(out, "{}", graphs.len())?;
        return Ok(CLEAN);
    }
    let listed: Vec<Listed> = graphs
        .iter()
        .map(|g| Listed {
            graph6: write_graph6(g),
            n: g.n(),
            m: g.m(),
        })
        .collect();
    match args.output {
        Output::Human => {
            for l in &listed {
                writeln!(out, "{}", l.graph6)?;
            }
        }
        Output::Json => {
            for l in &listed {
                writeln!(out, "{}", serde_json::to_string(l)?)?;
            }
        }
        Output::Csv => {
            let mut w = csv::Writer::from_writer(&mut out);
            for l in &listed {
                w.serialize(l)?;
            }
            w.flush()?;
        }
    }
    Ok(CLEAN)
}

#[derive(Serialize)]
struct OracleRow {
    item: String,
    fast: u128,
    oracle: u128,
    agree: bool,
}

pub fn oracle(args: &OracleArgs) -> Result<u8> {
    let g = load_graph(&args.graph)?;
    let mut rows = Vec::new();
    match args.mode {
        OracleMode::Cliques => {
            for t in 1..=g.n() {
                let fast = clique_total(&g, t);
                let oracle = naive_clique_count(&g, t)?;
                rows.push(OracleRow {
                    item: format!("t={t}"),
                    fast,
                    oracle,
                    agree: fast == oracle,
                });
            }
        }
        OracleMode::Pweights => {
            let (p, c) = subset_dp_weights(&g)?;
            let w = all_weights(&g, DEFAULT_EXACT_CAP)?;
            for (i, e) in w.edges.iter().enumerate() {
                for (label, fast, oracle) in [("p", w.p[i], p[i]), ("c", w.c[i], c[i])] {
                    rows.push(OracleRow {
                        item: format!("{label}({e})"),
                        fast: fast as u128,
                        oracle: oracle as u128,
                        agree: fast == oracle,
                    });
                }
            }
        }
    }
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match args.output {
        Output::Human => {
            writeln!(out, "graph {} (n = {}, m = {})", write_graph6(&g), g.n(), g.m())?;
            writeln!(out, "{:<14} {:>10} {:>10}", "", "fast", "oracle")?;
            for r in &rows {
                let mark = if r.agree { "" } else { "  MISMATCH" };
                writeln!(out, "{:<14} {:>10} {:>10}{mark}", r.item, r.fast, r.oracle)?;
            }
        }
        Output::Json => writeln!(out, "{}", serde_json::to_string_pretty(&rows)?)?,
        Output::Csv => {
            let mut w = csv::Writer::from_writer(&mut out);
            for r in &rows {
                w.serialize(r)?;
            }
            w.flush()?;
        }
    }
    Ok(if rows.iter().all(|r| r.agree) { CLEAN } else { BREACH })
}
