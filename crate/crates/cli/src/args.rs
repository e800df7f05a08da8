use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cliquebound::analysis::Category;
use cliquebound::bounds::BoundKind;
use cliquebound::enumerate::RandomModel;
use cliquebound::search::DEFAULT_EQUALITY_CAP;
use cliquebound::weights::DEFAULT_EXACT_CAP;

#[derive(Debug, Parser)]
#[command(
    name = "cliquebound",
    version,
    about = "Exact clique counts against degree-, path- and cycle-weighted upper bounds"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full report for one graph: weights, bounds per order, certificates.
    Analyze(AnalyzeArgs),
    /// Check a stream of graphs; exit 0 unless a proven bound fails.
    Verify(VerifyArgs),
    /// Hunt for counterexamples over generated graphs.
    Search(SearchArgs),
    /// Print one graph6 line per isomorphism class.
    Enumerate(EnumerateArgs),
    /// Compare the fast routines against the brute-force oracles.
    Oracle(OracleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Graph6,
    EdgeList,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Human,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// Graph given inline as graph6.
    #[arg(long, conflicts_with_all = ["input", "random"])]
    pub graph6: Option<String>,
    /// File holding one graph; `-` reads standard input.
    #[arg(short, long, conflicts_with = "random")]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = InputFormat::Graph6)]
    pub format: InputFormat,
    /// Random graph: `gnp:P` or `regular:D`, with --n and --seed.
    #[arg(long, value_parser = parse_model, requires = "n")]
    pub random: Option<RandomModel>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct OrderArgs {
    /// Orders to evaluate: `T` or `LO..HI` (inclusive). Default: 2..=Δ+1 per graph.
    #[arg(short = 't', long = "orders", value_parser = parse_range, conflicts_with = "all_orders")]
    pub orders: Option<(usize, usize)>,
    /// Evaluate every order 1..=n.
    #[arg(long)]
    pub all_orders: bool,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[command(flatten)]
    pub orders: OrderArgs,
    /// Comma-separated kinds, or one of `all`, `localized`, `theorems`, `classical`.
    #[arg(long, value_parser = parse_kinds, default_value = "all")]
    pub kinds: KindList,
    #[arg(short, long, value_enum, default_value_t = Output::Human)]
    pub output: Output,
    /// Order cap for the exact path and cycle searches.
    #[arg(long, default_value_t = DEFAULT_EXACT_CAP)]
    pub weight_cap: usize,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct SourceArgs {
    /// graph6 stream, one graph per line; `-` reads standard input.
    #[arg(short, long)]
    pub input: Option<PathBuf>,
    /// Every isomorphism class on `N` or `LO..HI` vertices.
    #[arg(long, value_parser = parse_range)]
    pub exhaustive: Option<(usize, usize)>,
    /// Random graphs: `gnp:P` or `regular:D`, with --n, --count and --seed.
    #[arg(long, value_parser = parse_model)]
    pub random: Option<RandomModel>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Vertex count for --random.
    #[arg(long)]
    pub n: Option<usize>,
    /// Number of graphs for --random.
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub connected_only: bool,
    #[arg(long)]
    pub max_edges: Option<usize>,
    #[command(flatten)]
    pub orders: OrderArgs,
    /// Comma-separated kinds, or one of `all`, `localized`, `theorems`, `classical`.
    #[arg(long, value_parser = parse_kinds, default_value = "localized")]
    pub kinds: KindList,
    /// Worker threads. Defaults to the available cores.
    #[arg(short = 'j', long, env = "CLIQUEBOUND_THREADS")]
    pub parallelism: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_EXACT_CAP)]
    pub weight_cap: usize,
    /// Equality instances emitted per (n, t).
    #[arg(long, default_value_t = DEFAULT_EQUALITY_CAP, conflicts_with = "all_equalities")]
    pub equality_cap: usize,
    /// Emit every equality instance.
    #[arg(long)]
    pub all_equalities: bool,
    /// Stop after the first graph with a violation.
    #[arg(long)]
    pub stop_on_first: bool,
    /// Write findings here instead of standard output.
    #[arg(long)]
    pub findings: Option<PathBuf>,
    /// Write the JSON summary here.
    #[arg(long)]
    pub summary: Option<PathBuf>,
    /// Write the slack table here as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Findings on standard output: `json` (JSON lines), `human`, or `csv` (slack table).
    #[arg(short, long, value_enum, default_value_t = Output::Json)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub sweep: SweepArgs,
    /// Categories that make the exit code 1.
    #[arg(long, value_delimiter = ',')]
    pub fail_on: Vec<Category>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[command(flatten)]
    pub sweep: SweepArgs,
    /// Categories that make the exit code 1.
    #[arg(long, value_delimiter = ',', default_value = "CONJECTURE_VIOLATION")]
    pub fail_on: Vec<Category>,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    /// Vertex count `N`, or `LO..HI`.
    #[arg(long, value_parser = parse_range)]
    pub n: (usize, usize),
    #[arg(long)]
    pub connected_only: bool,
    #[arg(long)]
    pub max_edges: Option<usize>,
    /// Print only the number of classes.
    #[arg(long)]
    pub count: bool,
    #[arg(short, long, value_enum, default_value_t = Output::Human)]
    pub output: Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleMode {
    Cliques,
    Pweights,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long, value_enum)]
    pub mode: OracleMode,
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(short, long, value_enum, default_value_t = Output::Human)]
    pub output: Output,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KindList(pub Vec<BoundKind>);

fn parse_kinds(s: &str) -> Result<KindList, String> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let group: Vec<BoundKind> = match part {
            "all" => BoundKind::ALL.to_vec(),
            "localized" => BoundKind::LOCALIZED.to_vec(),
            "theorems" => BoundKind::ALL
                .into_iter()
                .filter(|k| !k.is_conjecture())
                .collect(),
            "classical" => BoundKind::ALL
                .into_iter()
                .filter(|k| !BoundKind::LOCALIZED.contains(k))
                .collect(),
            name => vec![name.parse::<BoundKind>().map_err(|e| e.to_string())?],
        };
        for k in group {
            if !out.contains(&k) {
                out.push(k);
            }
        }
    }
    if out.is_empty() {
        return Err("no bound kinds given".into());
    }
    out.sort();
    Ok(KindList(out))
}

/// `N`, `LO..HI` or `LO..=HI`, both ends inclusive.
pub fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let num = |x: &str| {
        x.trim()
            .parse::<usize>()
            .map_err(|_| format!("`{x}` is not a non-negative integer"))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let v = num(s)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

fn parse_model(s: &str) -> Result<RandomModel, String> {
    let (name, value) = s
        .split_once(':')
        .ok_or_else(|| format!("expected `gnp:P` or `regular:D`, got `{s}`"))?;
    match name {
        "gnp" => {
            let p: f64 = value.parse().map_err(|_| format!("bad probability `{value}`"))?;
            if !(0.0..=1.0).contains(&p) {
                return Err(format!("probability {p} outside [0, 1]"));
            }
            Ok(RandomModel::Gnp { p })
        }
        "regular" => Ok(RandomModel::Regular {
            d: value.parse().map_err(|_| format!("bad degree `{value}`"))?,
        }),
        _ => Err(format!("unknown model `{name}`; use gnp or regular")),
    }
}
