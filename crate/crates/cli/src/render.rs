//! Human-readable output. Machine formats never go through here.

use std::fmt::Write;

use cliquebound::analysis::{BoundReport, Finding, GraphReport};
use cliquebound::extremal::{IffCheck, TheoremCheck, Verdict};
use cliquebound::search::SweepSummary;
use cliquebound::ExactRatio;

/// `a/b (≈ x.xxxx)`, or just `a` for integers.
pub fn ratio(r: ExactRatio) -> String {
    if r.den() == 1 {
        r.to_string()
    } else {
        format!("{r} (≈ {:.4})", r.to_f64())
    }
}

fn verdict(v: Verdict) -> &'static str {
    match v {
        Verdict::BothHold => "both-hold",
        Verdict::BothFail => "both-fail",
        Verdict::Discrepancy => "DISCREPANCY",
        Verdict::Exempt => "exempt",
    }
}

fn iff(c: &IffCheck) -> String {
    format!(
        "{} (tight {}, certificate {}, on {})",
        verdict(c.verdict),
        c.equality,
        c.certificate,
        c.graph
    )
}

fn theorem(name: &str, c: &TheoremCheck, out: &mut String) {
    let _ = writeln!(out, "    {name:<7} {}", iff(&c.reduced));
    if let Some(u) = &c.unreduced {
        let _ = writeln!(out, "    {:<7} unreduced: {}", "", iff(u));
    }
}

fn bound_row(b: &BoundReport, out: &mut String) {
    let cert = match &b.certificate {
        None => "-".to_string(),
        Some(c) if c.holds => "holds".to_string(),
        Some(c) => format!(
            "fails at {:?}",
            c.evidence.map(|s| s.to_vec()).unwrap_or_default()
        ),
    };
    let _ = writeln!(
        out,
        "    {:<28} {:<22} {:<22} {:<5} {cert}",
        b.kind.name(),
        ratio(b.bound),
        ratio(b.slack),
        if b.equality { "yes" } else { "no" },
    );
}

pub fn graph_report(r: &GraphReport) -> String {
    let mut out = String::new();
    let w = &r.weights;
    let _ = writeln!(out, "graph {} (n = {}, m = {})", r.graph6, r.n, r.m);
    let _ = writeln!(out, "degrees: {:?}", w.degrees);
    let _ = writeln!(
        out,
        "max degree {}, longest path {}, circumference {}",
        w.max_degree, w.longest_path, w.circumference
    );
    if !w.edges.is_empty() {
        let _ = writeln!(out, "edge weights:");
        for ((e, p), c) in w.edges.iter().zip(&w.p).zip(&w.c) {
            let _ = writeln!(out, "    {:<7} p = {p:<3} c = {c}", e.to_string());
        }
    }
    let header = format!(
        "    {:<28} {:<22} {:<22} {:<5} certificate",
        "kind", "bound", "slack", "tight"
    );
    if !r.totals.is_empty() {
        let _ = writeln!(out, "\ncliques of every order: {}", r.totals[0].count);
        let _ = writeln!(out, "{header}");
        for b in &r.totals {
            bound_row(b, &mut out);
        }
    }
    for o in &r.orders {
        let _ = writeln!(out, "\nt = {}: {} cliques", o.t, o.count);
        if !o.bounds.is_empty() {
            let _ = writeln!(out, "{header}");
            for b in &o.bounds {
                bound_row(b, &mut out);
            }
        }
        let _ = writeln!(out, "  cross-validation:");
        let cv = &o.cross_validation;
        theorem("vertex", &cv.vertex, &mut out);
        if let Some(c) = &cv.edge {
            theorem("edge", c, &mut out);
        }
        if let Some(c) = &cv.cycle {
            theorem("cycle", c, &mut out);
        }
        if let Some(d) = &o.dominance {
            let _ = writeln!(
                out,
                "  dominance: vertex {} <= {} (d = {})",
                ratio(d.vertex.local),
                ratio(d.vertex.classical),
                d.vertex.parameter
            );
            if let Some(e) = &d.edge {
                let _ = writeln!(
                    out,
                    "             edge {} <= {} (r = {})",
                    ratio(e.local),
                    ratio(e.classical),
                    e.parameter
                );
            }
        }
    }
    out
}

pub fn finding(f: &Finding) -> String {
    let t = f.t.map_or("all".to_string(), |t| t.to_string());
    let mut line = format!(
        "{:<20} {:<28} t = {:<3} {:<12} count {} bound {} slack {}",
        f.category.name(),
        f.kind.name(),
        t,
        f.graph6,
        f.count,
        ratio(f.bound),
        ratio(f.slack)
    );
    if let (Some(v), Some(c)) = (f.verdict, f.certificate) {
        let _ = write!(
            line,
            " [{}: tight {}, certificate {}]",
            verdict(v),
            f.equality,
            c
        );
    }
    line
}

pub fn summary(s: &SweepSummary) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "graphs: {} loaded, {} filtered out, {} analysed, {} errors",
        s.graphs_loaded,
        s.filtered_out,
        s.graphs_analysed,
        s.errors.len()
    );
    for (c, n) in &s.findings {
        let _ = writeln!(out, "  {:<22} {n}", c.name());
    }
    if s.equality_instances_suppressed > 0 {
        let _ = writeln!(
            out,
            "  equality instances over the per-(n, t) cap: {}",
            s.equality_instances_suppressed
        );
    }
    let _ = writeln!(
        out,
        "dominance: {} checks, {} breaches",
        s.dominance_checks, s.dominance_breaches
    );
    if s.stopped_early {
        let _ = writeln!(out, "stopped at the first violation");
    }
    for e in &s.errors {
        let _ = writeln!(out, "error on graph #{} ({}): {}", e.index, e.graph6, e.message);
    }
    out
}
