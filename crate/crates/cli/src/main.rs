//! `pnc`: cores, μ₃ and partially normal 5-edge-colorings from the shell.
//!
//! Exit codes: 0 success, 1 verification or construction failure, 2 usage
//! or input error. Batch output follows input order for every `--jobs`.

mod input;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use input::{encode, load, read_source, Named};
use pnc_core::factor::{compute_mu3, DEFAULT_MU3_BUDGET};
use pnc_core::graph::{encode_preserving_ids, parse_graph, validate, CubicGraph, InputFormat};
use pnc_core::oracles::{brute_force_normal, max_normal_brute, petersen_coloring, Outcome};
use pnc_core::pipeline::{color_partially_normal, to_dot, verify_pnc, PncError, PncOptions, PncResult, VerifyReport};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

const DEFAULT_ORACLE_BUDGET: u64 = 20_000_000;

#[derive(Debug, Parser)]
#[command(name = "pnc", version, about = "Partially normal 5-edge-colorings of bridgeless cubic graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Color every input graph and verify the result.
    Color(Common),
    /// Compute μ₃ with a witness core.
    Mu3(Common),
    /// Run an exhaustive oracle.
    Oracle {
        #[arg(value_enum)]
        kind: OracleKind,
        /// Write the witness JSON of the last graph here.
        witness: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Re-check a stored result JSON against its graph.
    Verify {
        #[arg(short = 'g', long = "graph")]
        graph: String,
        #[arg(short = 'r', long = "result")]
        result: String,
        #[arg(long, value_enum, default_value_t = Fmt::Graph6)]
        format: Fmt,
    },
    /// Print the input graphs, re-encoded.
    Gen(Common),
}

#[derive(Debug, Args)]
struct Common {
    /// Input file (graph6 lines or one edge list); `-` reads stdin.
    #[arg(short = 'i', long = "input")]
    input: Vec<String>,
    /// Built-in family: petersen, k4, k33, prism, flower, moebius-kantor.
    #[arg(long)]
    gen: Option<String>,
    #[arg(long)]
    param: Option<usize>,
    /// Graph encoding of inputs (and of `gen` output).
    #[arg(long, value_enum, default_value_t = Fmt::Graph6)]
    format: Fmt,
    /// Per-graph output; `color` defaults to json, `mu3` to plain text.
    #[arg(long, value_enum)]
    out: Option<Out>,
    /// Replace per-graph records with one summary row per graph.
    #[arg(long, value_enum)]
    summary: Option<Summary>,
    #[arg(long, default_value_t = DEFAULT_MU3_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    budget_mu3: u64,
    #[arg(long, default_value_t = DEFAULT_ORACLE_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    budget_oracle: u64,
    #[arg(long)]
    no_repair: bool,
    /// Worker threads; 0 picks the number of cores.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Fmt {
    Graph6,
    Edgelist,
}

impl From<Fmt> for InputFormat {
    fn from(f: Fmt) -> Self {
        match f {
            Fmt::Graph6 => InputFormat::Graph6,
            Fmt::Edgelist => InputFormat::Edgelist,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Out {
    Json,
    Dot,
    Tsv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Summary {
    Tsv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OracleKind {
    Normal,
    MaxNormal,
    Petersen,
}

/// What one graph contributes to stdout and stderr.
struct Report {
    text: String,
    diagnostics: Vec<String>,
    /// Exit code this graph asks for.
    code: u8,
}

impl Report {
    fn ok(text: String) -> Self {
        Report { text, diagnostics: Vec::new(), code: 0 }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// `Ok(exit code)`; `Err` aborts with 2.
fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Color(c) => batch(&c, color_one, Some("n\tm\tmu3\tabnormal\tnormal\trepairs")),
        Command::Mu3(c) => batch(&c, mu3_one, Some("n\tm\tmu3\texact\ttriples\tties")),
        Command::Oracle { kind, witness, common } => oracle(&common, kind, witness),
        Command::Verify { graph, result, format } => verify(&graph, &result, format.into()),
        Command::Gen(c) => {
            let mut out = String::new();
            for g in load(&c.input, c.gen.as_deref(), c.param, c.format.into())? {
                out.push_str(encode(&g.graph, c.format.into()).trim_end());
                out.push('\n');
            }
            emit(&out)?;
            Ok(0)
        }
    }
}

/// Writes to stdout; a closed pipe (`pnc ... | head`) is not an error.
fn emit(text: &str) -> Result<()> {
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e).context("cannot write to stdout"),
        _ => Ok(()),
    }
}

/// Why a graph is outside the domain (connected, bridgeless), if it is.
fn invalid(g: &CubicGraph) -> Option<String> {
    let v = validate(g);
    if !v.is_connected {
        Some("graph is disconnected".into())
    } else if !v.is_bridgeless {
        Some(format!("graph has bridges {:?}", v.bridges))
    } else {
        None
    }
}

/// Row or record for a graph rejected by validation.
fn rejected(c: &Common, g: &Named, why: String) -> Report {
    let text = if tsv_mode(c) {
        format!("{}\t{}\t-\t-\t-\t-\n", g.graph.n(), g.graph.m())
    } else if c.out == Some(Out::Dot) {
        String::new()
    } else {
        format!("{}\n", json!({ "graph": g.label, "error": why }))
    };
    Report { text, diagnostics: vec![why], code: 2 }
}

/// Loads, fans out over a pool of `jobs` threads and prints in input order.
/// Graphs failing validation get a placeholder and exit code 2; the rest
/// still run.
fn batch(c: &Common, work: fn(&Common, &Named) -> Result<Report>, header: Option<&str>) -> Result<u8> {
    let graphs = load(&c.input, c.gen.as_deref(), c.param, c.format.into())?;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(c.jobs).build().context("cannot start worker pool")?;
    let reports: Vec<Result<Report>> = pool.install(|| {
        graphs
            .par_iter()
            .map(|g| match invalid(&g.graph) {
                Some(why) => Ok(rejected(c, g, why)),
                None => work(c, g),
            })
            .collect()
    });
    let mut out = String::new();
    if tsv_mode(c) {
        if let Some(h) = header {
            out.push_str(h);
            out.push('\n');
        }
    }
    let mut code = 0;
    for (g, r) in graphs.iter().zip(reports) {
        let r = r.with_context(|| g.label.clone())?;
        for d in &r.diagnostics {
            eprintln!("{}: {d}", g.label);
        }
        code = code.max(r.code);
        out.push_str(&r.text);
    }
    emit(&out)?;
    Ok(code)
}

fn tsv_mode(c: &Common) -> bool {
    c.summary.is_some() || c.out == Some(Out::Tsv)
}

fn color_one(c: &Common, g: &Named) -> Result<Report> {
    let opts = PncOptions { repair: !c.no_repair, mu3_budget: c.budget_mu3, ..PncOptions::default() };
    let result = match color_partially_normal(&g.graph, &opts) {
        Ok(r) => r,
        Err(PncError::StageFailed { stage, reason, .. }) => {
            let text = if tsv_mode(c) {
                format!("{}\t{}\t-\t-\t-\t-\n", g.graph.n(), g.graph.m())
            } else if c.out != Some(Out::Dot) {
                format!("{}\n", json!({ "graph": g.label, "error": format!("stage {stage} failed: {reason}") }))
            } else {
                String::new()
            };
            return Ok(Report { text, diagnostics: vec![format!("stage {stage} failed: {reason}")], code: 1 });
        }
        Err(e) => return Err(e.into()),
    };
    let report = verify_pnc(&g.graph, &result);
    let mut diagnostics = Vec::new();
    if !report.ok {
        diagnostics.push(describe_failure(&report));
    }
    if result.repairs > 0 {
        diagnostics.push(format!("{} repair(s) applied", result.repairs));
    }
    let text = if tsv_mode(c) {
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\n",
            result.n,
            result.m,
            result.mu3.value,
            result.abnormal.len(),
            result.normal_count,
            result.repairs
        )
    } else if c.out == Some(Out::Dot) {
        let col = result.partial_coloring(&g.graph).context("result coloring is not proper")?;
        to_dot(&g.graph, &col)
    } else {
        let mut v = serde_json::to_value(&result)?;
        v["verify"] = serde_json::to_value(&report)?;
        format!("{}\n", serde_json::to_string(&v)?)
    };
    Ok(Report { text, code: u8::from(!report.ok), diagnostics })
}

fn mu3_one(c: &Common, g: &Named) -> Result<Report> {
    let r = compute_mu3(&g.graph, c.budget_mu3)?;
    let text = if tsv_mode(c) {
        format!("{}\t{}\t{}\t{}\t{}\t{}\n", g.graph.n(), g.graph.m(), r.mu3, r.exact, r.triples_examined, r.ties)
    } else {
        match c.out {
            None => format!("{} ({})\n", r.mu3, if r.exact { "exact" } else { "upper bound" }),
            Some(Out::Json) => {
                let v = json!({
                    "graph": encode_preserving_ids(&g.graph),
                    "mu3": r.mu3,
                    "exact": r.exact,
                    "triples_examined": r.triples_examined,
                    "ties": r.ties,
                    "core": r.witness.spec(),
                });
                format!("{v}\n")
            }
            Some(_) => bail!("mu3 supports --out json or tsv"),
        }
    };
    Ok(Report::ok(text))
}

fn outcome_word<T>(o: &Outcome<T>) -> &'static str {
    match o {
        Outcome::Found(_) => "FOUND",
        Outcome::Exhausted => "EXHAUSTED",
        Outcome::BudgetExceeded => "BUDGET_EXCEEDED",
    }
}

fn oracle_record<T: Serialize>(kind: &str, g: &CubicGraph, o: &Outcome<T>) -> Result<Value> {
    let mut v = serde_json::to_value(o)?;
    v["oracle"] = Value::Bool(true);
    v["kind"] = Value::String(kind.into());
    v["graph"] = Value::String(encode_preserving_ids(g));
    Ok(v)
}

/// Prints one status word per graph. Anything but FOUND counts as failure:
/// an exhausted normal or Petersen search would be a counterexample.
fn oracle(c: &Common, kind: OracleKind, witness: Option<PathBuf>) -> Result<u8> {
    let graphs = load(&c.input, c.gen.as_deref(), c.param, c.format.into())?;
    let budget = c.budget_oracle;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(c.jobs).build().context("cannot start worker pool")?;
    let records: Vec<Result<(String, Value)>> = pool.install(|| {
        graphs
            .par_iter()
            .map(|g| {
                let g = &g.graph;
                Ok(match kind {
                    OracleKind::Normal => {
                        let o = brute_force_normal(g, budget);
                        (outcome_word(&o).to_string(), oracle_record("normal", g, &o)?)
                    }
                    OracleKind::MaxNormal => {
                        let o = max_normal_brute(g, budget);
                        let word = match &o {
                            Outcome::Found((best, _)) => format!("FOUND {best}"),
                            other => outcome_word(other).to_string(),
                        };
                        (word, oracle_record("max_normal", g, &o)?)
                    }
                    OracleKind::Petersen => {
                        let o = petersen_coloring(g, budget);
                        (outcome_word(&o).to_string(), oracle_record("petersen", g, &o)?)
                    }
                })
            })
            .collect()
    });
    let mut passed = true;
    let mut last = None;
    let mut out = String::new();
    for (g, r) in graphs.iter().zip(records) {
        let (word, record) = r?;
        passed &= word.starts_with("FOUND");
        if graphs.len() > 1 {
            let _ = writeln!(out, "{}\t{word}", g.label);
        } else {
            let _ = writeln!(out, "{word}");
        }
        last = Some(record);
    }
    emit(&out)?;
    if let (Some(path), Some(record)) = (witness, last) {
        std::fs::write(&path, format!("{}\n", serde_json::to_string_pretty(&record)?))
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(u8::from(!passed))
}

fn describe_failure(r: &VerifyReport) -> String {
    let mut parts = Vec::new();
    if let Some((v, a, b)) = r.conflict {
        parts.push(format!("edges {a} and {b} share a color at vertex {v}"));
    } else if !r.total {
        parts.push(format!("{} edge(s) uncolored", r.uncolored));
    }
    if let Some(e) = &r.core_error {
        parts.push(format!("core invalid: {e}"));
    }
    if !r.census_identity {
        parts.push(format!("abnormal {} != k {} - theta {}", r.abnormal, r.k, r.theta));
    }
    if !r.within_k {
        parts.push(format!("abnormal {} > k {}", r.abnormal, r.k));
    }
    if r.within_fifth == Some(false) {
        parts.push(format!("abnormal {} exceeds m/5", r.abnormal));
    }
    parts.extend(r.mismatches.iter().cloned());
    if parts.is_empty() {
        parts.push("verification failed".into());
    }
    format!("verification failed: {}", parts.join("; "))
}

fn edge_multiset(g: &CubicGraph) -> Vec<(usize, usize)> {
    let mut e: Vec<_> = g.edges().iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    e.sort_unstable();
    e
}

fn verify(graph: &str, result: &str, format: InputFormat) -> Result<u8> {
    let text = read_source(graph)?;
    let g = match format {
        InputFormat::Graph6 => {
            let line = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#'));
            parse_graph(line.unwrap_or(""), format)
        }
        InputFormat::Edgelist => parse_graph(&text, format),
    }
    .with_context(|| format!("{graph}: cannot parse graph"))?;
    let raw = read_source(result)?;
    let stored: PncResult = serde_json::from_str(raw.trim()).with_context(|| format!("{result}: not a result record"))?;
    if stored.m != g.m() || stored.n != g.n() {
        bail!("{result}: record is for n={}, m={}, graph has n={}, m={}", stored.n, stored.m, g.n(), g.m());
    }
    // Edge ids in the record follow its own `graph` text; accept any input
    // listing the same labelled edges and check against the recorded order.
    let recorded_fmt = if stored.graph.contains(char::is_whitespace) { InputFormat::Edgelist } else { InputFormat::Graph6 };
    let g = match parse_graph(&stored.graph, recorded_fmt) {
        Ok(h) if h.edges() == g.edges() => g,
        Ok(h) if edge_multiset(&h) == edge_multiset(&g) => h,
        Ok(_) => bail!("{result}: recorded graph differs from {graph}"),
        Err(_) => g,
    };
    let report = verify_pnc(&g, &stored);
    emit(&format!("{}\n", serde_json::to_string(&report)?))?;
    if !report.ok {
        eprintln!("{}", describe_failure(&report));
    }
    Ok(u8::from(!report.ok))
}
