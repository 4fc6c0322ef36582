//! Graph sources: files (graph6 corpora or single edge lists) and the
//! built-in families.

use anyhow::{bail, Context, Result};
use pnc_core::graph::{generate_graph, parse_graph, to_edgelist, to_graph6, CubicGraph, Family, InputFormat};
use std::fs;
use std::io::Read;
use std::path::Path;

/// One parsed input graph with a label for diagnostics.
pub struct Named {
    pub label: String,
    pub graph: CubicGraph,
}

/// Reads every graph named by `inputs` (in order) followed by the generated
/// one, if any. A graph6 file holds one graph per non-empty line; an edge
/// list file holds exactly one graph.
pub fn load(inputs: &[String], gen: Option<&str>, param: Option<usize>, format: InputFormat) -> Result<Vec<Named>> {
    let mut out = Vec::new();
    for path in inputs {
        let text = read_source(path)?;
        match format {
            InputFormat::Graph6 => {
                for (line_no, line) in text.lines().enumerate() {
                    let line = line.trim();
                    if line.is_empty() || line.starts_with('#') {
                        continue;
                    }
                    let label = format!("{path}:{}", line_no + 1);
                    let graph = parse_graph(line, format).with_context(|| format!("{label}: cannot parse graph"))?;
                    out.push(Named { label, graph });
                }
            }
            InputFormat::Edgelist => {
                let graph = parse_graph(&text, format).with_context(|| format!("{path}: cannot parse graph"))?;
                out.push(Named { label: path.clone(), graph });
            }
        }
    }
    if let Some(name) = gen {
        let family: Family = name.parse()?;
        let graph = generate_graph(family, param).with_context(|| format!("cannot generate `{name}`"))?;
        let label = match param {
            Some(p) => format!("{name}({p})"),
            None => name.to_string(),
        };
        out.push(Named { label, graph });
    } else if param.is_some() {
        bail!("--param needs --gen");
    }
    if out.is_empty() {
        bail!("no input graphs: pass --input or --gen");
    }
    Ok(out)
}

/// Reads a whole file, or stdin for `-`.
pub fn read_source(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("cannot read stdin")?;
        return Ok(s);
    }
    fs::read_to_string(Path::new(path)).with_context(|| format!("cannot read {path}"))
}

/// graph6 when the graph is simple, the edge list otherwise.
pub fn encode(g: &CubicGraph, format: InputFormat) -> String {
    match format {
        InputFormat::Graph6 => to_graph6(g).unwrap_or_else(|_| to_edgelist(g)),
        InputFormat::Edgelist => to_edgelist(g),
    }
}
