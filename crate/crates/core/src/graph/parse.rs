use super::{CubicGraph, GraphError};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InputFormat {
    Graph6,
    Edgelist,
}

impl FromStr for InputFormat {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "graph6" | "g6" => Ok(InputFormat::Graph6),
            "edgelist" | "edges" | "el" => Ok(InputFormat::Edgelist),
            other => Err(GraphError::Malformed(format!("unknown format `{other}`"))),
        }
    }
}

/// Parses one graph. Edge ids follow the order in which the input lists
/// the edges (graph6: column-major upper triangle).
pub fn parse_graph(text: &str, format: InputFormat) -> Result<CubicGraph, GraphError> {
    match format {
        InputFormat::Graph6 => parse_graph6(text),
        InputFormat::Edgelist => parse_edgelist(text),
    }
}

fn parse_graph6(text: &str) -> Result<CubicGraph, GraphError> {
    let line = text.trim();
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return Err(GraphError::Malformed("empty graph6 string".into()));
    }
    if let Some(b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(GraphError::Malformed(format!("invalid graph6 byte {b:#x}")));
    }
    let (n, rest) = decode_order(bytes)?;
    let pairs = n * n.saturating_sub(1) / 2;
    let needed = pairs.div_ceil(6);
    if rest.len() != needed {
        return Err(GraphError::Malformed(format!(
            "graph6 body has {} bytes, expected {needed} for n={n}",
            rest.len()
        )));
    }
    let mut edges = Vec::new();
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = rest[k / 6] - 63;
            if byte & (1 << (5 - k % 6)) != 0 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    CubicGraph::from_edges(n, edges)
}

fn decode_order(bytes: &[u8]) -> Result<(usize, &[u8]), GraphError> {
    let short = |b: &[u8]| b.iter().fold(0usize, |acc, &x| (acc << 6) | (x - 63) as usize);
    if bytes[0] != 126 {
        return Ok(((bytes[0] - 63) as usize, &bytes[1..]));
    }
    if bytes.len() >= 2 && bytes[1] == 126 {
        if bytes.len() < 8 {
            return Err(GraphError::Malformed("truncated graph6 order".into()));
        }
        return Ok((short(&bytes[2..8]), &bytes[8..]));
    }
    if bytes.len() < 4 {
        return Err(GraphError::Malformed("truncated graph6 order".into()));
    }
    Ok((short(&bytes[1..4]), &bytes[4..]))
}

fn parse_edgelist(text: &str) -> Result<CubicGraph, GraphError> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let header = lines
        .next()
        .ok_or_else(|| GraphError::Malformed("missing \"n m\" header".into()))?;
    let (n, m) = two_numbers(header)?;
    let mut edges = Vec::with_capacity(m);
    for line in lines {
        edges.push(two_numbers(line)?);
    }
    if edges.len() != m {
        return Err(GraphError::Malformed(format!(
            "header announces {m} edges, found {}",
            edges.len()
        )));
    }
    CubicGraph::from_edges(n, edges)
}

fn two_numbers(line: &str) -> Result<(usize, usize), GraphError> {
    let mut it = line.split_whitespace().map(|t| {
        t.parse::<usize>()
            .map_err(|_| GraphError::Malformed(format!("not an integer: `{t}`")))
    });
    match (it.next(), it.next(), it.next()) {
        (Some(a), Some(b), None) => Ok((a?, b?)),
        _ => Err(GraphError::Malformed(format!("expected two integers: `{line}`"))),
    }
}

/// Serializes to the edge-list format; `parse_graph(to_edgelist(g))` is the
/// identity on labelled graphs.
pub fn to_edgelist(g: &CubicGraph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

/// graph6 when decoding it reproduces the edge ids of `g`, the edge list
/// otherwise. Use this when the text travels with per-edge data.
pub fn encode_preserving_ids(g: &CubicGraph) -> String {
    match to_graph6(g) {
        Ok(s) if parse_graph(&s, InputFormat::Graph6).is_ok_and(|h| h.edges() == g.edges()) => s,
        _ => to_edgelist(g),
    }
}

/// Encodes a simple graph as graph6 (no header, no newline).
pub fn to_graph6(g: &CubicGraph) -> Result<String, GraphError> {
    if !g.is_simple() {
        return Err(GraphError::Malformed("graph6 cannot encode parallel edges".into()));
    }
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut adj = vec![false; n * n];
    for &(u, v) in g.edges() {
        adj[u * n + v] = true;
        adj[v * n + u] = true;
    }
    let mut acc = 0u8;
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | adj[i * n + j] as u8;
            k += 1;
            if k.is_multiple_of(6) {
                out.push(acc + 63);
                acc = 0;
            }
        }
    }
    if !k.is_multiple_of(6) {
        acc <<= 6 - k % 6;
        out.push(acc + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ascii"))
}
