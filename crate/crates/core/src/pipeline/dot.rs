use crate::coloring::{edge_status, EdgeStatus, PartialColoring};
use crate::graph::CubicGraph;
use std::fmt::Write;

const PALETTE: [&str; 6] = ["gray", "red", "blue", "forestgreen", "orange", "purple"];

/// Graphviz rendering: edges carry their color as label and pen color,
/// abnormal edges are drawn dashed and bold.
pub fn to_dot(g: &CubicGraph, col: &PartialColoring) -> String {
    let mut out = String::from("graph pnc {\n  node [shape=circle];\n");
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let c = col.color(e);
        let mut attrs = format!("label=\"{c}\", color={}", PALETTE[c as usize]);
        if edge_status(g, col, e) == EdgeStatus::Abnormal {
            attrs.push_str(", style=\"dashed,bold\"");
        }
        writeln!(out, "  {u} -- {v} [{attrs}];").expect("writing to a string");
    }
    out.push_str("}\n");
    out
}
