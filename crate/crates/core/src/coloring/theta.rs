use super::{bit, edge_status, ColoringError, EdgeStatus, PartialColoring, HIGH, LOW};
use crate::factor::{Core, FactorError};
use crate::graph::{CubicGraph, EdgeId, EdgeSet, VertexId};

/// Charge of one edge: inner edges (all five neighbourhood edges colored)
/// score +1 for a normal `E_0` edge and -1 for an abnormal non-`E_0` edge;
/// outer edges score 0 in `E_0` and -1 elsewhere, whatever their colors.
pub fn theta(g: &CubicGraph, core: &Core, col: &PartialColoring, e: EdgeId) -> i8 {
    let in_e0 = core.class(e) == 0;
    match edge_status(g, col, e) {
        EdgeStatus::Undetermined => {
            if in_e0 {
                0
            } else {
                -1
            }
        }
        s if in_e0 && s.is_normal() => 1,
        EdgeStatus::Abnormal if !in_e0 => -1,
        _ => 0,
    }
}

pub fn theta_sum<I: IntoIterator<Item = EdgeId>>(g: &CubicGraph, core: &Core, col: &PartialColoring, edges: I) -> i64 {
    edges.into_iter().map(|e| theta(g, core, col, e) as i64).sum()
}

pub fn theta_total(g: &CubicGraph, core: &Core, col: &PartialColoring) -> i64 {
    theta_sum(g, core, col, 0..g.m())
}

pub fn abnormal_edges(g: &CubicGraph, col: &PartialColoring) -> Vec<EdgeId> {
    (0..g.m()).filter(|&e| edge_status(g, col, e) == EdgeStatus::Abnormal).collect()
}

/// Colors each `E_1` edge with the index of its matching.
pub fn major_coloring(g: &CubicGraph, core: &Core) -> PartialColoring {
    let mut col = PartialColoring::new(g);
    for e in core.edges_of_class(1).ones() {
        let c = core.matching_index(e).expect("E1 edge lies in one matching");
        col.set(g, e, c).expect("edges of one matching are disjoint");
    }
    col
}

/// `h` is good on `v` when the colors at `v` are exactly {1,2,3}, or when the
/// other two edges at `v` carry 4 and 5 and `h` is uncolored or low.
///
/// The second clause also admits a colored low `h`: a circuit colored 4/5
/// alternately has its colored pendant edges good under this reading.
pub fn is_psi_good(g: &CubicGraph, col: &PartialColoring, h: EdgeId, v: VertexId) -> Result<bool, ColoringError> {
    if !g.is_incident(h, v) {
        return Err(ColoringError::NotAnEndpoint { edge: h, vertex: v });
    }
    if col.palette(v) == LOW {
        return Ok(true);
    }
    let [a, b] = g.others_at(v, h);
    let others = bit(col.color(a)) | bit(col.color(b));
    Ok(col.is_colored(a) && col.is_colored(b) && others == HIGH && col.color(h) <= 3)
}

/// Edges outside `h` with an end on `h` that are not good on such an end.
pub fn script_e(g: &CubicGraph, col: &PartialColoring, h: &EdgeSet) -> EdgeSet {
    let mut on_h = vec![false; g.n()];
    for e in h.ones() {
        let (u, v) = g.endpoints(e);
        on_h[u] = true;
        on_h[v] = true;
    }
    let mut out = g.empty_edge_set();
    for v in (0..g.n()).filter(|&v| on_h[v]) {
        for &f in g.incident(v) {
            if !h.contains(f) && !is_psi_good(g, col, f, v).expect("incident") {
                out.insert(f);
            }
        }
    }
    out
}

/// Whether the `E_3` boundary edges of Ω circuits `i` and `j` are both
/// adjacent to one colored edge with color 4 or 5.
pub fn psi_connected(g: &CubicGraph, core: &Core, col: &PartialColoring, i: usize, j: usize) -> Result<bool, FactorError> {
    let e1 = core.omega_e3(i)?;
    let e2 = core.omega_e3(j)?;
    if i == j {
        return Ok(false);
    }
    let near2 = g.adjacent_edges(e2);
    Ok(g.adjacent_edges(e1)
        .into_iter()
        .any(|f| f != e2 && near2.contains(&f) && col.color(f) >= 4))
}
