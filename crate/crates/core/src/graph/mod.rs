//! Cubic (multi)graphs with dense vertex and edge ids.
//!
//! Every accepted graph is 3-regular and loopless. Parallel edges are
//! allowed; the graph6 reader only ever produces simple graphs, the
//! edge-list reader can express multigraphs.

mod circuit;
mod generate;
mod parse;
mod validate;

pub use circuit::{boundary, boundary_of, circuits_of, Circuit, PathSeg, Piece};
pub use generate::{generate_graph, Family};
pub use parse::{encode_preserving_ids, parse_graph, to_edgelist, to_graph6, InputFormat};
pub use validate::{validate, ValidationReport};

use fixedbitset::FixedBitSet;
use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;

/// A set of edge ids sized to the edge count of its graph.
pub type EdgeSet = FixedBitSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("non-cubic graph: vertex {vertex} has degree {degree}")]
    NonCubic { vertex: VertexId, degree: usize },
    #[error("loop at vertex {0}")]
    Loop(VertexId),
    #[error("edge endpoint {endpoint} out of range for {n} vertices")]
    VertexOutOfRange { endpoint: usize, n: usize },
    #[error("invalid parameter for {family}: {reason}")]
    InvalidParameter { family: &'static str, reason: String },
    #[error("edge set does not induce a 2-regular subgraph: vertex {vertex} has degree {degree}")]
    NotTwoRegular { vertex: VertexId, degree: usize },
}

/// Immutable cubic multigraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicGraph {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    incidence: Vec<[EdgeId; 3]>,
}

impl CubicGraph {
    /// Builds a graph from an edge list, checking the cubic invariants.
    pub fn from_edges(n: usize, edges: Vec<(VertexId, VertexId)>) -> Result<Self, GraphError> {
        let mut inc: Vec<Vec<EdgeId>> = vec![Vec::with_capacity(3); n];
        for (id, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { endpoint: w, n });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            inc[u].push(id);
            inc[v].push(id);
        }
        let mut incidence = Vec::with_capacity(n);
        for (vertex, list) in inc.into_iter().enumerate() {
            if list.len() != 3 {
                return Err(GraphError::NonCubic { vertex, degree: list.len() });
            }
            incidence.push([list[0], list[1], list[2]]);
        }
        Ok(CubicGraph { n, edges, incidence })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    pub fn incident(&self, v: VertexId) -> &[EdgeId; 3] {
        &self.incidence[v]
    }

    /// The endpoint of `e` that is not `v`.
    pub fn other_end(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            debug_assert_eq!(b, v);
            a
        }
    }

    pub fn is_incident(&self, e: EdgeId, v: VertexId) -> bool {
        let (a, b) = self.edges[e];
        a == v || b == v
    }

    /// Edges sharing an endpoint with `e`, as a sorted set of ids (a parallel
    /// edge is listed once).
    pub fn adjacent_edges(&self, e: EdgeId) -> Vec<EdgeId> {
        let (u, v) = self.edges[e];
        let mut out: Vec<EdgeId> = self.incidence[u]
            .iter()
            .chain(self.incidence[v].iter())
            .copied()
            .filter(|&f| f != e)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Edges at `v` other than `e`.
    pub fn others_at(&self, v: VertexId, e: EdgeId) -> [EdgeId; 2] {
        let inc = &self.incidence[v];
        let mut out = [usize::MAX; 2];
        let mut i = 0;
        let mut skipped = false;
        for &f in inc {
            if f == e && !skipped {
                skipped = true;
                continue;
            }
            out[i] = f;
            i += 1;
            if i == 2 {
                break;
            }
        }
        out
    }

    /// Neighbour of `v` along the edges in cyclic order of incidence.
    pub fn neighbors(&self, v: VertexId) -> [VertexId; 3] {
        let inc = &self.incidence[v];
        [
            self.other_end(inc[0], v),
            self.other_end(inc[1], v),
            self.other_end(inc[2], v),
        ]
    }

    /// Some edge joining `u` and `v`, the lowest id if several.
    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.incidence[u]
            .iter()
            .copied()
            .filter(|&e| self.other_end(e, u) == v)
            .min()
    }

    pub fn is_simple(&self) -> bool {
        (0..self.n).all(|v| {
            let [a, b, c] = self.neighbors(v);
            a != b && b != c && a != c
        })
    }

    pub fn empty_edge_set(&self) -> EdgeSet {
        FixedBitSet::with_capacity(self.m())
    }

    pub fn edge_set<I: IntoIterator<Item = EdgeId>>(&self, ids: I) -> EdgeSet {
        let mut s = self.empty_edge_set();
        for e in ids {
            s.insert(e);
        }
        s
    }

    /// Returns a copy with vertices renamed by `perm[v]` (edge ids are kept).
    pub fn relabel(&self, perm: &[VertexId]) -> Result<Self, GraphError> {
        let edges = self.edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        CubicGraph::from_edges(self.n, edges)
    }
}
