use super::{CubicGraph, EdgeId, EdgeSet, GraphError, VertexId};
use serde::{Deserialize, Serialize};

/// A circuit given by parallel cyclic sequences; `edges[i]` joins
/// `vertices[i]` and `vertices[(i + 1) % len]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Circuit {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

/// An open path; `edges[i]` joins `vertices[i]` and `vertices[i + 1]`.
/// A path may consist of a single vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PathSeg {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

/// One member of a vertex-disjoint family of circuits and paths.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Piece {
    Circuit(Circuit),
    Path(PathSeg),
}

impl Circuit {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_odd(&self) -> bool {
        self.len() % 2 == 1
    }

    pub fn position(&self, v: VertexId) -> Option<usize> {
        self.vertices.iter().position(|&x| x == v)
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    /// The path of `len` edges leaving `vertices[start]`, forwards
    /// (`forward == true`, along `edges[start]`) or backwards.
    pub fn arc(&self, start: usize, forward: bool, len: usize) -> PathSeg {
        assert!(len < self.len().max(1), "an arc must leave at least one edge");
        let k = self.len();
        let mut vertices = Vec::with_capacity(len + 1);
        let mut edges = Vec::with_capacity(len);
        let mut i = start;
        vertices.push(self.vertices[i]);
        for _ in 0..len {
            if forward {
                edges.push(self.edges[i]);
                i = (i + 1) % k;
            } else {
                i = (i + k - 1) % k;
                edges.push(self.edges[i]);
            }
            vertices.push(self.vertices[i]);
        }
        PathSeg { vertices, edges }
    }

    /// Edges of the circuit not on `path`, as the complementary path starting
    /// at the path's last vertex (empty when the path is a single vertex).
    pub fn complement(&self, path: &PathSeg) -> Option<PathSeg> {
        if path.edges.is_empty() {
            return None;
        }
        let end = *path.vertices.last().unwrap();
        let start = self.position(end)?;
        let forward = if path.edges.len() == 1 && self.len() == 2 {
            // two parallel edges: the complement is the other edge
            self.edges[start] != path.edges[0]
        } else {
            // continue in the same rotational direction as the path travelled
            let prev = path.vertices[path.vertices.len() - 2];
            let k = self.len();
            self.vertices[(start + k - 1) % k] == prev
                && self.edges[(start + k - 1) % k] == *path.edges.last().unwrap()
        };
        Some(self.arc(start, forward, self.len() - path.edges.len()))
    }
}

impl PathSeg {
    pub fn reversed(&self) -> PathSeg {
        PathSeg {
            vertices: self.vertices.iter().rev().copied().collect(),
            edges: self.edges.iter().rev().copied().collect(),
        }
    }

    pub fn single(v: VertexId) -> Self {
        PathSeg { vertices: vec![v], edges: vec![] }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn ends(&self) -> (VertexId, VertexId) {
        (self.vertices[0], *self.vertices.last().unwrap())
    }

    pub fn interior(&self) -> &[VertexId] {
        if self.vertices.len() <= 2 {
            &[]
        } else {
            &self.vertices[1..self.vertices.len() - 1]
        }
    }
}

impl Piece {
    pub fn edges(&self) -> &[EdgeId] {
        match self {
            Piece::Circuit(c) => &c.edges,
            Piece::Path(p) => &p.edges,
        }
    }

    pub fn vertices(&self) -> &[VertexId] {
        match self {
            Piece::Circuit(c) => &c.vertices,
            Piece::Path(p) => &p.vertices,
        }
    }

    /// Vertices whose outside edges belong to the boundary.
    pub fn interior(&self) -> &[VertexId] {
        match self {
            Piece::Circuit(c) => &c.vertices,
            Piece::Path(p) => p.interior(),
        }
    }
}

/// Decomposes a 2-regular edge set into its circuits. Each circuit starts at
/// its lowest vertex and continues towards the lower of its two neighbours
/// (the lower edge id when both neighbours coincide).
pub fn circuits_of(g: &CubicGraph, set: &EdgeSet) -> Result<Vec<Circuit>, GraphError> {
    let n = g.n();
    let mut deg = vec![0usize; n];
    for e in set.ones() {
        let (u, v) = g.endpoints(e);
        deg[u] += 1;
        deg[v] += 1;
    }
    if let Some(vertex) = (0..n).find(|&v| deg[v] != 0 && deg[v] != 2) {
        return Err(GraphError::NotTwoRegular { vertex, degree: deg[vertex] });
    }
    let in_set = |v: VertexId| -> [EdgeId; 2] {
        let mut out = [0; 2];
        let mut i = 0;
        for &e in g.incident(v) {
            if set.contains(e) {
                out[i] = e;
                i += 1;
            }
        }
        out
    };
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if deg[start] == 0 || seen[start] {
            continue;
        }
        let [a, b] = in_set(start);
        let (wa, wb) = (g.other_end(a, start), g.other_end(b, start));
        let first = if (wa, a) < (wb, b) { a } else { b };
        let mut vertices = vec![start];
        let mut edges = vec![first];
        seen[start] = true;
        let mut prev_edge = first;
        let mut cur = g.other_end(first, start);
        while cur != start {
            seen[cur] = true;
            vertices.push(cur);
            let [x, y] = in_set(cur);
            let next = if x == prev_edge { y } else { x };
            edges.push(next);
            prev_edge = next;
            cur = g.other_end(next, cur);
        }
        out.push(Circuit { vertices, edges });
    }
    Ok(out)
}

/// Edges off `piece` with an end on its interior (every vertex of a circuit,
/// the inner vertices of a path).
pub fn boundary_of(g: &CubicGraph, piece: &Piece) -> Vec<EdgeId> {
    let own = piece.edges();
    let mut out: Vec<EdgeId> = piece
        .interior()
        .iter()
        .flat_map(|&v| g.incident(v).iter().copied())
        .filter(|e| !own.contains(e))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Union of the boundaries of a vertex-disjoint family.
pub fn boundary(g: &CubicGraph, pieces: &[Piece]) -> EdgeSet {
    let mut s = g.empty_edge_set();
    for p in pieces {
        for e in boundary_of(g, p) {
            s.insert(e);
        }
    }
    s
}
