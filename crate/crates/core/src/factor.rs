//! Perfect matchings, cores built from matching triples, and exact μ₃.
//!
//! A core is described by a list `M1, M2, M3` of perfect matchings (repeats
//! allowed). `E_i` holds the edges lying in exactly `i` of them; `k = |E_0|`.
//! At every vertex the three multiplicities sum to 3, so each vertex is of
//! type (1,1,1), (2,1,0) or (3,0,0) and `E_0 ∪ E_2` is 2-regular where present.

use crate::graph::{circuits_of, validate, Circuit, CubicGraph, EdgeId, EdgeSet, GraphError, VertexId};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("matching M{index} is not a perfect matching")]
    NotPerfectMatching { index: usize },
    #[error("search budget must be positive")]
    ZeroBudget,
    #[error("graph has bridges {bridges:?}")]
    NotBridgeless { bridges: Vec<EdgeId> },
    #[error("graph has no perfect matching")]
    NoPerfectMatching,
    #[error("circuit {0} is not a circuit of the core")]
    NotACoreCircuit(usize),
    #[error("circuit {0} is not in the set of short single-contact circuits")]
    NotInOmega(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Lazily enumerates perfect matchings: the lowest uncovered vertex is
/// matched along each of its incident edges in incidence order.
pub struct PerfectMatchings<'g> {
    g: &'g CubicGraph,
    covered: Vec<bool>,
    chosen: Vec<EdgeId>,
    // (vertex, next incidence slot, whether this frame's edge is in `chosen`)
    stack: Vec<(VertexId, usize, bool)>,
    remaining: usize,
    started: bool,
}

pub fn perfect_matchings(g: &CubicGraph, limit: usize) -> PerfectMatchings<'_> {
    PerfectMatchings {
        g,
        covered: vec![false; g.n()],
        chosen: Vec::new(),
        stack: Vec::new(),
        remaining: limit,
        started: false,
    }
}

impl Iterator for PerfectMatchings<'_> {
    type Item = EdgeSet;

    fn next(&mut self) -> Option<EdgeSet> {
        if self.remaining == 0 {
            return None;
        }
        if !self.started {
            self.started = true;
            if self.g.n() == 0 {
                self.remaining -= 1;
                return Some(self.g.empty_edge_set());
            }
            self.stack.push((0, 0, false));
        }
        let g = self.g;
        while let Some(top) = self.stack.last_mut() {
            let (v, slot, active) = *top;
            if active {
                let e = self.chosen.pop().expect("active frame owns an edge");
                let (a, b) = g.endpoints(e);
                self.covered[a] = false;
                self.covered[b] = false;
                top.2 = false;
            }
            if slot == 3 {
                self.stack.pop();
                continue;
            }
            top.1 += 1;
            let e = g.incident(v)[slot];
            let w = g.other_end(e, v);
            if self.covered[w] {
                continue;
            }
            top.2 = true;
            self.covered[v] = true;
            self.covered[w] = true;
            self.chosen.push(e);
            match (v + 1..g.n()).find(|&u| !self.covered[u]) {
                Some(u) => self.stack.push((u, 0, false)),
                None => {
                    self.remaining -= 1;
                    return Some(g.edge_set(self.chosen.iter().copied()));
                }
            }
        }
        None
    }
}

pub fn is_perfect_matching(g: &CubicGraph, m: &EdgeSet) -> bool {
    let mut hit = vec![0u8; g.n()];
    for e in m.ones() {
        if e >= g.m() {
            return false;
        }
        let (u, v) = g.endpoints(e);
        hit[u] += 1;
        hit[v] += 1;
    }
    hit.iter().all(|&h| h == 1)
}

/// JSON form of a core: matchings as edge-id lists plus `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreSpec {
    #[serde(rename = "M1")]
    pub m1: Vec<EdgeId>,
    #[serde(rename = "M2")]
    pub m2: Vec<EdgeId>,
    #[serde(rename = "M3")]
    pub m3: Vec<EdgeId>,
    pub k: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Core {
    matchings: [EdgeSet; 3],
    class_of: Vec<u8>,
    classes: [EdgeSet; 4],
    circuits: Vec<Circuit>,
    circuit_of_vertex: Vec<Option<usize>>,
    e3_at: Vec<Option<EdgeId>>,
}

pub fn core_from_triple(g: &CubicGraph, m1: &EdgeSet, m2: &EdgeSet, m3: &EdgeSet) -> Result<Core, FactorError> {
    for (i, m) in [m1, m2, m3].into_iter().enumerate() {
        if !is_perfect_matching(g, m) {
            return Err(FactorError::NotPerfectMatching { index: i + 1 });
        }
    }
    let grow = |m: &EdgeSet| {
        let mut s = g.empty_edge_set();
        s.union_with(m);
        s
    };
    let matchings = [grow(m1), grow(m2), grow(m3)];
    let class_of: Vec<u8> = (0..g.m())
        .map(|e| matchings.iter().filter(|m| m.contains(e)).count() as u8)
        .collect();
    let classes: [EdgeSet; 4] =
        std::array::from_fn(|i| g.edge_set((0..g.m()).filter(|&e| class_of[e] as usize == i)));
    let mut h = classes[0].clone();
    h.union_with(&classes[2]);
    let circuits = circuits_of(g, &h)?;
    let mut circuit_of_vertex = vec![None; g.n()];
    for (i, c) in circuits.iter().enumerate() {
        for &v in &c.vertices {
            circuit_of_vertex[v] = Some(i);
        }
    }
    let mut e3_at = vec![None; g.n()];
    for e in classes[3].ones() {
        let (u, v) = g.endpoints(e);
        assert!(e3_at[u].is_none() && e3_at[v].is_none(), "adjacent E3 edges");
        e3_at[u] = Some(e);
        e3_at[v] = Some(e);
    }
    let core = Core { matchings, class_of, classes, circuits, circuit_of_vertex, e3_at };
    core.assert_invariants(g);
    Ok(core)
}

impl Core {
    fn assert_invariants(&self, g: &CubicGraph) {
        let half = g.n() / 2;
        let weighted: usize = (1..4).map(|i| i * self.classes[i].count_ones(..)).sum();
        assert_eq!(weighted, 3 * half);
        for v in 0..g.n() {
            let s: u8 = g.incident(v).iter().map(|&e| self.class_of[e]).sum();
            assert_eq!(s, 3, "multiplicities at vertex {v}");
        }
        for c in &self.circuits {
            let e0 = c.edges.iter().filter(|&&e| self.class_of[e] == 0).count();
            assert_eq!(c.len() + self.sigma_of(c), 2 * e0);
        }
    }

    pub fn matchings(&self) -> &[EdgeSet; 3] {
        &self.matchings
    }

    pub fn class(&self, e: EdgeId) -> u8 {
        self.class_of[e]
    }

    pub fn class_of(&self) -> &[u8] {
        &self.class_of
    }

    /// `E_i` for `i` in 0..=3.
    pub fn edges_of_class(&self, i: usize) -> &EdgeSet {
        &self.classes[i]
    }

    pub fn k(&self) -> usize {
        self.classes[0].count_ones(..)
    }

    /// Circuits of `G[E_0 ∪ E_2]` in canonical order.
    pub fn circuits(&self) -> &[Circuit] {
        &self.circuits
    }

    pub fn circuit_of_vertex(&self, v: VertexId) -> Option<usize> {
        self.circuit_of_vertex[v]
    }

    /// The `E_3` edge at `v`, if any.
    pub fn e3_at(&self, v: VertexId) -> Option<EdgeId> {
        self.e3_at[v]
    }

    /// Index of the matching containing an `E_1` edge (1-based).
    pub fn matching_index(&self, e: EdgeId) -> Option<u8> {
        if self.class_of[e] != 1 {
            return None;
        }
        (0..3).find(|&i| self.matchings[i].contains(e)).map(|i| i as u8 + 1)
    }

    pub fn odd_circuit_count(&self) -> usize {
        self.circuits.iter().filter(|c| c.is_odd()).count()
    }

    fn sigma_of(&self, c: &Circuit) -> usize {
        c.vertices.iter().filter(|&&v| self.e3_at[v].is_some()).count()
    }

    /// Number of vertices of circuit `i` that carry an `E_3` edge.
    pub fn sigma(&self, i: usize) -> Result<usize, FactorError> {
        let c = self.circuits.get(i).ok_or(FactorError::NotACoreCircuit(i))?;
        Ok(self.sigma_of(c))
    }

    /// Index of `c` among the core's circuits, comparing edge sets.
    pub fn index_of(&self, c: &Circuit) -> Option<usize> {
        let i = self.circuit_of_vertex[*c.vertices.first()?]?;
        let mut a = self.circuits[i].edges.clone();
        let mut b = c.edges.clone();
        a.sort_unstable();
        b.sort_unstable();
        (a == b).then_some(i)
    }

    pub fn in_omega(&self, i: usize) -> bool {
        self.circuits.get(i).is_some_and(|c| c.len() <= 5 && self.sigma_of(c) == 1)
    }

    /// Indices of circuits with σ = 1 and length at most 5.
    pub fn omega(&self) -> Vec<usize> {
        (0..self.circuits.len()).filter(|&i| self.in_omega(i)).collect()
    }

    /// The unique `E_3` edge on the boundary of an Ω circuit.
    pub fn omega_e3(&self, i: usize) -> Result<EdgeId, FactorError> {
        if !self.in_omega(i) {
            return Err(FactorError::NotInOmega(i));
        }
        let c = &self.circuits[i];
        Ok(c.vertices.iter().find_map(|&v| self.e3_at[v]).expect("σ = 1"))
    }

    /// Whether an `E_1` edge joins Ω circuits `i` and `j`.
    pub fn gc_connected(&self, g: &CubicGraph, i: usize, j: usize) -> Result<bool, FactorError> {
        for x in [i, j] {
            if !self.in_omega(x) {
                return Err(FactorError::NotInOmega(x));
            }
        }
        Ok(i != j && self.gc_links(g, i, j).next().is_some())
    }

    /// `E_1` edges joining circuits `i` and `j`, ascending.
    pub fn gc_links<'a>(&'a self, g: &'a CubicGraph, i: usize, j: usize) -> impl Iterator<Item = EdgeId> + 'a {
        self.classes[1].ones().filter(move |&e| {
            let (u, v) = g.endpoints(e);
            let (a, b) = (self.circuit_of_vertex[u], self.circuit_of_vertex[v]);
            (a == Some(i) && b == Some(j)) || (a == Some(j) && b == Some(i))
        })
    }

    pub fn spec(&self) -> CoreSpec {
        let ids = |m: &EdgeSet| m.ones().collect();
        CoreSpec {
            m1: ids(&self.matchings[0]),
            m2: ids(&self.matchings[1]),
            m3: ids(&self.matchings[2]),
            k: self.k(),
        }
    }

    pub fn from_spec(g: &CubicGraph, spec: &CoreSpec) -> Result<Core, FactorError> {
        let set = |ids: &[EdgeId], index: usize| {
            if ids.iter().any(|&e| e >= g.m()) {
                return Err(FactorError::NotPerfectMatching { index });
            }
            Ok(g.edge_set(ids.iter().copied()))
        };
        core_from_triple(g, &set(&spec.m1, 1)?, &set(&spec.m2, 2)?, &set(&spec.m3, 3)?)
    }
}

#[derive(Debug, Clone)]
pub struct Mu3Result {
    pub mu3: usize,
    pub witness: Core,
    /// False when the budget ran out; `mu3` is then an upper bound.
    pub exact: bool,
    pub triples_examined: u64,
    /// Number of examined triples attaining `mu3`.
    pub ties: u64,
}

pub const DEFAULT_MU3_BUDGET: u64 = 10_000_000;

/// Minimum `|E_0|` over all triples `i ≤ j ≤ l` of perfect matchings.
///
/// Partial triples are cut when `|uncovered| - (matchings left) * n/2`
/// exceeds the incumbent; equal bounds are explored so that every optimal
/// triple reaches the tie-break (fewest odd circuits, then smallest `E_0`).
pub fn compute_mu3(g: &CubicGraph, budget: u64) -> Result<Mu3Result, FactorError> {
    if budget == 0 {
        return Err(FactorError::ZeroBudget);
    }
    let report = validate(g);
    if !report.is_bridgeless {
        return Err(FactorError::NotBridgeless { bridges: report.bridges });
    }
    let ms: Vec<EdgeSet> = perfect_matchings(g, usize::MAX).collect();
    if ms.is_empty() {
        return Err(FactorError::NoPerfectMatching);
    }
    let words: Vec<Vec<usize>> = ms.iter().map(|m| m.as_slice().to_vec()).collect();
    let nw = words[0].len();
    let full: Vec<_> = g.edge_set(0..g.m()).as_slice().to_vec();
    let uncovered = |cover: &[usize]| -> usize {
        cover.iter().zip(&full).map(|(c, f)| (f & !c).count_ones() as usize).sum()
    };
    let half = g.n() / 2;

    let mut best: Option<(usize, usize, Vec<EdgeId>, [usize; 3])> = None;
    let mut examined = 0u64;
    let mut ties = 0u64;
    let mut exact = true;
    let mut ij = vec![0; nw];
    let mut ijl = vec![0; nw];
    'outer: for i in 0..ms.len() {
        let lb_i = uncovered(&words[i]).saturating_sub(2 * half);
        if best.as_ref().is_some_and(|b| lb_i > b.0) {
            continue;
        }
        for j in i..ms.len() {
            for w in 0..nw {
                ij[w] = words[i][w] | words[j][w];
            }
            let lb_j = uncovered(&ij).saturating_sub(half);
            if best.as_ref().is_some_and(|b| lb_j > b.0) {
                continue;
            }
            for l in j..ms.len() {
                if examined == budget {
                    exact = false;
                    break 'outer;
                }
                examined += 1;
                for w in 0..nw {
                    ijl[w] = ij[w] | words[l][w];
                }
                let k = uncovered(&ijl);
                if best.as_ref().is_some_and(|b| k > b.0) {
                    continue;
                }
                let core = core_from_triple(g, &ms[i], &ms[j], &ms[l])?;
                let odd = core.odd_circuit_count();
                let e0: Vec<EdgeId> = core.edges_of_class(0).ones().collect();
                let better = match &best {
                    Some(b) if k == b.0 => {
                        ties += 1;
                        (odd, &e0) < (b.1, &b.2)
                    }
                    _ => {
                        ties = 1;
                        true
                    }
                };
                if better {
                    best = Some((k, odd, e0, [i, j, l]));
                }
            }
        }
    }
    let (mu3, _, _, [i, j, l]) = best.expect("at least one triple examined");
    let witness = core_from_triple(g, &ms[i], &ms[j], &ms[l])?;
    if exact {
        assert!(5 * mu3 <= g.m(), "mu3 = {mu3} exceeds |E|/5 for |E| = {}", g.m());
    }
    Ok(Mu3Result { mu3, witness, exact, triples_examined: examined, ties })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_graph, Family};

    fn brute_matching_count(g: &CubicGraph) -> usize {
        (0u64..1 << g.m())
            .filter(|mask| {
                let s = g.edge_set((0..g.m()).filter(|e| mask >> e & 1 == 1));
                is_perfect_matching(g, &s)
            })
            .count()
    }

    #[test]
    fn matching_counts_agree_with_subset_enumeration() {
        for (fam, p, expect) in [
            (Family::K4, None, 3),
            (Family::Petersen, None, 6),
            (Family::Prism, Some(3), 4),
            (Family::K33, None, 6),
        ] {
            let g = generate_graph(fam, p).unwrap();
            let got = perfect_matchings(&g, usize::MAX).count();
            assert_eq!(got, expect, "{fam:?}");
            assert_eq!(got, brute_matching_count(&g), "{fam:?}");
        }
    }

    #[test]
    fn matchings_are_distinct_and_limit_respected() {
        let g = generate_graph(Family::MoebiusKantor, None).unwrap();
        let all: Vec<_> = perfect_matchings(&g, usize::MAX).collect();
        for (a, m) in all.iter().enumerate() {
            assert!(is_perfect_matching(&g, m));
            assert!(all[..a].iter().all(|x| x != m));
        }
        assert_eq!(perfect_matchings(&g, 2).count(), 2);
    }

    #[test]
    fn k4_distinct_triple_has_empty_core() {
        let g = generate_graph(Family::K4, None).unwrap();
        let ms: Vec<_> = perfect_matchings(&g, 3).collect();
        let c = core_from_triple(&g, &ms[0], &ms[1], &ms[2]).unwrap();
        assert_eq!(c.k(), 0);
        assert_eq!(c.edges_of_class(1).count_ones(..), 6);
        assert!(c.circuits().is_empty());
    }

    #[test]
    fn repeated_matching_makes_e3() {
        let g = generate_graph(Family::K4, None).unwrap();
        let m = perfect_matchings(&g, 1).next().unwrap();
        let c = core_from_triple(&g, &m, &m, &m).unwrap();
        assert_eq!(c.k(), 4);
        assert_eq!(c.edges_of_class(3).count_ones(..), 2);
        assert_eq!(c.circuits().len(), 1);
        assert_eq!(c.sigma(0).unwrap(), 4);
    }

    #[test]
    fn petersen_distinct_triple() {
        let g = generate_graph(Family::Petersen, None).unwrap();
        let ms: Vec<_> = perfect_matchings(&g, usize::MAX).collect();
        for a in 0..6 {
            for b in a + 1..6 {
                assert_eq!(ms[a].intersection(&ms[b]).count(), 1);
                for c in b + 1..6 {
                    let core = core_from_triple(&g, &ms[a], &ms[b], &ms[c]).unwrap();
                    assert_eq!(core.k(), 3);
                    assert_eq!(core.edges_of_class(2).count_ones(..), 3);
                    assert_eq!(core.edges_of_class(3).count_ones(..), 0);
                    assert_eq!(core.circuits().len(), 1);
                    assert_eq!(core.circuits()[0].len(), 6);
                    assert_eq!(core.sigma(0).unwrap(), 0);
                    assert!(core.omega().is_empty());
                }
            }
        }
    }

    #[test]
    fn rejects_non_matching() {
        let g = generate_graph(Family::K4, None).unwrap();
        let m = perfect_matchings(&g, 1).next().unwrap();
        let bad = g.edge_set([0, 1]);
        assert_eq!(core_from_triple(&g, &m, &bad, &m), Err(FactorError::NotPerfectMatching { index: 2 }));
    }

    #[test]
    fn mu3_examples() {
        for fam in [Family::K4, Family::K33] {
            let g = generate_graph(fam, None).unwrap();
            assert_eq!(compute_mu3(&g, DEFAULT_MU3_BUDGET).unwrap().mu3, 0);
        }
        let g = generate_graph(Family::Prism, Some(5)).unwrap();
        assert_eq!(compute_mu3(&g, DEFAULT_MU3_BUDGET).unwrap().mu3, 0);
        let g = generate_graph(Family::Petersen, None).unwrap();
        let r = compute_mu3(&g, DEFAULT_MU3_BUDGET).unwrap();
        assert_eq!((r.mu3, r.exact), (3, true));
        assert_eq!(r.witness.k(), 3);
        // 6 matchings give 56 multisets of size 3; pruning skips some
        assert!(r.triples_examined <= 56);
        assert!(r.ties >= 1);
    }

    #[test]
    fn mu3_budget_and_bridges() {
        let g = generate_graph(Family::Petersen, None).unwrap();
        assert_eq!(compute_mu3(&g, 0).unwrap_err(), FactorError::ZeroBudget);
        let r = compute_mu3(&g, 1).unwrap();
        assert!(!r.exact);
        assert!(r.mu3 >= 3);
        let block = |o: usize| {
            vec![(o, o + 4), (o + 4, o + 1), (o, o + 2), (o, o + 3), (o + 1, o + 2), (o + 1, o + 3), (o + 2, o + 3)]
        };
        let mut edges = block(0);
        edges.extend(block(5));
        edges.push((4, 9));
        let g = CubicGraph::from_edges(10, edges).unwrap();
        assert!(matches!(compute_mu3(&g, 100), Err(FactorError::NotBridgeless { .. })));
    }

    #[test]
    fn spec_round_trip() {
        let g = generate_graph(Family::Petersen, None).unwrap();
        let core = compute_mu3(&g, DEFAULT_MU3_BUDGET).unwrap().witness;
        let json = serde_json::to_string(&core.spec()).unwrap();
        assert!(json.starts_with("{\"M1\":["));
        let back: CoreSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(Core::from_spec(&g, &back).unwrap(), core);
    }

    #[test]
    fn omega_and_gc_links_on_two_triangles() {
        // Two triangles a, b joined by three edges: K3 x K2, i.e. prism(3).
        // M = the three rungs taken thrice gives circuits with σ = 3.
        let g = generate_graph(Family::Prism, Some(3)).unwrap();
        let rungs = g.edge_set(6..9);
        let c = core_from_triple(&g, &rungs, &rungs, &rungs).unwrap();
        assert_eq!(c.circuits().len(), 2);
        assert_eq!(c.sigma(0).unwrap(), 3);
        assert!(c.omega().is_empty());
        assert!(matches!(c.gc_connected(&g, 0, 1), Err(FactorError::NotInOmega(0))));
    }
}
