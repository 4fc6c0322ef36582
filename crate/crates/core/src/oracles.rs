//! Exhaustive ground truth for small graphs.
//!
//! Nothing here reuses the coloring engine: colorings are plain `Vec<u8>`
//! (0 = unset) and normality is recomputed locally, so these searches can
//! serve as independent checks of the pipeline.

use crate::graph::{generate_graph, CubicGraph, EdgeId, Family};
use serde::Serialize;
use std::collections::VecDeque;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", content = "witness", rename_all = "snake_case")]
pub enum Outcome<T> {
    Found(T),
    /// The search space was exhausted without a witness.
    Exhausted,
    BudgetExceeded,
}

impl<T> Outcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Outcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, Outcome::Found(_))
    }
}

/// Edges ordered by breadth-first discovery from vertex 0 (then from the
/// lowest unvisited vertex of each further component).
pub fn bfs_edge_order(g: &CubicGraph) -> Vec<EdgeId> {
    let mut seen_v = vec![false; g.n()];
    let mut seen_e = vec![false; g.m()];
    let mut order = Vec::with_capacity(g.m());
    for root in 0..g.n() {
        if seen_v[root] {
            continue;
        }
        seen_v[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &e in g.incident(v) {
                if !std::mem::replace(&mut seen_e[e], true) {
                    order.push(e);
                }
                let w = g.other_end(e, v);
                if !std::mem::replace(&mut seen_v[w], true) {
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

fn free_at(g: &CubicGraph, colors: &[u8], e: EdgeId, c: u8) -> bool {
    let (u, v) = g.endpoints(e);
    g.incident(u).iter().chain(g.incident(v)).all(|&f| f == e || colors[f] != c)
}

/// Colors on `e` and its neighbours, or `None` while any is unset.
fn closed_colors(g: &CubicGraph, colors: &[u8], e: EdgeId) -> Option<u8> {
    let (u, v) = g.endpoints(e);
    let mut mask = 0u8;
    for &f in g.incident(u).iter().chain(g.incident(v)) {
        if colors[f] == 0 {
            return None;
        }
        mask |= 1 << colors[f];
    }
    Some(mask)
}

fn is_normal_mask(mask: u8) -> bool {
    matches!(mask.count_ones(), 3 | 5)
}

/// Number of normal edges of a total coloring.
pub fn count_normal(g: &CubicGraph, colors: &[u8]) -> usize {
    (0..g.m())
        .filter(|&e| closed_colors(g, colors, e).is_some_and(is_normal_mask))
        .count()
}

/// Whether `colors` is a total proper coloring with colors in 1..=5.
pub fn is_proper_total(g: &CubicGraph, colors: &[u8]) -> bool {
    colors.len() == g.m()
        && colors.iter().all(|c| (1..=5).contains(c))
        && (0..g.m()).all(|e| free_at(g, colors, e, colors[e]))
}

/// Exact proper 3-edge-coloring by backtracking.
pub fn three_edge_coloring(g: &CubicGraph) -> Option<Vec<u8>> {
    fn go(g: &CubicGraph, order: &[EdgeId], i: usize, colors: &mut [u8]) -> bool {
        let Some(&e) = order.get(i) else { return true };
        for c in 1..=3 {
            if free_at(g, colors, e, c) {
                colors[e] = c;
                if go(g, order, i + 1, colors) {
                    return true;
                }
                colors[e] = 0;
            }
        }
        false
    }
    let order = bfs_edge_order(g);
    let mut colors = vec![0u8; g.m()];
    go(g, &order, 0, &mut colors).then_some(colors)
}

/// Shared search state for the 5-color oracles. Colors on the first vertex
/// are fixed to 1, 2, 3 and color 5 is only tried once 4 is in use, which
/// removes the color symmetry.
struct FiveSearch<'g> {
    g: &'g CubicGraph,
    order: Vec<EdgeId>,
    fixed: usize,
    colors: Vec<u8>,
    uses4: usize,
    nodes: u64,
    budget: u64,
}

impl<'g> FiveSearch<'g> {
    fn new(g: &'g CubicGraph, budget: u64) -> Self {
        let order = bfs_edge_order(g);
        let mut colors = vec![0u8; g.m()];
        let mut fixed = 0;
        if g.n() > 0 {
            for (c, &e) in g.incident(0).iter().enumerate() {
                debug_assert_eq!(order[c], e);
                colors[e] = c as u8 + 1;
            }
            fixed = 3;
        }
        FiveSearch { g, order, fixed, colors, uses4: 0, nodes: 0, budget }
    }

    fn candidates(&self, e: EdgeId) -> impl Iterator<Item = u8> + '_ {
        let top = if self.uses4 > 0 { 5 } else { 4 };
        (1..=top).filter(move |&c| free_at(self.g, &self.colors, e, c))
    }

    fn assign(&mut self, e: EdgeId, c: u8) {
        self.colors[e] = c;
        if c == 4 {
            self.uses4 += 1;
        }
    }

    fn clear(&mut self, e: EdgeId) {
        if self.colors[e] == 4 {
            self.uses4 -= 1;
        }
        self.colors[e] = 0;
    }

    /// Abnormal edges whose neighbourhood was completed by coloring `e`.
    fn new_abnormal(&self, e: EdgeId) -> usize {
        let (u, v) = self.g.endpoints(e);
        let mut seen: Vec<EdgeId> = Vec::with_capacity(5);
        let mut count = 0;
        for &f in self.g.incident(u).iter().chain(self.g.incident(v)) {
            if seen.contains(&f) {
                continue;
            }
            seen.push(f);
            if closed_colors(self.g, &self.colors, f).is_some_and(|m| !is_normal_mask(m)) {
                count += 1;
            }
        }
        count
    }

    /// Abnormal count among edges already fully determined by the fixed star.
    fn initial_abnormal(&self) -> usize {
        (0..self.g.m())
            .filter(|&e| closed_colors(self.g, &self.colors, e).is_some_and(|m| !is_normal_mask(m)))
            .count()
    }
}

/// Searches for a normal 5-edge-coloring. `budget` caps search nodes.
pub fn brute_force_normal(g: &CubicGraph, budget: u64) -> Outcome<Vec<u8>> {
    fn go(s: &mut FiveSearch, i: usize) -> Option<bool> {
        let Some(&e) = s.order.get(i) else { return Some(true) };
        let cands: Vec<u8> = s.candidates(e).collect();
        for c in cands {
            s.nodes += 1;
            if s.nodes > s.budget {
                return None;
            }
            s.assign(e, c);
            if s.new_abnormal(e) == 0 && go(s, i + 1)? {
                return Some(true);
            }
            s.clear(e);
        }
        Some(false)
    }
    let mut s = FiveSearch::new(g, budget);
    if s.initial_abnormal() > 0 {
        return Outcome::Exhausted;
    }
    let start = s.fixed;
    match go(&mut s, start) {
        Some(true) => Outcome::Found(s.colors),
        Some(false) => Outcome::Exhausted,
        None => Outcome::BudgetExceeded,
    }
}

/// Largest number of normal edges over all proper 5-edge-colorings, with a
/// witness coloring.
pub fn max_normal_brute(g: &CubicGraph, budget: u64) -> Outcome<(usize, Vec<u8>)> {
    match brute_force_normal(g, budget) {
        Outcome::Found(c) => return Outcome::Found((g.m(), c)),
        Outcome::BudgetExceeded => return Outcome::BudgetExceeded,
        Outcome::Exhausted => {}
    }
    struct Best {
        abnormal: usize,
        colors: Vec<u8>,
    }
    fn go(s: &mut FiveSearch, i: usize, abnormal: usize, best: &mut Best) -> Option<()> {
        if abnormal >= best.abnormal {
            return Some(());
        }
        let Some(&e) = s.order.get(i) else {
            best.abnormal = abnormal;
            best.colors = s.colors.clone();
            return Some(());
        };
        let cands: Vec<u8> = s.candidates(e).collect();
        for c in cands {
            s.nodes += 1;
            if s.nodes > s.budget {
                return None;
            }
            s.assign(e, c);
            let more = s.new_abnormal(e);
            go(s, i + 1, abnormal + more, best)?;
            s.clear(e);
        }
        Some(())
    }
    let mut s = FiveSearch::new(g, budget);
    let mut best = Best { abnormal: g.m() + 1, colors: Vec::new() };
    let start = s.fixed;
    let base = s.initial_abnormal();
    match go(&mut s, start, base, &mut best) {
        Some(()) if !best.colors.is_empty() => Outcome::Found((g.m() - best.abnormal, best.colors)),
        Some(()) => Outcome::Exhausted,
        None => Outcome::BudgetExceeded,
    }
}

/// An edge map into the Petersen graph (edge ids of [`Family::Petersen`]).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HMapping {
    pub edge_map: Vec<EdgeId>,
}

fn petersen() -> CubicGraph {
    generate_graph(Family::Petersen, None).expect("fixed construction")
}

fn share_end(h: &CubicGraph, a: EdgeId, b: EdgeId) -> bool {
    let (x, y) = h.endpoints(a);
    h.is_incident(b, x) || h.is_incident(b, y)
}

/// Whether every vertex's three edges map to three distinct pairwise
/// adjacent Petersen edges (in a triangle-free graph: a full star).
pub fn is_petersen_coloring(g: &CubicGraph, map: &HMapping) -> bool {
    let h = petersen();
    map.edge_map.len() == g.m()
        && map.edge_map.iter().all(|&x| x < h.m())
        && (0..g.n()).all(|v| {
            let [a, b, c] = g.incident(v).map(|e| map.edge_map[e]);
            a != b && b != c && a != c && share_end(&h, a, b) && share_end(&h, b, c) && share_end(&h, a, c)
        })
}

/// Searches for a Petersen-coloring. The star at vertex 0 is pinned to the
/// star at Petersen vertex 0, which loses nothing because the automorphism
/// group is transitive on vertices and acts as S3 on each star.
pub fn petersen_coloring(g: &CubicGraph, budget: u64) -> Outcome<HMapping> {
    const UNSET: usize = usize::MAX;
    let h = petersen();
    let order = bfs_edge_order(g);
    let mut map = vec![UNSET; g.m()];
    let mut start = 0;
    if g.n() > 0 {
        for (i, &e) in g.incident(0).iter().enumerate() {
            map[e] = h.incident(0)[i];
        }
        start = 3;
    }
    let fits = |map: &[usize], e: EdgeId, x: EdgeId| {
        let (u, v) = g.endpoints(e);
        g.incident(u).iter().chain(g.incident(v)).all(|&f| {
            f == e || map[f] == UNSET || (map[f] != x && share_end(&h, map[f], x))
        })
    };
    fn go(
        order: &[EdgeId],
        i: usize,
        map: &mut Vec<usize>,
        nodes: &mut u64,
        budget: u64,
        fits: &dyn Fn(&[usize], EdgeId, EdgeId) -> bool,
        hm: usize,
    ) -> Option<bool> {
        let Some(&e) = order.get(i) else { return Some(true) };
        for x in 0..hm {
            if !fits(map, e, x) {
                continue;
            }
            *nodes += 1;
            if *nodes > budget {
                return None;
            }
            map[e] = x;
            if go(order, i + 1, map, nodes, budget, fits, hm)? {
                return Some(true);
            }
            map[e] = usize::MAX;
        }
        Some(false)
    }
    // the fixed star must itself be consistent (parallel edges at vertex 0)
    if g.n() > 0 && !g.incident(0).iter().all(|&e| fits(&map, e, map[e])) {
        return Outcome::Exhausted;
    }
    let mut nodes = 0;
    match go(&order, start, &mut map, &mut nodes, budget, &fits, h.m()) {
        Some(true) => Outcome::Found(HMapping { edge_map: map }),
        Some(false) => Outcome::Exhausted,
        None => Outcome::BudgetExceeded,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const B: u64 = 50_000_000;

    fn gen(f: Family, p: Option<usize>) -> CubicGraph {
        generate_graph(f, p).unwrap()
    }

    #[test]
    fn three_edge_colorability() {
        assert!(three_edge_coloring(&gen(Family::K4, None)).is_some());
        assert!(three_edge_coloring(&gen(Family::Prism, Some(3))).is_some());
        assert!(three_edge_coloring(&gen(Family::Petersen, None)).is_none());
        assert!(three_edge_coloring(&gen(Family::Flower, Some(5))).is_none());
        let c = three_edge_coloring(&gen(Family::MoebiusKantor, None)).unwrap();
        assert!(is_proper_total(&gen(Family::MoebiusKantor, None), &c));
    }

    #[test]
    fn normal_colorings_found() {
        for (f, p) in [(Family::K4, None), (Family::Petersen, None), (Family::Flower, Some(5))] {
            let g = gen(f, p);
            let c = brute_force_normal(&g, B).found().unwrap_or_else(|| panic!("{f:?}"));
            assert!(is_proper_total(&g, &c));
            assert_eq!(count_normal(&g, &c), g.m());
        }
    }

    #[test]
    fn max_normal_examples() {
        assert_eq!(max_normal_brute(&gen(Family::K4, None), B).found().unwrap().0, 6);
        assert_eq!(max_normal_brute(&gen(Family::K33, None), B).found().unwrap().0, 9);
        assert_eq!(max_normal_brute(&gen(Family::Petersen, None), B).found().unwrap().0, 15);
    }

    #[test]
    fn max_normal_on_bridged_graph() {
        // a bridge forbids a normal coloring, so the maximum is below m
        let block = |o: usize| {
            vec![(o, o + 4), (o + 4, o + 1), (o, o + 2), (o, o + 3), (o + 1, o + 2), (o + 1, o + 3), (o + 2, o + 3)]
        };
        let mut edges = block(0);
        edges.extend(block(5));
        edges.push((4, 9));
        let g = CubicGraph::from_edges(10, edges).unwrap();
        assert_eq!(brute_force_normal(&g, B), Outcome::Exhausted);
        let (best, c) = max_normal_brute(&g, B).found().unwrap();
        assert!(best < g.m());
        assert_eq!(count_normal(&g, &c), best);
        assert!(!petersen_coloring(&g, B).is_found());
    }

    #[test]
    fn petersen_colorings() {
        let p = gen(Family::Petersen, None);
        let id = HMapping { edge_map: (0..15).collect() };
        assert!(is_petersen_coloring(&p, &id));
        for (f, q) in [(Family::Petersen, None), (Family::K4, None), (Family::Flower, Some(5))] {
            let g = gen(f, q);
            let m = petersen_coloring(&g, B).found().unwrap();
            assert!(is_petersen_coloring(&g, &m), "{f:?}");
        }
        let bad = HMapping { edge_map: vec![0; 15] };
        assert!(!is_petersen_coloring(&p, &bad));
    }

    #[test]
    fn budgets_are_reported() {
        let g = gen(Family::Flower, Some(5));
        assert_eq!(brute_force_normal(&g, 3), Outcome::BudgetExceeded);
        assert_eq!(petersen_coloring(&g, 3), Outcome::BudgetExceeded);
    }
}
