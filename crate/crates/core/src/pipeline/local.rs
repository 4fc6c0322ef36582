//! Bounded local searches used by the stages and by the repair layer.

use crate::coloring::{script_e, solve, theta_sum, PartialColoring, ALL};
use crate::factor::Core;
use crate::graph::{CubicGraph, EdgeId};
use serde::{Deserialize, Serialize};

/// Leaf budget for one exhaustive local search.
pub const LOCAL_SEARCH_BUDGET: u64 = 300_000;

/// θ of `edges` and the size of their 𝓔 set.
pub fn charge(g: &CubicGraph, core: &Core, col: &PartialColoring, edges: &[EdgeId]) -> (i64, usize) {
    let theta = theta_sum(g, core, col, edges.iter().copied());
    let bad = script_e(g, col, &g.edge_set(edges.iter().copied())).count_ones(..);
    (theta, bad)
}

pub fn charge_met(g: &CubicGraph, core: &Core, col: &PartialColoring, edges: &[EdgeId]) -> bool {
    let (t, b) = charge(g, core, col, edges);
    t >= b as i64
}

/// `edges` together with every edge adjacent to one of them, sorted.
pub fn closed_neighbourhood(g: &CubicGraph, edges: &[EdgeId]) -> Vec<EdgeId> {
    let mut out: Vec<EdgeId> = edges.iter().flat_map(|&e| g.adjacent_edges(e)).chain(edges.iter().copied()).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Enumerates proper assignments of `vars` (previous colors on them are
/// dropped) and keeps the first one of highest score. `None` when no proper
/// assignment exists.
pub fn search_best(
    g: &CubicGraph,
    col: &PartialColoring,
    vars: &[EdgeId],
    domain: &dyn Fn(EdgeId) -> u8,
    score: &dyn Fn(&PartialColoring) -> i64,
    budget: u64,
) -> Option<(PartialColoring, i64)> {
    let mut work = col.clone();
    for &e in vars {
        work.unset(g, e);
    }
    let mut best: Option<(PartialColoring, i64)> = None;
    let mut leaves = 0u64;
    solve(g, &work, vars, domain, &mut |c| {
        leaves += 1;
        let s = score(c);
        if best.as_ref().is_none_or(|(_, b)| s > *b) {
            best = Some((c.clone(), s));
        }
        leaves >= budget
    });
    best
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepairOutcome {
    pub charge_met: bool,
    pub changed: bool,
    pub theta_before: i64,
    pub theta_after: i64,
}

/// Recolors the edges of `component` over {1,…,5}, preferring colorings that
/// meet the component's charge and then higher θ on the affected edges.
/// A component whose charge already holds is returned unchanged.
pub fn repair_fallback(
    g: &CubicGraph,
    core: &Core,
    col: &PartialColoring,
    component: &[EdgeId],
) -> (PartialColoring, RepairOutcome) {
    let affected = closed_neighbourhood(g, component);
    let local = |c: &PartialColoring| theta_sum(g, core, c, affected.iter().copied());
    let theta_before = local(col);
    let complete = component.iter().all(|&e| col.is_colored(e));
    if complete && charge_met(g, core, col, component) {
        let out = RepairOutcome { charge_met: true, changed: false, theta_before, theta_after: theta_before };
        return (col.clone(), out);
    }
    let score = |c: &PartialColoring| {
        let met = charge_met(g, core, c, component) as i64;
        met * (1 << 32) + local(c)
    };
    let current = complete.then(|| score(col));
    let mut best = col.clone();
    if let Some((found, s)) = search_best(g, col, component, &|_| ALL, &score, LOCAL_SEARCH_BUDGET) {
        if current.is_none_or(|cur| s > cur) {
            best = found;
        }
    }
    let mut movable = vec![false; g.m()];
    for &e in component {
        movable[e] = true;
    }
    improve(g, &mut best, &movable, &|c| score(c));
    let out = RepairOutcome {
        charge_met: component.iter().all(|&e| best.is_colored(e)) && charge_met(g, core, &best, component),
        changed: best != *col,
        theta_before,
        theta_after: local(&best),
    };
    (best, out)
}

/// Greedy improvement: recolor single edges, then whole vertex stars, among
/// the movable colored edges while `score` strictly increases.
pub fn improve(
    g: &CubicGraph,
    col: &mut PartialColoring,
    movable: &[bool],
    score: &dyn Fn(&PartialColoring) -> i64,
) -> bool {
    let mut current = score(col);
    let mut any = false;
    for _ in 0..50 {
        let mut better = false;
        let candidates: Vec<EdgeId> = (0..g.m()).filter(|&e| movable[e] && col.is_colored(e)).collect();
        for e in candidates {
            let old = col.color(e);
            for c in 1..=5 {
                if c == old {
                    continue;
                }
                col.unset(g, e);
                if col.admits(g, e, c) {
                    col.put(g, e, c);
                    let s = score(col);
                    if s > current {
                        current = s;
                        better = true;
                        break;
                    }
                    col.unset(g, e);
                }
                col.put(g, e, old);
            }
        }
        for v in 0..g.n() {
            let star: Vec<EdgeId> = {
                let mut s = g.incident(v).to_vec();
                s.sort_unstable();
                s.dedup();
                s
            };
            if !star.iter().all(|&e| movable[e] && col.is_colored(e)) {
                continue;
            }
            if let Some((found, s)) = search_best(g, col, &star, &|_| ALL, score, 200) {
                if s > current {
                    *col = found;
                    current = s;
                    better = true;
                }
            }
        }
        any |= better;
        if !better {
            break;
        }
    }
    any
}
