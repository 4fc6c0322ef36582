use super::{PartialColoring, LOW};
use crate::graph::{boundary_of, CubicGraph, EdgeId, Piece};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NotExtendable {
    /// A piece edge is colored, or a colored boundary edge has color 4 or 5.
    Precondition { edge: EdgeId },
    NoAssignment,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Extension {
    Extended(PartialColoring),
    /// Extension exists, but none satisfies the predicate.
    RequireUnsatisfied { plain: PartialColoring },
    NotExtendable(NotExtendable),
}

impl Extension {
    pub fn extended(self) -> Option<PartialColoring> {
        match self {
            Extension::Extended(c) => Some(c),
            _ => None,
        }
    }

    /// Any extension, ignoring whether the predicate held.
    pub fn any(self) -> Option<PartialColoring> {
        match self {
            Extension::Extended(c) | Extension::RequireUnsatisfied { plain: c } => Some(c),
            Extension::NotExtendable(_) => None,
        }
    }
}

/// Variables of an extension: piece edges in piece order, then the uncolored
/// boundary edges ascending. `exempt` edges skip the low-color check on the
/// boundary.
fn vars_with(
    g: &CubicGraph,
    col: &PartialColoring,
    pieces: &[Piece],
    exempt: &[EdgeId],
) -> Result<Vec<EdgeId>, NotExtendable> {
    let mut seen = vec![false; g.m()];
    let mut vars = Vec::new();
    for p in pieces {
        for &e in p.edges() {
            if col.is_colored(e) {
                return Err(NotExtendable::Precondition { edge: e });
            }
            if !std::mem::replace(&mut seen[e], true) {
                vars.push(e);
            }
        }
    }
    let mut rest = Vec::new();
    for p in pieces {
        for e in boundary_of(g, p) {
            if seen[e] {
                continue;
            }
            match col.get(e) {
                Some(c) if c > 3 && !exempt.contains(&e) => {
                    return Err(NotExtendable::Precondition { edge: e })
                }
                Some(_) => {}
                None => rest.push(e),
            }
        }
    }
    rest.sort_unstable();
    rest.dedup();
    vars.extend(rest);
    Ok(vars)
}

pub fn extension_vars(g: &CubicGraph, col: &PartialColoring, pieces: &[Piece]) -> Result<Vec<EdgeId>, NotExtendable> {
    vars_with(g, col, pieces, &[])
}

/// Depth-first search over `vars` in order with colors ascending; returns the
/// first full assignment that `accept` takes.
pub fn solve(
    g: &CubicGraph,
    col: &PartialColoring,
    vars: &[EdgeId],
    domain: &dyn Fn(EdgeId) -> u8,
    accept: &mut dyn FnMut(&PartialColoring) -> bool,
) -> Option<PartialColoring> {
    fn go(
        g: &CubicGraph,
        work: &mut PartialColoring,
        vars: &[EdgeId],
        domain: &dyn Fn(EdgeId) -> u8,
        accept: &mut dyn FnMut(&PartialColoring) -> bool,
    ) -> bool {
        let Some((&e, rest)) = vars.split_first() else {
            return accept(work);
        };
        let (u, v) = g.endpoints(e);
        let free = domain(e) & !(work.palette(u) | work.palette(v));
        for c in super::colors_in(free) {
            work.put(g, e, c);
            if go(g, work, rest, domain, accept) {
                return true;
            }
            work.unset(g, e);
        }
        false
    }
    let mut work = col.clone();
    go(g, &mut work, vars, domain, accept).then_some(work)
}

/// Splits variables into groups that share no vertex, keeping order.
fn independent_groups(g: &CubicGraph, vars: &[EdgeId]) -> Vec<Vec<EdgeId>> {
    let mut parent: Vec<usize> = (0..vars.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    let mut owner = std::collections::HashMap::new();
    for (i, &e) in vars.iter().enumerate() {
        let (u, v) = g.endpoints(e);
        for w in [u, v] {
            if let Some(&j) = owner.get(&w) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            } else {
                owner.insert(w, i);
            }
        }
    }
    let mut groups: Vec<Vec<EdgeId>> = Vec::new();
    let mut slot = std::collections::HashMap::new();
    for (i, &e) in vars.iter().enumerate() {
        let r = find(&mut parent, i);
        let k = *slot.entry(r).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[k].push(e);
    }
    groups
}

fn extend_impl(
    g: &CubicGraph,
    col: &PartialColoring,
    pieces: &[Piece],
    require: Option<&dyn Fn(&PartialColoring) -> bool>,
    exempt: &[EdgeId],
) -> Extension {
    let vars = match vars_with(g, col, pieces, exempt) {
        Ok(v) => v,
        Err(r) => return Extension::NotExtendable(r),
    };
    let low = |_: EdgeId| LOW;
    match require {
        None => {
            // groups touch disjoint vertex sets, so the first solutions combine
            let mut work = col.clone();
            for group in independent_groups(g, &vars) {
                match solve(g, &work, &group, &low, &mut |_| true) {
                    Some(next) => work = next,
                    None => return Extension::NotExtendable(NotExtendable::NoAssignment),
                }
            }
            Extension::Extended(work)
        }
        Some(pred) => {
            let mut plain = None;
            let found = solve(g, col, &vars, &low, &mut |c| {
                if plain.is_none() {
                    plain = Some(c.clone());
                }
                pred(c)
            });
            match (found, plain) {
                (Some(c), _) => Extension::Extended(c),
                (None, Some(p)) => Extension::RequireUnsatisfied { plain: p },
                (None, None) => Extension::NotExtendable(NotExtendable::NoAssignment),
            }
        }
    }
}

/// Colors the pieces and their uncolored boundary from {1,2,3}, keeping the
/// coloring proper. Pieces must be uncolored and colored boundary edges low.
pub fn extend_123(
    g: &CubicGraph,
    col: &PartialColoring,
    pieces: &[Piece],
    require: Option<&dyn Fn(&PartialColoring) -> bool>,
) -> Extension {
    extend_impl(g, col, pieces, require, &[])
}

/// As [`extend_123`], with the listed boundary edges allowed any color.
pub fn extend_123_exempt(g: &CubicGraph, col: &PartialColoring, pieces: &[Piece], exempt: &[EdgeId]) -> Extension {
    extend_impl(g, col, pieces, None, exempt)
}

pub fn is_extendable(g: &CubicGraph, col: &PartialColoring, pieces: &[Piece]) -> bool {
    matches!(extend_123(g, col, pieces, None), Extension::Extended(_))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::edge_status;
    use crate::coloring::EdgeStatus;
    use crate::graph::{generate_graph, Circuit, Family, PathSeg};

    #[test]
    fn single_edge_gets_color_one() {
        let g = generate_graph(Family::K4, None).unwrap();
        let col = PartialColoring::new(&g);
        let p = Piece::Path(PathSeg { vertices: vec![0, 1], edges: vec![0] });
        let out = extend_123(&g, &col, &[p], None).extended().unwrap();
        assert_eq!(out.colors(), &[1, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn triangle_with_pendants() {
        let g = generate_graph(Family::K4, None).unwrap();
        // triangle 0-1-2 uses edges 0 (0,1), 3 (1,2), 1 (0,2)
        let tri = Piece::Circuit(Circuit { vertices: vec![0, 1, 2], edges: vec![0, 3, 1] });
        let out = extend_123(&g, &PartialColoring::new(&g), std::slice::from_ref(&tri), None).extended().unwrap();
        assert!(out.is_total());
        assert!(out.colors().iter().all(|&c| (1..=3).contains(&c)));
        let mut col = PartialColoring::new(&g);
        col.set(&g, 2, 4).unwrap();
        assert_eq!(
            extend_123(&g, &col, std::slice::from_ref(&tri), None),
            Extension::NotExtendable(NotExtendable::Precondition { edge: 2 })
        );
        assert!(extend_123_exempt(&g, &col, &[tri], &[2]).extended().is_some());
    }

    #[test]
    fn blocked_and_required() {
        let g = generate_graph(Family::Prism, Some(3)).unwrap();
        let tri = Piece::Circuit(Circuit { vertices: vec![0, 1, 2], edges: vec![0, 1, 2] });
        let mut col = PartialColoring::new(&g);
        // all three rungs 1 leaves only two colors for a triangle
        for e in 6..9 {
            col.set(&g, e, 1).unwrap();
        }
        assert_eq!(
            extend_123(&g, &col, std::slice::from_ref(&tri), None),
            Extension::NotExtendable(NotExtendable::NoAssignment)
        );
        let col = PartialColoring::new(&g);
        let never = |_: &PartialColoring| false;
        assert!(matches!(
            extend_123(&g, &col, std::slice::from_ref(&tri), Some(&never)),
            Extension::RequireUnsatisfied { .. }
        ));
        let g2 = g.clone();
        let want = move |c: &PartialColoring| c.color(6) == 3;
        let out = extend_123(&g, &col, &[tri], Some(&want)).extended().unwrap();
        assert_eq!(out.color(6), 3);
        // the triangle and all three rungs are colored from {1,2,3}
        assert_eq!(edge_status(&g2, &out, 0), EdgeStatus::Poor);
        assert_eq!(edge_status(&g2, &out, 3), EdgeStatus::Undetermined);
    }
}
