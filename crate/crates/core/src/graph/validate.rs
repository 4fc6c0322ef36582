use super::{CubicGraph, EdgeId};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub is_cubic: bool,
    pub is_connected: bool,
    pub is_bridgeless: bool,
    pub bridges: Vec<EdgeId>,
}

/// Structural checks. Bridges come from an iterative lowpoint DFS that skips
/// the tree edge by id, so a doubled edge is never reported as a bridge.
pub fn validate(g: &CubicGraph) -> ValidationReport {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut bridges = Vec::new();
    let mut timer = 0;
    let mut components = 0;

    // (vertex, edge used to enter it, next incidence slot)
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        components += 1;
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        stack.push((root, usize::MAX, 0));
        while let Some(&mut (v, via, ref mut slot)) = stack.last_mut() {
            if *slot < 3 {
                let e = g.incident(v)[*slot];
                *slot += 1;
                if e == via {
                    continue;
                }
                let w = g.other_end(e, v);
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, e, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(parent, _, _)) = stack.last() {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] > disc[parent] {
                        bridges.push(via);
                    }
                }
            }
        }
    }
    bridges.sort_unstable();
    ValidationReport {
        is_cubic: true,
        is_connected: components <= 1,
        is_bridgeless: bridges.is_empty(),
        bridges,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_graph, Family};

    #[test]
    fn petersen_is_bridgeless_and_connected() {
        let r = validate(&generate_graph(Family::Petersen, None).unwrap());
        assert!(r.is_connected && r.is_bridgeless && r.bridges.is_empty());
    }

    #[test]
    fn two_disjoint_k4() {
        let mut edges = generate_graph(Family::K4, None).unwrap().edges().to_vec();
        let shifted: Vec<_> = edges.iter().map(|&(u, v)| (u + 4, v + 4)).collect();
        edges.extend(shifted);
        let g = CubicGraph::from_edges(8, edges).unwrap();
        let r = validate(&g);
        assert!(!r.is_connected);
        assert!(r.is_bridgeless);
    }

    #[test]
    fn bridge_between_two_blocks() {
        // Two copies of K4 with one edge subdivided; the subdivision vertices
        // 4 and 9 are joined by the only bridge.
        let block = |o: usize| {
            vec![(o, o + 4), (o + 4, o + 1), (o, o + 2), (o, o + 3), (o + 1, o + 2), (o + 1, o + 3), (o + 2, o + 3)]
        };
        let mut edges = block(0);
        edges.extend(block(5));
        edges.push((4, 9));
        let g = CubicGraph::from_edges(10, edges).unwrap();
        let r = validate(&g);
        assert!(r.is_connected);
        assert!(!r.is_bridgeless);
        assert_eq!(r.bridges, vec![14]);
    }

    #[test]
    fn doubled_edge_is_not_a_bridge() {
        let g = CubicGraph::from_edges(2, vec![(0, 1), (0, 1), (0, 1)]).unwrap();
        assert!(validate(&g).is_bridgeless);
    }
}
