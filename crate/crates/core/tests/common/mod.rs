#![allow(dead_code)]

use pnc_core::coloring::PartialColoring;
use pnc_core::factor::{core_from_triple, perfect_matchings, Core};
use pnc_core::graph::{parse_graph, validate, CubicGraph, EdgeSet, InputFormat};
use rand::seq::SliceRandom;
use rand::Rng;
use std::path::PathBuf;

pub fn corpus_path(n: usize) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("../../corpora/cubic{n:02}.g6"))
}

/// All graphs of the bundled corpus on `n` vertices, with their graph6 lines.
pub fn corpus(n: usize) -> Vec<(String, CubicGraph)> {
    let text = std::fs::read_to_string(corpus_path(n)).expect("corpus file");
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| (l.to_string(), parse_graph(l, InputFormat::Graph6).expect("corpus line parses")))
        .collect()
}

pub fn bridgeless_upto(max_n: usize) -> Vec<(String, CubicGraph)> {
    (4..=max_n)
        .step_by(2)
        .flat_map(corpus)
        .filter(|(_, g)| validate(g).is_bridgeless)
        .collect()
}

/// Up to `count` cores from a fixed spread of matching triples (repeats allowed).
pub fn sample_cores(g: &CubicGraph, count: usize) -> Vec<Core> {
    let ms: Vec<EdgeSet> = perfect_matchings(g, 12).collect();
    let mut out = Vec::new();
    for a in 0..ms.len() {
        for b in a..ms.len() {
            for c in b..ms.len() {
                if out.len() == count {
                    return out;
                }
                if (a * 7 + b * 3 + c) % 3 == 0 {
                    out.push(core_from_triple(g, &ms[a], &ms[b], &ms[c]).expect("matchings"));
                }
            }
        }
    }
    out
}

pub fn random_core<R: Rng>(g: &CubicGraph, rng: &mut R) -> Core {
    let ms: Vec<EdgeSet> = perfect_matchings(g, 64).collect();
    let pick = |rng: &mut R| ms.choose(rng).expect("bridgeless graphs have perfect matchings").clone();
    let (a, b, c) = (pick(rng), pick(rng), pick(rng));
    core_from_triple(g, &a, &b, &c).expect("matchings")
}

/// Random greedy proper coloring: every edge has at most four neighbours, so
/// some color of 1..=5 is always free.
pub fn random_full_coloring<R: Rng>(g: &CubicGraph, rng: &mut R) -> PartialColoring {
    let mut order: Vec<usize> = (0..g.m()).collect();
    order.shuffle(rng);
    let mut col = PartialColoring::new(g);
    for e in order {
        let free: Vec<u8> = (1..=5).filter(|&c| col.admits(g, e, c)).collect();
        col.set(g, e, *free.choose(rng).expect("a free color")).expect("admissible");
    }
    col
}

/// Minimum |E0| over every triple of perfect matchings, without pruning.
pub fn mu3_by_enumeration(g: &CubicGraph) -> usize {
    let ms: Vec<EdgeSet> = perfect_matchings(g, usize::MAX).collect();
    let mut best = g.m();
    for a in 0..ms.len() {
        for b in a..ms.len() {
            for c in b..ms.len() {
                let mut u = ms[a].clone();
                u.union_with(&ms[b]);
                u.union_with(&ms[c]);
                best = best.min(g.m() - u.count_ones(..));
            }
        }
    }
    best
}
