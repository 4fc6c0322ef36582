//! Strings and waves of a core.
//!
//! A string is a chain `C_0 e_1 C_1 … e_t C_t` of distinct odd circuits of
//! `G[E_0 ∪ E_2]` linked by `E_3` edges. A wave is a disjoint family of
//! strings together with one path per circuit: middle paths join the two
//! attachment vertices, end paths start at the single attachment vertex.

use crate::coloring::{extend_123, major_coloring, Extension, PartialColoring};
use crate::factor::Core;
use crate::graph::{boundary_of, Circuit, CubicGraph, EdgeId, PathSeg, Piece, VertexId};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WaveError {
    #[error("core has no string")]
    NoString,
}

/// A chain of odd circuits (core circuit indices) and their `E_3` links.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoreString {
    pub circuits: Vec<usize>,
    pub connectors: Vec<EdgeId>,
}

impl CoreString {
    /// `(u_i, v_i)` for each connector: `u_i` on circuit `i - 1`, `v_i` on circuit `i`.
    pub fn attachments(&self, g: &CubicGraph, core: &Core) -> Vec<(VertexId, VertexId)> {
        self.connectors
            .iter()
            .enumerate()
            .map(|(i, &e)| {
                let (a, b) = g.endpoints(e);
                if core.circuit_of_vertex(a) == Some(self.circuits[i]) {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WaveString {
    pub circuits: Vec<usize>,
    pub connectors: Vec<EdgeId>,
    /// One path per circuit, in string order.
    pub paths: Vec<PathSeg>,
}

impl WaveString {
    pub fn chain(&self) -> CoreString {
        CoreString { circuits: self.circuits.clone(), connectors: self.connectors.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Wave {
    pub strings: Vec<WaveString>,
    /// Odd circuits in no string.
    pub q: Vec<usize>,
}

impl Wave {
    pub fn path_pieces(&self) -> Vec<Piece> {
        self.strings.iter().flat_map(|s| s.paths.iter().cloned().map(Piece::Path)).collect()
    }

    pub fn contains_circuit(&self, c: usize) -> bool {
        self.strings.iter().any(|s| s.circuits.contains(&c))
    }
}

const STRING_SEARCH_STEPS: usize = 1_000_000;

/// Greedy maximal family of disjoint strings among odd circuits not marked
/// `used`: repeatedly take a longest chain (ties: smallest circuit sequence,
/// then smallest connector sequence).
pub fn find_strings_excluding(g: &CubicGraph, core: &Core, used: &[bool]) -> Vec<CoreString> {
    let circuits = core.circuits();
    let mut taken: Vec<bool> = (0..circuits.len()).map(|i| used.get(i).copied().unwrap_or(false)).collect();
    let mut links: Vec<Vec<(usize, EdgeId)>> = vec![Vec::new(); circuits.len()];
    for e in core.edges_of_class(3).ones() {
        let (a, b) = g.endpoints(e);
        if let (Some(x), Some(y)) = (core.circuit_of_vertex(a), core.circuit_of_vertex(b)) {
            if x != y && circuits[x].is_odd() && circuits[y].is_odd() {
                links[x].push((y, e));
                links[y].push((x, e));
            }
        }
    }
    for l in &mut links {
        l.sort_unstable();
    }
    let mut out = Vec::new();
    loop {
        let mut best: Option<CoreString> = None;
        let mut steps = 0usize;
        for start in 0..circuits.len() {
            if taken[start] || !circuits[start].is_odd() {
                continue;
            }
            let mut chain = CoreString { circuits: vec![start], connectors: vec![] };
            let mut on = taken.clone();
            on[start] = true;
            longest_from(&links, &mut on, &mut chain, &mut best, &mut steps);
        }
        match best {
            Some(s) if !s.connectors.is_empty() => {
                for &c in &s.circuits {
                    taken[c] = true;
                }
                out.push(s);
            }
            _ => return out,
        }
    }
}

fn better(a: &CoreString, b: &CoreString) -> bool {
    (a.circuits.len(), std::cmp::Reverse((&a.circuits, &a.connectors)))
        > (b.circuits.len(), std::cmp::Reverse((&b.circuits, &b.connectors)))
}

fn longest_from(
    links: &[Vec<(usize, EdgeId)>],
    on: &mut [bool],
    chain: &mut CoreString,
    best: &mut Option<CoreString>,
    steps: &mut usize,
) {
    *steps += 1;
    if best.as_ref().is_none_or(|b| better(chain, b)) {
        *best = Some(chain.clone());
    }
    if *steps > STRING_SEARCH_STEPS {
        return;
    }
    let last = *chain.circuits.last().expect("nonempty chain");
    for &(next, e) in &links[last] {
        if on[next] {
            continue;
        }
        on[next] = true;
        chain.circuits.push(next);
        chain.connectors.push(e);
        longest_from(links, on, chain, best, steps);
        chain.circuits.pop();
        chain.connectors.pop();
        on[next] = false;
    }
}

pub fn find_strings(g: &CubicGraph, core: &Core) -> Vec<CoreString> {
    find_strings_excluding(g, core, &[])
}

/// Paths on `c` with `anchor` as first vertex, one per direction and length
/// `1..|C|`, in the order (length, vertex sequence).
fn anchored_paths(c: &Circuit, anchor: VertexId) -> Vec<PathSeg> {
    let pos = c.position(anchor).expect("anchor on circuit");
    let mut out: Vec<PathSeg> = (1..c.len())
        .flat_map(|len| [true, false].map(|fw| c.arc(pos, fw, len)))
        .collect();
    out.sort_by(|a, b| (a.len(), &a.vertices).cmp(&(b.len(), &b.vertices)));
    out.dedup();
    out
}

/// Whether `p` together with the already chosen `fixed` paths is extendable.
fn extendable(g: &CubicGraph, col: &PartialColoring, fixed: &[Piece], p: &PathSeg) -> bool {
    let mut pieces = fixed.to_vec();
    pieces.push(Piece::Path(p.clone()));
    matches!(extend_123(g, col, &pieces, None), Extension::Extended(_))
}

/// One side of a string: from `anchor` on circuit `start`, repeatedly take
/// the shortest extendable path whose far end leads by an `E_3` edge to an
/// odd circuit outside `in_wave`; finish with the longest extendable path.
/// Extendability is joint with every path in `fixed`, and chosen paths are
/// appended to it. Returns (circuits, connectors leaving each circuit, paths).
fn grow_side(
    g: &CubicGraph,
    core: &Core,
    col: &PartialColoring,
    fixed: &mut Vec<Piece>,
    in_wave: &mut [bool],
    start: usize,
    anchor: VertexId,
) -> (Vec<usize>, Vec<EdgeId>, Vec<PathSeg>) {
    let circuits = core.circuits();
    let (mut cur, mut at) = (start, anchor);
    let (mut chain, mut links, mut paths) = (vec![start], Vec::new(), Vec::new());
    loop {
        let c = &circuits[cur];
        let candidates = anchored_paths(c, at);
        let step = candidates.iter().find_map(|p| {
            let w = *p.vertices.last().expect("nonempty path");
            let f = core.e3_at(w)?;
            let x = g.other_end(f, w);
            let cx = core.circuit_of_vertex(x)?;
            (circuits[cx].is_odd() && !in_wave[cx] && extendable(g, col, fixed, p)).then(|| (p.clone(), f, x, cx))
        });
        match step {
            Some((p, f, x, cx)) => {
                in_wave[cx] = true;
                fixed.push(Piece::Path(p.clone()));
                paths.push(p);
                links.push(f);
                chain.push(cx);
                cur = cx;
                at = x;
            }
            None => {
                let longest = candidates
                    .iter()
                    .rev()
                    .filter(|p| extendable(g, col, fixed, p))
                    .max_by(|a, b| a.len().cmp(&b.len()).then_with(|| b.vertices.cmp(&a.vertices)))
                    .cloned()
                    .unwrap_or_else(|| PathSeg::single(at));
                if !longest.is_empty() {
                    fixed.push(Piece::Path(longest.clone()));
                }
                paths.push(longest);
                return (chain, links, paths);
            }
        }
    }
}

/// Builds a wave by growing strings from seed connectors until no string
/// avoids the wave.
pub fn build_wave(g: &CubicGraph, core: &Core) -> Result<Wave, WaveError> {
    let phi_m = major_coloring(g, core);
    let circuits = core.circuits();
    let mut in_wave = vec![false; circuits.len()];
    let mut strings = Vec::new();
    let mut fixed: Vec<Piece> = Vec::new();
    while let Some(seed) = find_strings_excluding(g, core, &in_wave).into_iter().next() {
        let e = seed.connectors[0];
        let (u, v) = seed.attachments(g, core)[0];
        let (cu, cv) = (seed.circuits[0], seed.circuits[1]);
        in_wave[cu] = true;
        in_wave[cv] = true;

        // the v side is grown jointly with the u-side paths against the
        // major coloring, so every end path stays maximal for the whole family
        let (u_chain, u_links, u_paths) = grow_side(g, core, &phi_m, &mut fixed, &mut in_wave, cu, u);
        let (v_chain, v_links, v_paths) = grow_side(g, core, &phi_m, &mut fixed, &mut in_wave, cv, v);

        // u side reversed, then the seed connector, then the v side
        let mut s = WaveString {
            circuits: u_chain.iter().rev().copied().collect(),
            connectors: u_links.iter().rev().copied().collect(),
            paths: u_paths.into_iter().rev().collect(),
        };
        s.connectors.push(e);
        s.circuits.extend(v_chain);
        s.connectors.extend(v_links);
        s.paths.extend(v_paths);
        strings.push(s);
    }
    if strings.is_empty() {
        return Err(WaveError::NoString);
    }
    let q = (0..circuits.len()).filter(|&i| circuits[i].is_odd() && !in_wave[i]).collect();
    Ok(Wave { strings, q })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Component {
    Q { circuit: usize },
    P { string: usize, index: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EndPathCheck {
    pub string: usize,
    pub index: usize,
    /// Set when the path is too long (or empty) for the lengthened path to exist.
    pub skipped: bool,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WaveReport {
    pub structure: Vec<String>,
    pub item1: bool,
    pub item2: Vec<EndPathCheck>,
    pub item3: Vec<(Component, Component, EdgeId)>,
    pub ok: bool,
}

fn path_on_circuit(c: &Circuit, p: &PathSeg) -> bool {
    if p.vertices.len() != p.edges.len() + 1 || p.edges.len() >= c.len() {
        return false;
    }
    let Some(start) = c.position(p.vertices[0]) else { return false };
    [true, false].iter().any(|&fw| &c.arc(start, fw, p.edges.len()) == p)
}

/// Independent check of the three wave conditions against the major coloring.
pub fn verify_wave(g: &CubicGraph, core: &Core, wave: &Wave) -> WaveReport {
    let circuits = core.circuits();
    let phi_m = major_coloring(g, core);
    let mut structure = Vec::new();
    let mut owner = vec![None; circuits.len()];
    for (si, s) in wave.strings.iter().enumerate() {
        if s.circuits.len() < 2 || s.connectors.len() + 1 != s.circuits.len() || s.paths.len() != s.circuits.len() {
            structure.push(format!("string {si}: inconsistent lengths"));
            continue;
        }
        for &c in &s.circuits {
            if c >= circuits.len() || !circuits[c].is_odd() {
                structure.push(format!("string {si}: circuit {c} is not an odd core circuit"));
            } else if owner[c].replace(si).is_some() {
                structure.push(format!("string {si}: circuit {c} used twice"));
            }
        }
        if !structure.is_empty() {
            continue;
        }
        let att = CoreString { circuits: s.circuits.clone(), connectors: s.connectors.clone() }.attachments(g, core);
        for (i, &e) in s.connectors.iter().enumerate() {
            let (a, b) = g.endpoints(e);
            let (ca, cb) = (core.circuit_of_vertex(a), core.circuit_of_vertex(b));
            let pair = [Some(s.circuits[i]), Some(s.circuits[i + 1])];
            if core.class(e) != 3 || !(pair == [ca, cb] || pair == [cb, ca]) {
                structure.push(format!("string {si}: connector {e} does not link its circuits"));
            }
        }
        let t = s.connectors.len();
        for (j, p) in s.paths.iter().enumerate() {
            if !path_on_circuit(&circuits[s.circuits[j]], p) {
                structure.push(format!("string {si}: path {j} is not on its circuit"));
                continue;
            }
            let (x, y) = p.ends();
            let ok = match j {
                0 => x == att[0].0 || y == att[0].0,
                _ if j == t => x == att[t - 1].1 || y == att[t - 1].1,
                _ => {
                    let (l, r) = (att[j - 1].1, att[j].0);
                    (x == l && y == r) || (x == r && y == l)
                }
            };
            if !ok {
                structure.push(format!("string {si}: path {j} has wrong ends"));
            }
        }
    }
    let expected_q: Vec<usize> =
        (0..circuits.len()).filter(|&i| circuits[i].is_odd() && owner[i].is_none()).collect();
    if expected_q != wave.q {
        structure.push("Q is not the set of odd circuits outside the strings".into());
    }

    let pieces = wave.path_pieces();
    let item1 = matches!(extend_123(g, &phi_m, &pieces, None), Extension::Extended(_));

    let mut item2 = Vec::new();
    let mut flat = 0usize;
    let mut offsets = Vec::new();
    for s in &wave.strings {
        offsets.push(flat);
        flat += s.paths.len();
    }
    if structure.is_empty() {
        for (si, s) in wave.strings.iter().enumerate() {
            let att = s.chain().attachments(g, core);
            let t = s.connectors.len();
            for (j, anchor) in [(0, att[0].0), (t, att[t - 1].1)] {
                let c = &circuits[s.circuits[j]];
                let p = &s.paths[j];
                let skipped = p.edges.is_empty() || p.edges.len() + 2 > c.len();
                let mut holds = true;
                if !skipped {
                    let mut q = if p.vertices[0] == anchor { p.clone() } else { p.reversed() };
                    let rest = c.complement(&q).expect("nonempty path");
                    q.edges.push(rest.edges[0]);
                    q.vertices.push(rest.vertices[1]);
                    let mut alt = pieces.clone();
                    alt[offsets[si] + j] = Piece::Path(q);
                    holds = !matches!(extend_123(g, &phi_m, &alt, None), Extension::Extended(_));
                }
                item2.push(EndPathCheck { string: si, index: j, skipped, holds });
            }
        }
    }

    let mut comps: Vec<(Component, Vec<EdgeId>)> = wave
        .q
        .iter()
        .filter(|&&c| c < circuits.len())
        .map(|&c| (Component::Q { circuit: c }, boundary_of(g, &Piece::Circuit(circuits[c].clone()))))
        .collect();
    for (si, s) in wave.strings.iter().enumerate() {
        for (j, p) in s.paths.iter().enumerate() {
            comps.push((Component::P { string: si, index: j }, boundary_of(g, &Piece::Path(p.clone()))));
        }
    }
    let mut item3 = Vec::new();
    for (a, (ca, ba)) in comps.iter().enumerate() {
        if !matches!(ca, Component::Q { .. }) {
            continue;
        }
        for (b, (cb, bb)) in comps.iter().enumerate() {
            if a == b || (matches!(cb, Component::Q { .. }) && b < a) {
                continue;
            }
            for &e in ba {
                if core.class(e) == 3 && bb.contains(&e) {
                    item3.push((*ca, *cb, e));
                }
            }
        }
    }
    let ok = structure.is_empty() && item1 && item2.iter().all(|c| c.holds) && item3.is_empty();
    WaveReport { structure, item1, item2, item3, ok }
}
