use super::local::{charge, charge_met, closed_neighbourhood, improve, search_best, LOCAL_SEARCH_BUDGET};
use super::template::apply_subcase_32;
use super::{ComponentKind, PncError, RepairOutcome, RepairRecord, Run};
use crate::coloring::{
    edge_status, extend_123, extend_123_exempt, is_extendable, psi_connected, theta_sum, EdgeStatus, Extension,
    PartialColoring, ALL,
};
use crate::graph::{boundary_of, Circuit, CubicGraph, EdgeId, PathSeg, Piece, VertexId};
use crate::wave::{build_wave, verify_wave, WaveString};
use std::cell::Cell;

/// Predicate calls allowed inside one required extension.
const REQUIRE_BUDGET: u64 = 200_000;
/// Largest variable count handed to exhaustive search during scope repairs.
const SCOPE_SEARCH_VARS: usize = 16;

fn other_high(c: u8) -> u8 {
    9 - c
}

/// Colors `edges` in order with `start` and the other high color alternately.
fn fill_alternating(g: &CubicGraph, col: &PartialColoring, edges: &[EdgeId], start: u8) -> Option<PartialColoring> {
    let mut out = col.clone();
    let mut c = start;
    for &e in edges {
        out.set(g, e, c).ok()?;
        c = other_high(c);
    }
    Some(out)
}

/// Applies `(edge, color)` assignments in order, replacing earlier colors.
fn assign(g: &CubicGraph, col: &PartialColoring, steps: &[(EdgeId, u8)]) -> Option<PartialColoring> {
    let mut out = col.clone();
    for &(e, c) in steps {
        out.set(g, e, c).ok()?;
    }
    Some(out)
}

/// The edge at `v` not on `c`.
fn pendant(g: &CubicGraph, c: &Circuit, v: VertexId) -> EdgeId {
    *g.incident(v).iter().find(|e| !c.edges.contains(e)).expect("a circuit vertex has a pendant")
}

/// Colors other than `e`'s at the far end `v` of `e`.
fn lacks(g: &CubicGraph, col: &PartialColoring, e: EdgeId, v: VertexId, x: u8) -> bool {
    g.others_at(v, e).iter().all(|&f| col.color(f) != x)
}

/// The part of a string left after its paths: arcs and connectors in order,
/// forming one path from the far end of the first path to the far end of the last.
fn string_remainder(g: &CubicGraph, core: &crate::factor::Core, s: &WaveString) -> Vec<EdgeId> {
    let att = s.chain().attachments(g, core);
    let t = s.connectors.len();
    let mut out = Vec::new();
    for j in 0..=t {
        let c = &core.circuits()[s.circuits[j]];
        let p = &s.paths[j];
        let entry = if j == 0 {
            let (x, y) = p.ends();
            if x == att[0].0 {
                y
            } else {
                x
            }
        } else {
            att[j - 1].1
        };
        let oriented = if *p.vertices.last().expect("nonempty path") == entry { p.clone() } else { p.reversed() };
        if let Some(arc) = c.complement(&oriented) {
            out.extend(arc.edges);
        }
        if j < t {
            out.push(s.connectors[j]);
        }
    }
    out
}

impl Run<'_> {
    fn circuit(&self, i: usize) -> Circuit {
        self.core.circuits()[i].clone()
    }

    fn in_wave(&self, i: usize) -> bool {
        self.wave.as_ref().is_some_and(|w| w.contains_circuit(i))
    }

    /// Extension of `pieces` satisfying `pred`, with a bounded number of
    /// predicate calls.
    fn required(&self, pieces: &[Piece], pred: &dyn Fn(&PartialColoring) -> bool) -> Option<PartialColoring> {
        let calls = Cell::new(0u64);
        let bounded = |c: &PartialColoring| {
            calls.set(calls.get() + 1);
            calls.get() > REQUIRE_BUDGET || pred(c)
        };
        match extend_123(self.g, &self.col, pieces, Some(&bounded)) {
            Extension::Extended(c) if pred(&c) => Some(c),
            _ => None,
        }
    }

    /// Repairs toward `θ(scope) ≥ 0` by recoloring `vars`.
    fn repair_scope(&mut self, target: String, reason: String, vars: &[EdgeId], scope: &[EdgeId]) -> Result<(), PncError> {
        if !self.repair {
            return Err(self.error(format!("{target}: {reason}")));
        }
        let g = self.g;
        let core = &self.core;
        let value = |c: &PartialColoring| {
            let filled = vars.iter().filter(|&&e| c.is_colored(e)).count() as i64;
            filled * (1 << 32) + theta_sum(g, core, c, scope.iter().copied())
        };
        let theta_before = theta_sum(g, core, &self.col, scope.iter().copied());
        let mut best = self.col.clone();
        let mut best_v = value(&best);
        if vars.len() <= SCOPE_SEARCH_VARS {
            if let Some((c, v)) = search_best(g, &self.col, vars, &|_| ALL, &value, LOCAL_SEARCH_BUDGET) {
                if v > best_v {
                    best = c;
                    best_v = v;
                }
            }
        }
        for &e in vars {
            if best.is_colored(e) {
                continue;
            }
            let pick = (1..=5)
                .filter(|&c| best.admits(g, e, c))
                .map(|c| {
                    let mut t = best.clone();
                    t.put(g, e, c);
                    (value(&t), c)
                })
                .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
            if let Some((_, c)) = pick {
                best.put(g, e, c);
            }
        }
        let mut movable = vec![false; g.m()];
        for &e in vars {
            movable[e] = true;
        }
        improve(g, &mut best, &movable, &value);
        let _ = best_v;
        let theta_after = theta_sum(g, core, &best, scope.iter().copied());
        let outcome = RepairOutcome {
            charge_met: theta_after >= 0 && vars.iter().all(|&e| best.is_colored(e)),
            changed: best != self.col,
            theta_before,
            theta_after,
        };
        self.col = best;
        let stage = self.stage().stage;
        self.stage().repairs.push(RepairRecord { stage, target, reason, outcome });
        Ok(())
    }

    pub(super) fn stage_even_circuits(&mut self) -> Result<(), PncError> {
        self.begin(2, "even_circuits");
        for i in 0..self.core.circuits().len() {
            let c = self.circuit(i);
            if c.is_odd() {
                continue;
            }
            self.stage().targets += 1;
            self.add_component(ComponentKind::EvenCircuit, vec![i], c.edges.clone());
            match fill_alternating(self.g, &self.col, &c.edges, 4) {
                Some(next) => self.col = next,
                None => self.fail(format!("circuit {i}"), "4/5 alternation blocked".into(), &c.edges)?,
            }
        }
        self.check_components()?;
        self.end()
    }

    pub(super) fn stage_wave(&mut self) -> Result<(), PncError> {
        self.begin(3, "wave");
        match build_wave(self.g, &self.core) {
            Err(_) => self.note("no string"),
            Ok(w) => {
                let report = verify_wave(self.g, &self.core, &w);
                if !report.ok {
                    self.note(format!("wave check failed: {:?}", report));
                }
                for (si, s) in w.strings.iter().enumerate() {
                    self.stage().targets += 1;
                    self.color_string(si, s)?;
                }
                self.wave = Some(w);
            }
        }
        self.check_components()?;
        self.end()
    }

    fn color_string(&mut self, si: usize, s: &WaveString) -> Result<(), PncError> {
        let g = self.g;
        let circuits: Vec<Circuit> = s.circuits.iter().map(|&i| self.circuit(i)).collect();
        let pieces: Vec<Piece> = s.paths.iter().cloned().map(Piece::Path).collect();
        let rest = string_remainder(g, &self.core, s);
        let edges: Vec<EdgeId> =
            circuits.iter().flat_map(|c| c.edges.iter().copied()).chain(s.connectors.iter().copied()).collect();
        self.add_component(ComponentKind::String, s.circuits.clone(), edges.clone());
        let target = format!("string {si}");

        let core_owned = self.core.clone();
        let core = &core_owned;
        let strong = |c: &PartialColoring| {
            let (t, b) = charge(g, core, c, &edges);
            t >= 2 && t >= b as i64
        };
        let pick = |c: &PartialColoring, pred: &dyn Fn(&PartialColoring) -> bool| {
            [4, 5].into_iter().filter_map(|x| fill_alternating(g, c, &rest, x)).find(|f| pred(f))
        };

        let plain = match extend_123(g, &self.col, &pieces, None) {
            Extension::Extended(c) => c,
            _ => return self.fail(target, "path family not extendable".into(), &edges),
        };
        if let Some(done) = pick(&plain, &strong) {
            self.col = done;
            return Ok(());
        }
        let mut chosen = None;
        if s.connectors.len() == 1 && circuits.iter().all(|c| c.len() == 3) {
            let conn = s.connectors[0];
            let poor = |f: &PartialColoring| edge_status(g, f, conn) == EdgeStatus::Poor && strong(f);
            chosen = self.required(&pieces, &|c| pick(c, &poor).is_some()).and_then(|c| pick(&c, &poor));
            if chosen.is_some() {
                self.note(format!("{target}: connector made poor"));
            }
        }
        if chosen.is_none() {
            chosen = self.required(&pieces, &|c| pick(c, &strong).is_some()).and_then(|c| pick(&c, &strong));
            if chosen.is_some() {
                self.note(format!("{target}: extension chosen for the charge"));
            }
        }
        match chosen {
            Some(c) => {
                self.col = c;
                Ok(())
            }
            None => {
                let best = [4, 5]
                    .into_iter()
                    .filter_map(|x| fill_alternating(g, &plain, &rest, x))
                    .max_by_key(|f| {
                        let (t, b) = charge(g, core, f, &edges);
                        std::cmp::Reverse(-(t - b as i64))
                    });
                if let Some(b) = best {
                    self.col = b;
                }
                if charge_met(g, &self.core, &self.col, &edges) {
                    self.note(format!("{target}: charge met below 2"));
                    Ok(())
                } else {
                    self.fail(target, "string charge below |𝓔|".into(), &edges)
                }
            }
        }
    }

    pub(super) fn stage_odd_circuits(&mut self) -> Result<(), PncError> {
        self.begin(4, "odd_circuits");
        for i in 0..self.core.circuits().len() {
            if !self.core.circuits()[i].is_odd() || self.in_wave(i) || self.core.in_omega(i) {
                continue;
            }
            self.stage().targets += 1;
            self.color_odd_circuit(i)?;
        }
        self.check_components()?;
        self.end()
    }

    fn color_odd_circuit(&mut self, i: usize) -> Result<(), PncError> {
        let g = self.g;
        let c = self.circuit(i);
        let edges = c.edges.clone();
        self.add_component(ComponentKind::OddCircuit, vec![i], edges.clone());
        let target = format!("circuit {i}");
        if let Extension::Extended(next) = extend_123(g, &self.col, &[Piece::Circuit(c.clone())], None) {
            self.col = next;
            return Ok(());
        }
        let mut q: Option<PathSeg> = None;
        for len in (2..c.len()).rev() {
            for start in 0..c.len() {
                let p = c.arc(start, true, len);
                let meets = boundary_of(g, &Piece::Path(p.clone())).iter().any(|&e| self.core.class(e) == 3);
                let better = q.as_ref().is_none_or(|b| p.vertices < b.vertices);
                if meets && better && is_extendable(g, &self.col, &[Piece::Path(p.clone())]) {
                    q = Some(p);
                }
            }
            if q.is_some() {
                break;
            }
        }
        let Some(q) = q else {
            return self.fail(target, "no extendable arc meets E3".into(), &edges);
        };
        let rest = c.complement(&q).expect("q has edges");
        let e0 = edges.iter().filter(|&&e| self.core.class(e) == 0).count();
        let extended =
            || extend_123(g, &self.col, &[Piece::Path(q.clone())], None).extended().expect("q is extendable");
        let (label, candidates): (&str, Vec<PartialColoring>) = if rest.edges.len() > 1 {
            let base = extended();
            ("case 1", [4, 5].into_iter().filter_map(|x| fill_alternating(g, &base, &rest.edges, x)).collect())
        } else if e0 >= 5 {
            let base = extended();
            ("case 2", [4, 5].into_iter().filter_map(|x| assign(g, &base, &[(rest.edges[0], x)])).collect())
        } else {
            ("case 3", self.seven_circuit(i, &c))
        };
        match candidates.iter().find(|n| charge_met(g, &self.core, n, &edges)) {
            Some(n) => {
                self.note(format!("{target}: {label}"));
                self.col = n.clone();
                Ok(())
            }
            None => {
                let detail = format!(
                    "{label}: odd circuit charge below |𝓔| (length {}, gap {}, |E0| {e0}, {} candidates)",
                    c.len(),
                    rest.edges.len(),
                    candidates.len()
                );
                if let Some(n) = candidates.into_iter().next() {
                    self.col = n;
                }
                self.fail(target, detail, &edges)
            }
        }
    }

    /// Candidates for a 7-circuit with one `E_3` pendant that is one edge
    /// short of being extendable.
    fn seven_circuit(&mut self, i: usize, c: &Circuit) -> Vec<PartialColoring> {
        let g = self.g;
        let sigma = self.core.sigma(i).unwrap_or(0);
        let fs: Vec<EdgeId> =
            boundary_of(g, &Piece::Circuit(c.clone())).into_iter().filter(|&e| self.core.class(e) == 3).collect();
        if sigma != 1 || c.len() != 7 || fs.len() != 1 || self.col.is_colored(fs[0]) {
            self.note(format!("circuit {i}: not a 7-circuit with one free E3 pendant"));
            return Vec::new();
        }
        let f = fs[0];
        let w = c.vertices.iter().copied().find(|&v| g.is_incident(f, v)).expect("f touches c");
        let used: u8 = c
            .vertices
            .iter()
            .filter(|&&v| v != w)
            .fold(0, |m, &v| m | crate::coloring::bit(self.col.color(pendant(g, c, v))));
        if used.count_ones() <= 2 {
            let pos = c.position(w).expect("w on c");
            let k = c.len();
            let (ea, eb) = (c.edges[pos], c.edges[(pos + k - 1) % k]);
            let path = c.arc((pos + 1) % k, true, k - 2);
            let mut out = Vec::new();
            for gamma in (1..=3).filter(|&x| used & crate::coloring::bit(x) == 0) {
                for (x, y) in [(4, 5), (5, 4)] {
                    if let Some(n) = assign(g, &self.col, &[(f, gamma), (ea, x), (eb, y)]) {
                        if let Some(done) = extend_123(g, &n, &[Piece::Path(path.clone())], None).extended() {
                            out.push(done);
                        }
                    }
                }
            }
            if out.is_empty() {
                self.note(format!("circuit {i}: subcase 3.1 recipe does not extend"));
            }
            out
        } else {
            let out: Vec<PartialColoring> = apply_subcase_32(g, &self.col, c, f).into_iter().collect();
            if out.is_empty() {
                self.note(format!("circuit {i}: pendants do not match the subcase 3.2 pattern"));
            }
            out
        }
    }

    pub(super) fn stage_omega_pairs(&mut self) -> Result<(), PncError> {
        self.begin(5, "omega_pairs");
        let g = self.g;
        let list: Vec<usize> = (0..self.core.circuits().len())
            .filter(|&i| self.core.circuits()[i].is_odd() && !self.in_wave(i) && self.core.in_omega(i))
            .collect();
        let mut done = vec![false; self.core.circuits().len()];
        for (x, &a) in list.iter().enumerate() {
            for &b in &list[x + 1..] {
                if done[a] || done[b] {
                    continue;
                }
                if psi_connected(g, &self.core, &self.col, a, b).unwrap_or(false) {
                    done[a] = true;
                    done[b] = true;
                    self.stage().targets += 1;
                    self.color_psi_pair(a, b)?;
                }
            }
        }
        for (x, &a) in list.iter().enumerate() {
            for &b in &list[x + 1..] {
                if done[a] || done[b] {
                    continue;
                }
                if self.core.gc_connected(g, a, b).unwrap_or(false) {
                    done[a] = true;
                    done[b] = true;
                    self.stage().targets += 1;
                    self.color_gc_pair(a, b)?;
                }
            }
        }
        self.remaining = list.into_iter().filter(|&i| !done[i]).collect();
        self.check_components()?;
        self.end()
    }

    fn color_psi_pair(&mut self, a: usize, b: usize) -> Result<(), PncError> {
        let g = self.g;
        let (ca, cb) = (self.circuit(a), self.circuit(b));
        let (ea, eb) = (self.core.omega_e3(a).expect("omega"), self.core.omega_e3(b).expect("omega"));
        let end_on = |c: &Circuit, e: EdgeId| {
            let (x, y) = g.endpoints(e);
            if c.contains_vertex(x) {
                (x, y)
            } else {
                (y, x)
            }
        };
        let ((ua, xa), (ub, xb)) = (end_on(&ca, ea), end_on(&cb, eb));
        let link = g.incident(xa).iter().copied().find(|&f| {
            f != ea && g.other_end(f, xa) == xb && self.col.color(f) >= 4
        });
        let target = format!("pair {a}-{b}");
        let mut edges: Vec<EdgeId> = ca.edges.iter().chain(cb.edges.iter()).copied().chain([ea, eb]).collect();
        let owner = link.and_then(|f| self.comps.iter().position(|k| k.active && k.edges.contains(&f)));
        let mut circuits = vec![a, b];
        if let Some(o) = owner {
            self.comps[o].active = false;
            edges.extend(self.comps[o].edges.clone());
            circuits.extend(self.comps[o].circuits.clone());
        } else if let Some(f) = link {
            edges.push(f);
        }
        self.add_component(ComponentKind::PsiPair, circuits, edges.clone());
        let Some(link) = link else {
            return self.fail(target, "no high edge joins the pendants".into(), &edges);
        };
        let c0 = self.col.color(link);
        let mut best: Option<(PartialColoring, bool, i64)> = None;
        'search: for fa in [true, false] {
            for fb in [true, false] {
                let arc_a = ca.arc(ca.position(ua).expect("on circuit"), fa, ca.len() - 1);
                let arc_b = cb.arc(cb.position(ub).expect("on circuit"), fb, cb.len() - 1);
                let ya = self.col.color(pendant(g, &ca, arc_a.vertices[1]));
                let yb = self.col.color(pendant(g, &cb, arc_b.vertices[1]));
                for alpha in (1..=3).filter(|&x| x != ya && x != yb) {
                    let mut n = self.col.clone();
                    n.unset(g, link);
                    let steps = [(ea, c0), (eb, c0), (link, alpha), (arc_a.edges[0], alpha), (arc_b.edges[0], alpha)];
                    let Some(mut n) = assign(g, &n, &steps) else { continue };
                    let mut ok = true;
                    for (c, arc) in [(&ca, &arc_a), (&cb, &arc_b)] {
                        match finish_from_second(g, &n, c, arc) {
                            Some(next) => n = next,
                            None => ok = false,
                        }
                    }
                    if !ok {
                        continue;
                    }
                    let each = [&ca, &cb].iter().all(|c| theta_sum(g, &self.core, &n, c.edges.iter().copied()) >= 1);
                    let (t, bad) = charge(g, &self.core, &n, &edges);
                    let met = each && t >= bad as i64;
                    let margin = t - bad as i64;
                    if best.as_ref().is_none_or(|(_, m, v)| (met, margin) > (*m, *v)) {
                        best = Some((n, met, margin));
                    }
                    if met {
                        break 'search;
                    }
                }
            }
        }
        match best {
            Some((n, true, _)) => {
                self.col = n;
                Ok(())
            }
            Some((n, false, _)) => {
                self.col = n;
                self.fail(target, "pair charge below |𝓔|".into(), &edges)
            }
            None => self.fail(target, "no admissible α".into(), &edges),
        }
    }

    fn color_gc_pair(&mut self, a: usize, b: usize) -> Result<(), PncError> {
        let g = self.g;
        let (ca, cb) = (self.circuit(a), self.circuit(b));
        let e = self.core.gc_links(g, a, b).next().expect("connected pair");
        let edges: Vec<EdgeId> = ca.edges.iter().chain(cb.edges.iter()).copied().chain([e]).collect();
        self.add_component(ComponentKind::GcPair, vec![a, b], edges.clone());
        let target = format!("pair {a}-{b}");
        let (u, v) = g.endpoints(e);
        let mut candidates = Vec::new();
        if ca.len() == 3 && cb.len() == 3 {
            let mut n = self.col.clone();
            n.unset(g, e);
            let link = Piece::Path(PathSeg { vertices: vec![u, v], edges: vec![e] });
            let pieces = [Piece::Circuit(ca.clone()), Piece::Circuit(cb.clone()), link];
            if let Some(done) = extend_123(g, &n, &pieces, None).extended() {
                candidates.push(done);
            }
        } else if let Some(n) = assign(g, &self.col, &[(e, 4)]) {
            let mut partial = vec![n];
            for c in [&ca, &cb] {
                let mut next = Vec::new();
                for n in &partial {
                    if let Some(done) = extend_123_exempt(g, n, &[Piece::Circuit(c.clone())], &[e]).extended() {
                        next.push(done);
                        continue;
                    }
                    let w = if c.contains_vertex(u) { u } else { v };
                    let pos = c.position(w).expect("e touches c");
                    let k = c.len();
                    for (drop, from) in [(c.edges[pos], (pos + 1) % k), (c.edges[(pos + k - 1) % k], pos)] {
                        // the path c - drop starts at the far end of `drop`
                        let path = c.arc(from, true, k - 1);
                        debug_assert!(!path.edges.contains(&drop));
                        if let Some(done) = extend_123(g, n, &[Piece::Path(path)], None).extended() {
                            if let Some(done) = assign(g, &done, &[(drop, 5)]) {
                                next.push(done);
                            }
                        }
                    }
                }
                partial = next;
            }
            candidates = partial;
        }
        match candidates.iter().find(|n| charge_met(g, &self.core, n, &edges)) {
            Some(n) => {
                self.col = n.clone();
                Ok(())
            }
            None => {
                if let Some(n) = candidates.into_iter().next() {
                    self.col = n;
                }
                self.fail(target, "pair charge below |𝓔|".into(), &edges)
            }
        }
    }

    /// Edges outside the listed circuits and their boundaries.
    fn outside(&self, circuits: &[usize]) -> Vec<EdgeId> {
        let mut banned = vec![false; self.g.m()];
        for &i in circuits {
            let c = &self.core.circuits()[i];
            for &e in c.edges.iter().chain(boundary_of(self.g, &Piece::Circuit(c.clone())).iter()) {
                banned[e] = true;
            }
        }
        (0..self.g.m()).filter(|&e| !banned[e]).collect()
    }

    pub(super) fn stage_e3(&mut self) -> Result<(), PncError> {
        self.begin(6, "e3_edges");
        let g = self.g;
        let scope = self.outside(&self.remaining.clone());
        let mut in_scope = vec![false; g.m()];
        for &e in &scope {
            in_scope[e] = true;
        }
        for e in self.core.edges_of_class(3).ones().collect::<Vec<_>>() {
            if self.col.is_colored(e) || !in_scope[e] {
                continue;
            }
            self.stage().targets += 1;
            let near = closed_neighbourhood(g, &[e]);
            let pick = (1..=5)
                .filter(|&c| self.col.admits(g, e, c))
                .map(|c| {
                    let mut t = self.col.clone();
                    t.put(g, e, c);
                    (theta_sum(g, &self.core, &t, near.iter().copied()), c)
                })
                .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
            match pick {
                Some((_, c)) => self.col.put(g, e, c),
                None => self.fail(format!("edge {e}"), "no admissible color".into(), &[e])?,
            }
        }
        let uncolored: Vec<EdgeId> = scope.iter().copied().filter(|&e| !self.col.is_colored(e)).collect();
        let theta = theta_sum(g, &self.core, &self.col, scope.iter().copied());
        self.note(format!("theta outside remaining circuits: {theta}"));
        if theta < 0 || !uncolored.is_empty() {
            let vars: Vec<EdgeId> = if uncolored.is_empty() { scope.clone() } else { uncolored };
            self.repair_scope("outside remaining circuits".into(), format!("theta {theta} < 0"), &vars, &scope)?;
        }
        self.end()
    }

    pub(super) fn stage_remaining(&mut self) -> Result<(), PncError> {
        self.begin(7, "remaining_omega");
        let list = self.remaining.clone();
        for (x, &i) in list.iter().enumerate() {
            self.stage().targets += 1;
            let scope = self.outside(&list[x + 1..]);
            self.color_remaining(i, &scope)?;
        }
        self.final_checks()?;
        self.end()
    }

    fn color_remaining(&mut self, i: usize, scope: &[EdgeId]) -> Result<(), PncError> {
        let g = self.g;
        let c = self.circuit(i);
        let candidates = self.remaining_candidates(i, &c);
        let value = |n: &PartialColoring| theta_sum(g, &self.core, n, scope.iter().copied());
        let complete = |n: &PartialColoring| c.edges.iter().all(|&e| n.is_colored(e));
        let mut best: Option<(PartialColoring, i64)> = None;
        let mut tried = Vec::new();
        for (label, n) in candidates {
            let v = value(&n);
            tried.push(format!("{label} gives {v}"));
            if v >= 0 && complete(&n) {
                self.note(format!("circuit {i}: {label}"));
                self.col = n;
                return Ok(());
            }
            if best.as_ref().is_none_or(|(_, b)| v > *b) {
                best = Some((n, v));
            }
        }
        if let Some((n, _)) = best {
            self.col = n;
        }
        let mut vars: Vec<EdgeId> = c.edges.clone();
        vars.extend(boundary_of(g, &Piece::Circuit(c.clone())));
        vars.sort_unstable();
        vars.dedup();
        let tried = if tried.is_empty() { "no candidate".to_string() } else { tried.join(", ") };
        self.repair_scope(format!("circuit {i}"), format!("no case reaches θ ≥ 0 ({tried})"), &vars, scope)
    }

    fn remaining_candidates(&mut self, i: usize, c: &Circuit) -> Vec<(&'static str, PartialColoring)> {
        let g = self.g;
        let snapshot = self.col.clone();
        let col = &snapshot;
        let Ok(e) = self.core.omega_e3(i) else { return Vec::new() };
        let (x, y) = g.endpoints(e);
        let (u1, v1) = if c.contains_vertex(x) { (x, y) } else { (y, x) };
        let [e1, e2] = g.others_at(v1, e);
        let mut highs = [col.color(e1), col.color(e2)];
        highs.sort_unstable();
        if col.is_colored(e) || highs != [4, 5] {
            self.note(format!("circuit {i}: pendant E3 edge not free between 4 and 5"));
            return Vec::new();
        }
        let gamma = |ei: EdgeId| {
            (1..=3).find(|&x| {
                let mut n = col.clone();
                n.set(g, e, x).is_ok() && edge_status(g, &n, ei).is_normal()
            })
        };
        let (Some(g1), Some(g2)) = (gamma(e1), gamma(e2)) else {
            self.note(format!("circuit {i}: no color makes both neighbours normal"));
            return Vec::new();
        };
        let k = c.len();
        let mut out = Vec::new();
        for forward in [true, false] {
            let arc = c.arc(c.position(u1).expect("u1 on c"), forward, k - 1);
            let mut cedges = arc.edges.clone();
            cedges.push(c.complement(&arc).expect("nonempty").edges[0]);
            let pend: Vec<EdgeId> = arc.vertices[1..].iter().map(|&v| pendant(g, c, v)).collect();
            let colors: Vec<u8> = pend.iter().map(|&p| col.color(p)).collect();
            if colors.iter().any(|&x| !(1..=3).contains(&x)) {
                self.note(format!("circuit {i}: pendant colors {colors:?} leave 1, 2, 3"));
                continue;
            }
            let mut set: Vec<u8> = colors.clone();
            set.sort_unstable();
            set.dedup();
            let with = |pre: &[(EdgeId, u8)], seq: &[u8]| {
                let mut steps = pre.to_vec();
                steps.push((e, seq[0]));
                steps.extend(cedges.iter().copied().zip(seq[1..].iter().copied()));
                assign(g, col, &steps)
            };
            if set.len() == 1 {
                let c1 = set[0];
                let others: Vec<u8> = (1..=3).filter(|&x| x != c1).collect();
                if g1 != c1 || g2 != c1 {
                    let gm = if g1 != c1 { g1 } else { g2 };
                    let t = 6 - c1 - gm;
                    let seq: Vec<u8> = if k == 3 { vec![gm, 4, t, 5] } else { vec![gm, 4, t, gm, t, 5] };
                    out.extend(with(&[], &seq).map(|n| ("subcase 1.1", n)));
                    continue;
                }
                let u2 = arc.vertices[1];
                let p2 = pend[0];
                let v2 = g.other_end(p2, u2);
                let free: Vec<u8> = others.iter().copied().filter(|&x| lacks(g, col, p2, v2, x)).collect();
                if !free.is_empty() {
                    let done = free.iter().find_map(|&x| {
                        assign(g, col, &[(p2, x)])
                            .and_then(|n| extend_123(g, &n, &[Piece::Circuit(c.clone())], None).extended())
                    });
                    match done {
                        Some(done) => out.push(("subcase 1.2", done)),
                        None => self.note(format!("circuit {i}: subcase 1.2 does not extend")),
                    }
                    continue;
                }
                let pk = pend[k - 2];
                let vk = g.other_end(pk, arc.vertices[k - 1]);
                if others.iter().any(|&x| lacks(g, col, pk, vk, x)) {
                    continue;
                }
                let (a, b) = (others[0], others[1]);
                if k == 3 {
                    out.extend(with(&[(p2, 4), (pk, 5)], &[c1, 5, c1, 4]).map(|n| ("subcase 1.3", n)));
                } else {
                    for (x, y) in [(b, a), (a, b)] {
                        out.extend(with(&[(p2, 4)], &[c1, 5, x, y, x, y]).map(|n| ("subcase 1.3", n)));
                    }
                }
            } else if set.len() == 2 && k == 5 {
                let t = 6 - set[0] - set[1];
                out.extend(with(&[], &[colors[0], 4, 5, 4, t, 5]).map(|n| ("case 2", n)));
            } else {
                self.note(format!("circuit {i}: pendant colors {colors:?} fit no case"));
            }
        }
        out
    }

    fn final_checks(&mut self) -> Result<(), PncError> {
        let g = self.g;
        let all: Vec<EdgeId> = (0..g.m()).collect();
        let uncolored: Vec<EdgeId> = all.iter().copied().filter(|&e| !self.col.is_colored(e)).collect();
        if !uncolored.is_empty() {
            let reason = format!("{} edges left uncolored", uncolored.len());
            self.repair_scope("graph".into(), reason, &uncolored, &all)?;
        }
        let theta = theta_sum(g, &self.core, &self.col, all.iter().copied());
        if theta < 0 {
            self.repair_scope("graph".into(), format!("total theta {theta} < 0"), &all, &all)?;
        }
        Ok(())
    }
}

/// Extends the longest extendable path `u_2 u_3 …` of `arc` (whose first edge
/// is already colored) and colors the rest of the circuit back to `u_1` with
/// high colors.
fn finish_from_second(g: &CubicGraph, col: &PartialColoring, c: &Circuit, arc: &PathSeg) -> Option<PartialColoring> {
    let k = c.len();
    let mut base = col.clone();
    let mut j = 0;
    for len in (1..k - 1).rev() {
        let p = PathSeg { vertices: arc.vertices[1..=1 + len].to_vec(), edges: arc.edges[1..1 + len].to_vec() };
        if let Some(done) = extend_123(g, col, &[Piece::Path(p)], None).extended() {
            base = done;
            j = len;
            break;
        }
    }
    let mut rest: Vec<EdgeId> = vec![c.complement(arc)?.edges[0]];
    rest.extend(arc.edges[1 + j..].iter().rev());
    for e in rest {
        let x = [4, 5].into_iter().find(|&x| base.admits(g, e, x))?;
        base.set(g, e, x).ok()?;
    }
    Some(base)
}
