//! Staged construction of a proper 5-edge-coloring with at most `k` abnormal
//! edges for a `k`-core; a μ₃-core gives the μ₃ bound.
//!
//! Every stage ends with checks of its charge inequalities. A failed check
//! triggers [`repair_fallback`] on the offending component (or an error when
//! repair is disabled), and the run records it.

mod dot;
mod local;
mod stages;
mod template;
mod verify;

pub use dot::to_dot;
pub use local::{charge, charge_met, closed_neighbourhood, improve, repair_fallback, search_best, RepairOutcome};
pub use template::{search_subcase_32, subcase_32_template, Template};
pub use verify::{verify_pnc, VerifyReport};

use crate::coloring::{abnormal_edges, edge_status, theta_total, PartialColoring};
use crate::factor::{compute_mu3, core_from_triple, Core, CoreSpec, FactorError, DEFAULT_MU3_BUDGET};
use crate::graph::{encode_preserving_ids, validate, CubicGraph, EdgeId};
use crate::oracles::three_edge_coloring;
use crate::wave::Wave;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PncOptions {
    pub repair: bool,
    pub mu3_budget: u64,
    /// Run the construction even when a 3-edge-coloring exists.
    pub force_construction: bool,
    /// Use this core instead of a computed μ₃-core (implies construction).
    pub core: Option<CoreSpec>,
}

impl Default for PncOptions {
    fn default() -> Self {
        PncOptions { repair: true, mu3_budget: DEFAULT_MU3_BUDGET, force_construction: false, core: None }
    }
}

#[derive(Debug, Error)]
pub enum PncError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has bridges {bridges:?}")]
    NotBridgeless { bridges: Vec<EdgeId> },
    #[error(transparent)]
    Factor(#[from] FactorError),
    #[error("stage {stage} failed: {reason}")]
    StageFailed { stage: u8, reason: String, stages: Vec<StageReport> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mu3Info {
    pub value: usize,
    pub exact: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentKind {
    EvenCircuit,
    String,
    OddCircuit,
    /// Two Ω circuits joined through a colored edge, merged with the
    /// component owning that edge.
    PsiPair,
    GcPair,
}

/// A charged subgraph: its charge `θ ≥ |𝓔|` is checked at stage ends.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub kind: ComponentKind,
    pub circuits: Vec<usize>,
    pub edges: Vec<EdgeId>,
    /// False once merged into a later component.
    pub active: bool,
    pub theta: i64,
    pub script_e: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepairRecord {
    pub stage: u8,
    pub target: String,
    pub reason: String,
    pub outcome: RepairOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageReport {
    pub stage: u8,
    pub name: String,
    pub targets: usize,
    pub colored: i64,
    pub theta_before: i64,
    pub theta_after: i64,
    /// Sum of |𝓔| over active components at stage end.
    pub script_e: usize,
    pub notes: Vec<String>,
    pub repairs: Vec<RepairRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PncResult {
    /// graph6 when decoding it reproduces the edge ids, the edge list
    /// otherwise; either way `coloring[e]` refers to edge `e` of this text.
    pub graph: String,
    pub n: usize,
    pub m: usize,
    /// For a supplied core, `value` is its `k` and `exact` is false.
    pub mu3: Mu3Info,
    pub k: usize,
    pub theta: i64,
    pub abnormal: Vec<EdgeId>,
    pub normal_count: usize,
    pub stages: Vec<StageReport>,
    pub coloring: Vec<u8>,
    pub core: CoreSpec,
    pub components: Vec<Component>,
    pub repairs: usize,
}

impl PncResult {
    pub fn partial_coloring(&self, g: &CubicGraph) -> Result<PartialColoring, crate::coloring::ColoringError> {
        PartialColoring::from_colors(g, &self.coloring)
    }
}

/// Mutable state shared by the stages.
pub(crate) struct Run<'a> {
    g: &'a CubicGraph,
    core: Core,
    col: PartialColoring,
    repair: bool,
    comps: Vec<Component>,
    stages: Vec<StageReport>,
    cur: Option<StageReport>,
    colored_before: usize,
    wave: Option<Wave>,
    /// Ω circuits left for the last stage.
    remaining: Vec<usize>,
    /// Components whose repair fell short; later checks do not retry them.
    unmet: Vec<bool>,
}

impl<'a> Run<'a> {
    fn new(g: &'a CubicGraph, core: Core, col: PartialColoring, repair: bool) -> Self {
        Run { g, core, col, repair, comps: Vec::new(), stages: Vec::new(), cur: None, colored_before: 0, wave: None, remaining: Vec::new(), unmet: Vec::new() }
    }

    fn begin(&mut self, stage: u8, name: &str) {
        self.colored_before = self.col.colored_count();
        self.cur = Some(StageReport {
            stage,
            name: name.into(),
            targets: 0,
            colored: 0,
            theta_before: theta_total(self.g, &self.core, &self.col),
            theta_after: 0,
            script_e: 0,
            notes: Vec::new(),
            repairs: Vec::new(),
        });
    }

    fn stage(&mut self) -> &mut StageReport {
        self.cur.as_mut().expect("inside a stage")
    }

    fn note(&mut self, text: impl Into<String>) {
        self.stage().notes.push(text.into());
    }

    fn end(&mut self) -> Result<(), PncError> {
        if let Some((v, a, b)) = self.col.find_conflict(self.g) {
            let reason = format!("edges {a} and {b} share a color at vertex {v}");
            return Err(self.error(reason));
        }
        let colored = self.col.colored_count() as i64 - self.colored_before as i64;
        let theta = theta_total(self.g, &self.core, &self.col);
        let bad = self.comps.iter().filter(|c| c.active).map(|c| charge(self.g, &self.core, &self.col, &c.edges).1).sum();
        let mut rep = self.cur.take().expect("inside a stage");
        rep.colored = colored;
        rep.theta_after = theta;
        rep.script_e = bad;
        self.stages.push(rep);
        Ok(())
    }

    fn error(&mut self, reason: String) -> PncError {
        let mut stages = self.stages.clone();
        let stage = self.cur.as_ref().map_or(0, |s| s.stage);
        if let Some(cur) = self.cur.clone() {
            stages.push(cur);
        }
        PncError::StageFailed { stage, reason, stages }
    }

    /// Records a failed check and repairs `edges`, or errors without repair.
    fn fail(&mut self, target: String, reason: String, edges: &[EdgeId]) -> Result<(), PncError> {
        if !self.repair {
            return Err(self.error(format!("{target}: {reason}")));
        }
        let (col, outcome) = repair_fallback(self.g, &self.core, &self.col, edges);
        self.col = col;
        if !outcome.charge_met {
            let mut key = edges.to_vec();
            key.sort_unstable();
            key.dedup();
            for (i, c) in self.comps.iter().enumerate() {
                if c.edges == key {
                    self.unmet[i] = true;
                }
            }
        }
        let stage = self.stage().stage;
        self.stage().repairs.push(RepairRecord { stage, target, reason, outcome });
        Ok(())
    }

    fn add_component(&mut self, kind: ComponentKind, circuits: Vec<usize>, mut edges: Vec<EdgeId>) -> usize {
        edges.sort_unstable();
        edges.dedup();
        self.comps.push(Component { kind, circuits, edges, active: true, theta: 0, script_e: 0 });
        self.unmet.push(false);
        self.comps.len() - 1
    }

    /// Re-checks the charge of every active component.
    fn check_components(&mut self) -> Result<(), PncError> {
        for i in 0..self.comps.len() {
            if !self.comps[i].active || self.unmet[i] {
                continue;
            }
            let edges = self.comps[i].edges.clone();
            let complete = edges.iter().all(|&e| self.col.is_colored(e));
            let (t, b) = charge(self.g, &self.core, &self.col, &edges);
            if !complete || t < b as i64 {
                let target = format!("component {i} ({:?})", self.comps[i].kind);
                self.fail(target, format!("charge {t} < {b} or uncolored edges"), &edges)?;
                let (t, b) = charge(self.g, &self.core, &self.col, &edges);
                self.unmet[i] = t < b as i64 || !edges.iter().all(|&e| self.col.is_colored(e));
            }
        }
        Ok(())
    }

    fn finish(mut self, mu3: Mu3Info) -> PncResult {
        let g = self.g;
        for c in &mut self.comps {
            let (t, b) = charge(g, &self.core, &self.col, &c.edges);
            c.theta = t;
            c.script_e = b;
        }
        let abnormal = abnormal_edges(g, &self.col);
        let normal_count = (0..g.m()).filter(|&e| edge_status(g, &self.col, e).is_normal()).count();
        let repairs = self.stages.iter().map(|s| s.repairs.len()).sum();
        PncResult {
            graph: encode_preserving_ids(g),
            n: g.n(),
            m: g.m(),
            mu3,
            k: self.core.k(),
            theta: theta_total(g, &self.core, &self.col),
            abnormal,
            normal_count,
            stages: self.stages,
            coloring: self.col.colors().to_vec(),
            core: self.core.spec(),
            components: self.comps,
            repairs,
        }
    }
}

/// Colors a connected bridgeless cubic graph so that at most `k` edges are
/// abnormal, where `k` is the size of the core used.
pub fn color_partially_normal(g: &CubicGraph, opts: &PncOptions) -> Result<PncResult, PncError> {
    let report = validate(g);
    if !report.is_connected {
        return Err(PncError::Disconnected);
    }
    if !report.is_bridgeless {
        return Err(PncError::NotBridgeless { bridges: report.bridges });
    }
    let construct = opts.force_construction || opts.core.is_some();
    let three = if construct { None } else { three_edge_coloring(g) };
    if let Some(colors) = three {
        let class = |c: u8| g.edge_set((0..g.m()).filter(|&e| colors[e] == c));
        let core = core_from_triple(g, &class(1), &class(2), &class(3))?;
        let col = PartialColoring::from_colors(g, &colors).expect("3-edge-coloring is proper");
        let mut run = Run::new(g, core, col, opts.repair);
        run.begin(0, "three_edge_coloring");
        run.stage().targets = g.m();
        run.end()?;
        return Ok(run.finish(Mu3Info { value: 0, exact: true }));
    }

    let (core, mu3) = match &opts.core {
        Some(spec) => {
            let core = Core::from_spec(g, spec)?;
            let k = core.k();
            (core, Mu3Info { value: k, exact: false })
        }
        None => {
            let r = compute_mu3(g, opts.mu3_budget)?;
            (r.witness, Mu3Info { value: r.mu3, exact: r.exact })
        }
    };
    let col = crate::coloring::major_coloring(g, &core);
    let mut run = Run::new(g, core, col, opts.repair);
    run.begin(1, "core");
    run.stage().targets = run.core.circuits().len();
    run.note(format!("k = {}, exact = {}", mu3.value, mu3.exact));
    if !construct {
        run.note("not 3-edge-colorable");
    }
    run.end()?;

    run.stage_even_circuits()?;
    run.stage_wave()?;
    run.stage_odd_circuits()?;
    run.stage_omega_pairs()?;
    run.stage_e3()?;
    run.stage_remaining()?;
    Ok(run.finish(mu3))
}
