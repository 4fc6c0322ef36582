use super::PncResult;
use crate::coloring::{abnormal_edges, edge_status, theta_total, PartialColoring};
use crate::factor::Core;
use crate::graph::CubicGraph;
use serde::{Deserialize, Serialize};

/// Independent re-check of a stored result against its graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub total: bool,
    pub uncolored: usize,
    pub proper: bool,
    pub conflict: Option<(usize, usize, usize)>,
    pub core_valid: bool,
    pub core_error: Option<String>,
    pub k: usize,
    pub theta: i64,
    pub abnormal: usize,
    /// abnormal = k − θ
    pub census_identity: bool,
    pub within_k: bool,
    /// abnormal ≤ m/5, only when the core is a certified μ₃-core.
    pub within_fifth: Option<bool>,
    pub normal_count: usize,
    /// ⌈4m/5⌉
    pub normal_target: usize,
    pub claims_match: bool,
    pub mismatches: Vec<String>,
    pub ok: bool,
}

/// First vertex with two incident edges of one color, read from the raw
/// color vector.
fn raw_conflict(g: &CubicGraph, colors: &[u8]) -> Option<(usize, usize, usize)> {
    let color = |e: usize| colors.get(e).copied().unwrap_or(0);
    (0..g.n()).find_map(|v| {
        let [a, b, c] = *g.incident(v);
        [(a, b), (a, c), (b, c)].into_iter().find(|&(x, y)| x != y && color(x) != 0 && color(x) == color(y)).map(|(x, y)| (v, x, y))
    })
}

pub fn verify_pnc(g: &CubicGraph, r: &PncResult) -> VerifyReport {
    let mut mismatches = Vec::new();
    let col = match PartialColoring::from_colors(g, &r.coloring) {
        Ok(c) => Some(c),
        Err(e) => {
            mismatches.push(format!("coloring: {e}"));
            None
        }
    };
    let (core, core_error) = match Core::from_spec(g, &r.core) {
        Ok(c) => (Some(c), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let uncolored = r.coloring.iter().filter(|&&c| c == 0).count();
    let conflict = raw_conflict(g, &r.coloring);
    let proper = col.is_some() && conflict.is_none();
    let total = proper && uncolored == 0 && r.coloring.len() == g.m();
    let k = core.as_ref().map_or(r.k, Core::k);
    let (theta, abnormal, normal_count) = match &col {
        Some(c) if total => {
            let normal = (0..g.m()).filter(|&e| edge_status(g, c, e).is_normal()).count();
            let theta = core.as_ref().map_or(r.theta, |core| theta_total(g, core, c));
            (theta, abnormal_edges(g, c).len(), normal)
        }
        _ => (r.theta, r.abnormal.len(), r.normal_count),
    };
    let census_identity = abnormal as i64 == k as i64 - theta;
    let within_k = abnormal <= k;
    let within_fifth = (r.mu3.exact && r.mu3.value == k).then(|| 5 * abnormal <= g.m());
    let normal_target = (4 * g.m()).div_ceil(5);
    if total {
        for (name, claimed, actual) in [
            ("k", r.k as i64, k as i64),
            ("theta", r.theta, theta),
            ("abnormal", r.abnormal.len() as i64, abnormal as i64),
            ("normal_count", r.normal_count as i64, normal_count as i64),
            ("n", r.n as i64, g.n() as i64),
            ("m", r.m as i64, g.m() as i64),
        ] {
            if claimed != actual {
                mismatches.push(format!("{name}: claimed {claimed}, found {actual}"));
            }
        }
    }
    let claims_match = mismatches.is_empty();
    let ok = total && core.is_some() && census_identity && within_k && within_fifth != Some(false) && claims_match;
    VerifyReport {
        total,
        uncolored,
        proper,
        conflict,
        core_valid: core.is_some(),
        core_error,
        k,
        theta,
        abnormal,
        census_identity,
        within_k,
        within_fifth,
        normal_count,
        normal_target,
        claims_match,
        mismatches,
        ok,
    }
}
