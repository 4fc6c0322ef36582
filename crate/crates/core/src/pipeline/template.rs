//! Frozen coloring for a 7-circuit whose one `E_3` pendant `f` sits at `w_0`
//! and whose six `E_1` pendants read `a a b b c c` from `w_1` on, with
//! `a, b, c` distinct.
//!
//! In that configuration the circuit edges at `w_0` are in `E_0`, the edges
//! `w_1w_2`, `w_3w_4`, `w_5w_6` are in `E_2` and `w_2w_3`, `w_4w_5` are in
//! `E_0`. θ and 𝓔 of the circuit depend only on the circuit edges and the
//! pendants, so the template is found once by exhaustive search over that
//! local picture. The far end of `f` lies on a circuit already colored with
//! 4 and 5, so `f` takes a color from {1, 2, 3}.

use crate::coloring::{bit, PartialColoring};
use crate::graph::{Circuit, CubicGraph, EdgeId};
use serde::{Deserialize, Serialize};

/// Colors of `f` and of `w_i w_{i+1}` (index 6 closes the circuit) for
/// pendant colors `1 1 2 2 3 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Template {
    pub f: u8,
    pub circuit: [u8; 7],
}

const CANONICAL_PENDANTS: [u8; 6] = [1, 1, 2, 2, 3, 3];
const IN_E0: [bool; 7] = [true, false, true, false, true, false, true];

const FROZEN: Template = Template { f: 1, circuit: [4, 5, 4, 3, 1, 2, 5] };

pub fn subcase_32_template() -> Template {
    FROZEN
}

/// θ of the circuit and the size of its 𝓔 set for pendant colors `pend`
/// (`pend[0]` is `f`) and circuit colors `circ`.
pub(crate) fn local_charge(pend: [u8; 7], circ: [u8; 7]) -> (i64, usize) {
    let at = |i: usize| [circ[(i + 6) % 7], circ[i], pend[i]];
    let mut theta = 0i64;
    for (i, &in_e0) in IN_E0.iter().enumerate() {
        let j = (i + 1) % 7;
        let mask = at(i).iter().chain(at(j).iter()).fold(0u8, |m, &c| m | bit(c));
        let normal = matches!(mask.count_ones(), 3 | 5);
        theta += match (in_e0, normal) {
            (true, true) => 1,
            (false, false) => -1,
            _ => 0,
        };
    }
    let bad = (0..7)
        .filter(|&i| {
            let [x, y, h] = at(i);
            let all = bit(x) | bit(y) | bit(h);
            let good = all == 0b1110 || (bit(x) | bit(y) == 0b110000 && h <= 3);
            !good
        })
        .count();
    (theta, bad)
}

/// Exhaustive search for the canonical configuration: maximizes θ − |𝓔|,
/// ties broken by the smallest color vector `(f, circuit)`.
pub fn search_subcase_32() -> (Template, i64, usize) {
    let mut best: Option<(Template, i64, usize)> = None;
    for code in 0..5u32.pow(8) {
        let mut digits = [0u8; 8];
        let mut x = code;
        for d in digits.iter_mut().rev() {
            *d = (x % 5) as u8 + 1;
            x /= 5;
        }
        let f = digits[0];
        if f > 3 {
            continue;
        }
        let circ: [u8; 7] = digits[1..].try_into().expect("seven colors");
        let mut pend = [f; 7];
        pend[1..].copy_from_slice(&CANONICAL_PENDANTS);
        let proper = (0..7).all(|i| {
            let [x, y, h] = [circ[(i + 6) % 7], circ[i], pend[i]];
            x != y && x != h && y != h
        });
        if !proper {
            continue;
        }
        let (t, b) = local_charge(pend, circ);
        if best.as_ref().is_none_or(|&(_, bt, bb)| t - b as i64 > bt - bb as i64) {
            best = Some((Template { f, circuit: circ }, t, b));
        }
    }
    best.expect("a proper coloring exists")
}

/// Applies the frozen template to `c` with `f` pendant at `c.vertices[pos]`,
/// trying both directions. `None` if the pendants do not match the pattern
/// or `f` cannot take its color.
pub(crate) fn apply_subcase_32(g: &CubicGraph, col: &PartialColoring, c: &Circuit, f: EdgeId) -> Option<PartialColoring> {
    let w0 = c.vertices.iter().copied().find(|&v| g.is_incident(f, v))?;
    let pos = c.position(w0)?;
    let t = subcase_32_template();
    for forward in [true, false] {
        let path = c.arc(pos, forward, 6);
        let mut edges = path.edges.clone();
        edges.push(c.complement(&path)?.edges[0]);
        let pend: Vec<u8> = path.vertices[1..]
            .iter()
            .map(|&v| g.incident(v).iter().copied().find(|e| !c.edges.contains(e)).map_or(0, |e| col.color(e)))
            .collect();
        let (a, b, cc) = (pend[0], pend[2], pend[4]);
        let pattern = pend[1] == a && pend[3] == b && pend[5] == cc;
        let distinct = a != b && b != cc && a != cc && [a, b, cc].iter().all(|&x| (1..=3).contains(&x));
        if !pattern || !distinct {
            continue;
        }
        let map = |x: u8| match x {
            1 => a,
            2 => b,
            3 => cc,
            other => other,
        };
        let mut out = col.clone();
        let ok = out.set(g, f, map(t.f)).is_ok()
            && edges.iter().zip(t.circuit).all(|(&e, x)| out.set(g, e, map(x)).is_ok());
        if ok {
            return Some(out);
        }
    }
    None
}
