//! Partial proper 5-edge-colorings and the quantities defined on them.
//!
//! Colors are `1..=5`; `0` marks an uncolored edge. Each vertex keeps a
//! bitmask palette (bit `c` set when an incident edge has color `c`), so a
//! vertex is fully colored exactly when its palette has three bits.

mod extend;
mod theta;

pub use extend::{extend_123, extend_123_exempt, extension_vars, is_extendable, solve, Extension, NotExtendable};
pub use theta::{
    abnormal_edges, is_psi_good, major_coloring, psi_connected, script_e, theta, theta_sum, theta_total,
};

use crate::graph::{CubicGraph, EdgeId, VertexId};
use serde::{Serialize, Serializer};
use thiserror::Error;

pub type Color = u8;

/// Palette bits for colors 1, 2 and 3.
pub const LOW: u8 = 0b0000_1110;
/// Palette bits for colors 4 and 5.
pub const HIGH: u8 = 0b0011_0000;
pub const ALL: u8 = LOW | HIGH;

pub fn bit(c: Color) -> u8 {
    1 << c
}

/// Colors present in a palette mask, ascending.
pub fn colors_in(mask: u8) -> impl Iterator<Item = Color> {
    (1..=5).filter(move |&c| mask & bit(c) != 0)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("color {color} for edge {edge} is outside 1..=5")]
    InvalidColor { edge: EdgeId, color: Color },
    #[error("edge {edge} clashes with edge {clash} at vertex {vertex}")]
    Conflict { edge: EdgeId, vertex: VertexId, clash: EdgeId },
    #[error("vertex {vertex} is not an end of edge {edge}")]
    NotAnEndpoint { edge: EdgeId, vertex: VertexId },
    #[error("coloring has {got} entries, graph has {expected} edges")]
    LengthMismatch { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialColoring {
    colors: Vec<Color>,
    palette: Vec<u8>,
}

impl Serialize for PartialColoring {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.colors.serialize(s)
    }
}

impl PartialColoring {
    pub fn new(g: &CubicGraph) -> Self {
        PartialColoring { colors: vec![0; g.m()], palette: vec![0; g.n()] }
    }

    /// Rebuilds a coloring from its array form, checking properness.
    pub fn from_colors(g: &CubicGraph, colors: &[Color]) -> Result<Self, ColoringError> {
        if colors.len() != g.m() {
            return Err(ColoringError::LengthMismatch { expected: g.m(), got: colors.len() });
        }
        let mut out = PartialColoring::new(g);
        for (e, &c) in colors.iter().enumerate() {
            if c != 0 {
                out.set(g, e, c)?;
            }
        }
        Ok(out)
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn get(&self, e: EdgeId) -> Option<Color> {
        match self.colors[e] {
            0 => None,
            c => Some(c),
        }
    }

    pub fn color(&self, e: EdgeId) -> Color {
        self.colors[e]
    }

    pub fn is_colored(&self, e: EdgeId) -> bool {
        self.colors[e] != 0
    }

    pub fn palette(&self, v: VertexId) -> u8 {
        self.palette[v]
    }

    pub fn is_full_at(&self, v: VertexId) -> bool {
        self.palette[v].count_ones() == 3
    }

    pub fn is_total(&self) -> bool {
        self.colors.iter().all(|&c| c != 0)
    }

    pub fn colored_count(&self) -> usize {
        self.colors.iter().filter(|&&c| c != 0).count()
    }

    /// Colors `e` with `c`, replacing any previous color of `e`.
    pub fn set(&mut self, g: &CubicGraph, e: EdgeId, c: Color) -> Result<(), ColoringError> {
        if !(1..=5).contains(&c) {
            return Err(ColoringError::InvalidColor { edge: e, color: c });
        }
        let (u, v) = g.endpoints(e);
        for w in [u, v] {
            if let Some(&clash) = g.incident(w).iter().find(|&&f| f != e && self.colors[f] == c) {
                return Err(ColoringError::Conflict { edge: e, vertex: w, clash });
            }
        }
        self.unset(g, e);
        self.put(g, e, c);
        Ok(())
    }

    /// Whether `c` could be given to uncolored `e` without a clash.
    pub fn admits(&self, g: &CubicGraph, e: EdgeId, c: Color) -> bool {
        let (u, v) = g.endpoints(e);
        (self.palette[u] | self.palette[v]) & bit(c) == 0
    }

    pub fn unset(&mut self, g: &CubicGraph, e: EdgeId) {
        let c = std::mem::replace(&mut self.colors[e], 0);
        if c != 0 {
            let (u, v) = g.endpoints(e);
            self.palette[u] &= !bit(c);
            self.palette[v] &= !bit(c);
        }
    }

    /// Unchecked assignment to an uncolored edge.
    pub(crate) fn put(&mut self, g: &CubicGraph, e: EdgeId, c: Color) {
        debug_assert_eq!(self.colors[e], 0);
        debug_assert!(self.admits(g, e, c));
        let (u, v) = g.endpoints(e);
        self.colors[e] = c;
        self.palette[u] |= bit(c);
        self.palette[v] |= bit(c);
    }

    /// First clash found, if the coloring is improper (only reachable for
    /// colorings assembled outside `set`).
    pub fn find_conflict(&self, g: &CubicGraph) -> Option<(VertexId, EdgeId, EdgeId)> {
        (0..g.n()).find_map(|v| {
            let inc = g.incident(v);
            for a in 0..3 {
                for b in a + 1..3 {
                    let (x, y) = (inc[a], inc[b]);
                    if x != y && self.colors[x] != 0 && self.colors[x] == self.colors[y] {
                        return Some((v, x, y));
                    }
                }
            }
            None
        })
    }

    /// Applies a permutation of the five colors (`perm[c - 1]` is the image of `c`).
    pub fn permuted(&self, g: &CubicGraph, perm: [Color; 5]) -> Self {
        let mut out = PartialColoring::new(g);
        for (e, &c) in self.colors.iter().enumerate() {
            if c != 0 {
                out.put(g, e, perm[c as usize - 1]);
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum EdgeStatus {
    Poor,
    Rich,
    Abnormal,
    Undetermined,
}

impl EdgeStatus {
    pub fn is_normal(self) -> bool {
        matches!(self, EdgeStatus::Poor | EdgeStatus::Rich)
    }
}

/// Classifies `e` by the number of colors on `e` and its adjacent edges.
pub fn edge_status(g: &CubicGraph, col: &PartialColoring, e: EdgeId) -> EdgeStatus {
    let (u, v) = g.endpoints(e);
    if !col.is_full_at(u) || !col.is_full_at(v) {
        return EdgeStatus::Undetermined;
    }
    match (col.palette(u) | col.palette(v)).count_ones() {
        3 => EdgeStatus::Poor,
        5 => EdgeStatus::Rich,
        _ => EdgeStatus::Abnormal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_graph, Family};

    fn prism() -> CubicGraph {
        // outer 0..3 triangle edges 0,1,2; inner 3,4,5; rungs 6,7,8
        generate_graph(Family::Prism, Some(3)).unwrap()
    }

    #[test]
    fn set_conflict_and_unset() {
        let g = prism();
        let mut c = PartialColoring::new(&g);
        c.set(&g, 0, 1).unwrap();
        let before = c.clone();
        assert_eq!(
            c.set(&g, 1, 1),
            Err(ColoringError::Conflict { edge: 1, vertex: 1, clash: 0 })
        );
        assert_eq!(c, before);
        c.set(&g, 1, 4).unwrap();
        c.unset(&g, 1);
        assert_eq!(c, before);
        assert!(c.set(&g, 2, 6).is_err());
        c.set(&g, 0, 2).unwrap();
        assert_eq!(c.palette(0), bit(2));
    }

    #[test]
    fn statuses() {
        let g = prism();
        // rung 6 joins 0 and 3; its neighbours are 0,2 (outer) and 3,5 (inner)
        let full = |colors: [Color; 9]| PartialColoring::from_colors(&g, &colors).unwrap();
        let poor = full([1, 2, 3, 1, 2, 3, 2, 3, 1]);
        assert_eq!(edge_status(&g, &poor, 6), EdgeStatus::Poor);
        let rich = full([1, 2, 3, 4, 2, 5, 2, 3, 1]);
        assert_eq!(edge_status(&g, &rich, 6), EdgeStatus::Rich);
        let abn = full([1, 2, 3, 4, 2, 3, 2, 3, 1]);
        assert_eq!(edge_status(&g, &abn, 6), EdgeStatus::Abnormal);
        let mut part = abn.clone();
        part.unset(&g, 8);
        assert_eq!(edge_status(&g, &part, 6), EdgeStatus::Abnormal);
        part.unset(&g, 5);
        assert_eq!(edge_status(&g, &part, 6), EdgeStatus::Undetermined);
    }

    #[test]
    fn json_is_plain_array() {
        let g = prism();
        let mut c = PartialColoring::new(&g);
        c.set(&g, 4, 5).unwrap();
        assert_eq!(serde_json::to_string(&c).unwrap(), "[0,0,0,0,5,0,0,0,0]");
    }
}
