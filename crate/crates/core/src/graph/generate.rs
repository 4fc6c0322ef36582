use super::{CubicGraph, GraphError};
use serde::{Deserialize, Serialize};
use std::str::FromStr;

/// Standard cubic families used as test inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Petersen,
    K4,
    K33,
    /// Circular ladder on `2n` vertices.
    Prism,
    /// Flower snark J_k on `4k` vertices, `k` odd.
    Flower,
    MoebiusKantor,
}

impl FromStr for Family {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "petersen" => Family::Petersen,
            "k4" => Family::K4,
            "k33" | "k3,3" | "k_3_3" => Family::K33,
            "prism" => Family::Prism,
            "flower" => Family::Flower,
            "moebius_kantor" | "mobius_kantor" | "mk" => Family::MoebiusKantor,
            other => {
                return Err(GraphError::InvalidParameter {
                    family: "family",
                    reason: format!("unknown family `{other}`"),
                })
            }
        })
    }
}

pub fn generate_graph(family: Family, param: Option<usize>) -> Result<CubicGraph, GraphError> {
    let edges: (usize, Vec<(usize, usize)>) = match family {
        Family::Petersen => {
            let mut e = Vec::with_capacity(15);
            e.extend((0..5).map(|i| (i, (i + 1) % 5)));
            e.extend((0..5).map(|i| (i, i + 5)));
            e.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
            (10, e)
        }
        Family::K4 => (4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
        Family::K33 => {
            let e = (0..3).flat_map(|i| (3..6).map(move |j| (i, j))).collect();
            (6, e)
        }
        Family::Prism => {
            let n = param.unwrap_or(3);
            if n < 3 {
                return Err(GraphError::InvalidParameter {
                    family: "prism",
                    reason: format!("n must be at least 3, got {n}"),
                });
            }
            let mut e = Vec::with_capacity(3 * n);
            e.extend((0..n).map(|i| (i, (i + 1) % n)));
            e.extend((0..n).map(|i| (n + i, n + (i + 1) % n)));
            e.extend((0..n).map(|i| (i, n + i)));
            (2 * n, e)
        }
        Family::Flower => {
            let k = param.unwrap_or(5);
            if k < 3 || k.is_multiple_of(2) {
                return Err(GraphError::InvalidParameter {
                    family: "flower",
                    reason: format!("k must be odd and at least 3, got {k}"),
                });
            }
            // a_i = i, b_i = k + i, c_i = 2k + i, d_i = 3k + i
            let (a, b, c, d) = (0, k, 2 * k, 3 * k);
            let mut e = Vec::with_capacity(6 * k);
            for i in 0..k {
                e.push((a + i, b + i));
                e.push((a + i, c + i));
                e.push((a + i, d + i));
            }
            e.extend((0..k).map(|i| (b + i, b + (i + 1) % k)));
            // c_0 .. c_{k-1} d_0 .. d_{k-1} close into one 2k-cycle
            for i in 0..k - 1 {
                e.push((c + i, c + i + 1));
                e.push((d + i, d + i + 1));
            }
            e.push((c + k - 1, d));
            e.push((d + k - 1, c));
            (4 * k, e)
        }
        Family::MoebiusKantor => {
            let mut e = Vec::with_capacity(24);
            e.extend((0..8).map(|i| (i, (i + 1) % 8)));
            e.extend((0..8).map(|i| (i, 8 + i)));
            e.extend((0..8).map(|i| (8 + i, 8 + (i + 3) % 8)));
            (16, e)
        }
    };
    CubicGraph::from_edges(edges.0, edges.1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_sizes() {
        let size = |f, p| {
            let g = generate_graph(f, p).unwrap();
            (g.n(), g.m())
        };
        assert_eq!(size(Family::Petersen, None), (10, 15));
        assert_eq!(size(Family::K4, None), (4, 6));
        assert_eq!(size(Family::K33, None), (6, 9));
        assert_eq!(size(Family::Prism, Some(3)), (6, 9));
        assert_eq!(size(Family::Prism, Some(7)), (14, 21));
        assert_eq!(size(Family::Flower, Some(5)), (20, 30));
        assert_eq!(size(Family::MoebiusKantor, None), (16, 24));
    }

    #[test]
    fn bad_parameters() {
        assert!(generate_graph(Family::Flower, Some(4)).is_err());
        assert!(generate_graph(Family::Flower, Some(1)).is_err());
        assert!(generate_graph(Family::Prism, Some(2)).is_err());
    }

    #[test]
    fn deterministic() {
        let a = generate_graph(Family::Flower, Some(7)).unwrap();
        let b = generate_graph(Family::Flower, Some(7)).unwrap();
        assert_eq!(a, b);
        assert!(a.is_simple());
    }
}
