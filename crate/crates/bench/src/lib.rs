//! Fixtures shared by the benchmarks: snarks that force the full
//! construction and a slice of the bundled corpus.

use pnc_core::graph::{generate_graph, parse_graph, CubicGraph, Family, InputFormat};

pub fn petersen() -> CubicGraph {
    generate_graph(Family::Petersen, None).expect("fixed construction")
}

/// Flower snark on `4k` vertices; `k` must be odd and at least 3.
pub fn flower(k: usize) -> CubicGraph {
    generate_graph(Family::Flower, Some(k)).expect("odd k >= 3")
}

/// The first `limit` graphs of the bundled corpus with `n` vertices.
pub fn corpus(n: usize, limit: usize) -> Vec<CubicGraph> {
    let path = format!("{}/../../corpora/cubic{n:02}.g6", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .take(limit)
        .map(|l| parse_graph(l, InputFormat::Graph6).expect("corpus is valid graph6"))
        .collect()
}

#[cfg(test)]
mod tests {
    #[test]
    fn fixtures_load() {
        assert_eq!(super::petersen().n(), 10);
        assert_eq!(super::flower(5).n(), 20);
        assert_eq!(super::corpus(12, 5).len(), 5);
    }
}
