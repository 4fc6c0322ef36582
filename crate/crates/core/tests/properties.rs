mod common;

use common::{bridgeless_upto, random_core, random_full_coloring};
use pnc_core::coloring::{abnormal_edges, edge_status, extend_123, theta_total, Extension};
use pnc_core::factor::compute_mu3;
use pnc_core::graph::{CubicGraph, Piece};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::OnceLock;

fn graphs() -> &'static [(String, CubicGraph)] {
    static GRAPHS: OnceLock<Vec<(String, CubicGraph)>> = OnceLock::new();
    GRAPHS.get_or_init(|| bridgeless_upto(12))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn abnormal_count_is_k_minus_theta(idx in 0usize..1000, seed in any::<u64>()) {
        let (_, g) = &graphs()[idx % graphs().len()];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let core = random_core(g, &mut rng);
        let col = random_full_coloring(g, &mut rng);
        let theta = theta_total(g, &core, &col);
        prop_assert_eq!(abnormal_edges(g, &col).len() as i64, core.k() as i64 - theta);
    }

    #[test]
    fn status_and_theta_ignore_color_names(idx in 0usize..1000, seed in any::<u64>()) {
        let (_, g) = &graphs()[idx % graphs().len()];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let core = random_core(g, &mut rng);
        let col = random_full_coloring(g, &mut rng);
        let mut perm = [1u8, 2, 3, 4, 5];
        perm.shuffle(&mut rng);
        let moved = col.permuted(g, perm);
        for e in 0..g.m() {
            prop_assert_eq!(edge_status(g, &col, e), edge_status(g, &moved, e));
        }
        prop_assert_eq!(theta_total(g, &core, &col), theta_total(g, &core, &moved));
    }

    #[test]
    fn extension_keeps_colors_and_sub_families(idx in 0usize..1000, seed in any::<u64>()) {
        let (_, g) = &graphs()[idx % graphs().len()];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let core = random_core(g, &mut rng);
        let col = pnc_core::coloring::major_coloring(g, &core);
        let pieces: Vec<Piece> = core.circuits().iter().cloned().map(Piece::Circuit).collect();
        if let Extension::Extended(out) = extend_123(g, &col, &pieces, None) {
            for e in 0..g.m() {
                if col.is_colored(e) {
                    prop_assert_eq!(out.color(e), col.color(e));
                }
            }
            for skip in 0..pieces.len() {
                let mut fewer = pieces.clone();
                fewer.remove(skip);
                prop_assert!(extend_123(g, &col, &fewer, None).extended().is_some());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn mu3_ignores_vertex_labels(idx in 0usize..1000, seed in any::<u64>()) {
        let (_, g) = &graphs()[idx % graphs().len()];
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let h = g.relabel(&perm).unwrap();
        let a = compute_mu3(g, 1_000_000).unwrap();
        let b = compute_mu3(&h, 1_000_000).unwrap();
        prop_assert!(a.exact && b.exact);
        prop_assert_eq!(a.mu3, b.mu3);
    }
}
