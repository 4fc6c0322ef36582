//! One line per acceptance criterion; exits non-zero if any fails.

mod common;

use common::{bridgeless_upto, corpus, mu3_by_enumeration, random_core, random_full_coloring, sample_cores};
use pnc_core::coloring::{abnormal_edges, theta_total};
use pnc_core::factor::{compute_mu3, DEFAULT_MU3_BUDGET};
use pnc_core::graph::{generate_graph, validate, CubicGraph, Family};
use pnc_core::oracles::{
    brute_force_normal, count_normal, is_petersen_coloring, max_normal_brute, petersen_coloring, Outcome,
};
use pnc_core::pipeline::{color_partially_normal, verify_pnc, PncOptions, PncResult};
use pnc_core::wave::{build_wave, verify_wave};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

/// Wall-clock limit for the full-corpus run.
const CORPUS_TIME_LIMIT: Duration = Duration::from_secs(600);
const PETERSEN_TIME_LIMIT: Duration = Duration::from_secs(1);
const ORACLE_BUDGET: u64 = 2_000_000;
const MAX_NORMAL_BUDGET: u64 = 50_000_000;
const RANDOM_TRIALS_PER_GRAPH: usize = 20;
const MIN_TRIALS: usize = 1000;
const MIN_GRAPHS: usize = 50;
const CORES_PER_GRAPH: usize = 6;
const CORPUS_MAX_N: usize = 16;

struct Run {
    line: String,
    g: CubicGraph,
    mu3: usize,
    exact: bool,
    result: PncResult,
}

fn corpus_runs() -> (Vec<Run>, Duration) {
    let t = Instant::now();
    let runs = bridgeless_upto(CORPUS_MAX_N)
        .into_iter()
        .map(|(line, g)| {
            let m = compute_mu3(&g, DEFAULT_MU3_BUDGET).expect("bridgeless");
            let result = color_partially_normal(&g, &PncOptions::default()).expect("pipeline runs");
            Run { line, g, mu3: m.mu3, exact: m.exact, result }
        })
        .collect();
    (runs, t.elapsed())
}

fn criterion_1(runs: &[Run], elapsed: Duration) -> (bool, String) {
    let bad: Vec<&str> = runs
        .iter()
        .filter(|r| {
            let rep = verify_pnc(&r.g, &r.result);
            !(rep.total && rep.proper && rep.abnormal <= r.mu3)
        })
        .map(|r| r.line.as_str())
        .collect();
    let ok = bad.is_empty() && elapsed < CORPUS_TIME_LIMIT;
    (ok, format!("abnormal <= mu3 on {} bridgeless graphs (n <= {CORPUS_MAX_N}), {} violations, {elapsed:.2?}", runs.len(), bad.len()))
}

fn criterion_2(runs: &[Run]) -> (bool, String) {
    let exact: Vec<&Run> = runs.iter().filter(|r| r.exact).collect();
    let bad = exact.iter().filter(|r| 5 * r.result.normal_count < 4 * r.g.m()).count();
    (bad == 0, format!("normal >= ceil(4m/5) on {} graphs with exact mu3, {bad} violations", exact.len()))
}

fn criterion_3() -> (bool, String) {
    let t = Instant::now();
    let g = generate_graph(Family::Petersen, None).unwrap();
    let by_enumeration = mu3_by_enumeration(&g);
    let r = color_partially_normal(&g, &PncOptions::default()).unwrap();
    let oracle = brute_force_normal(&g, ORACLE_BUDGET).found().map(|c| count_normal(&g, &c));
    let elapsed = t.elapsed();
    let ok = by_enumeration == 3
        && r.mu3.value == 3
        && r.mu3.exact
        && r.abnormal.len() <= 3
        && r.normal_count >= 12
        && oracle == Some(15)
        && elapsed < PETERSEN_TIME_LIMIT;
    let detail = format!(
        "Petersen mu3 {} (enumeration {by_enumeration}), abnormal {}, normal {}, oracle normal {:?}, {elapsed:.2?}",
        r.mu3.value,
        r.abnormal.len(),
        r.normal_count,
        oracle
    );
    (ok, detail)
}

fn criterion_4() -> (bool, String) {
    let graphs = bridgeless_upto(12);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let (mut trials, mut bad) = (0, 0);
    for (_, g) in &graphs {
        for _ in 0..RANDOM_TRIALS_PER_GRAPH {
            let core = random_core(g, &mut rng);
            let col = random_full_coloring(g, &mut rng);
            if abnormal_edges(g, &col).len() as i64 != core.k() as i64 - theta_total(g, &core, &col) {
                bad += 1;
            }
            trials += 1;
        }
    }
    let ok = bad == 0 && trials >= MIN_TRIALS && graphs.len() >= MIN_GRAPHS;
    (ok, format!("abnormal = k - theta in {trials} random trials over {} graphs, {bad} mismatches", graphs.len()))
}

fn criterion_5(runs: &[Run]) -> (bool, String) {
    let exact: Vec<&Run> = runs.iter().filter(|r| r.exact).collect();
    let bad = exact.iter().filter(|r| 5 * r.mu3 > r.g.m()).count();
    let max = exact.iter().map(|r| r.mu3).max().unwrap_or(0);
    (bad == 0 && exact.len() == runs.len(), format!("5 mu3 <= m for {} exact values (max mu3 {max}), {bad} violations", exact.len()))
}

fn criterion_6() -> (bool, String) {
    let (mut compared, mut skipped, mut bad) = (0, 0, 0);
    for n in (4..=12).step_by(2) {
        for (_, g) in corpus(n) {
            let normal = brute_force_normal(&g, ORACLE_BUDGET);
            let petersen = petersen_coloring(&g, ORACLE_BUDGET);
            let (a, b) = match (&normal, &petersen) {
                (Outcome::BudgetExceeded, _) | (_, Outcome::BudgetExceeded) => {
                    skipped += 1;
                    continue;
                }
                (x, y) => (x.is_found(), y.is_found()),
            };
            let witnesses = match (normal, petersen) {
                (Outcome::Found(c), Outcome::Found(h)) => count_normal(&g, &c) == g.m() && is_petersen_coloring(&g, &h),
                _ => true,
            };
            compared += 1;
            if a != b || !witnesses {
                bad += 1;
            }
        }
    }
    (bad == 0, format!("normal coloring <=> Petersen coloring on {compared} graphs (n <= 12), {skipped} over budget, {bad} discrepancies"))
}

fn criterion_7() -> (bool, String) {
    let (mut checked, mut bad, mut skipped) = (0, 0, 0);
    for n in (4..=10).step_by(2) {
        for (_, g) in corpus(n) {
            if !validate(&g).is_bridgeless {
                skipped += 1;
                continue;
            }
            let Outcome::Found((best, _)) = max_normal_brute(&g, MAX_NORMAL_BUDGET) else {
                bad += 1;
                continue;
            };
            let mu3 = mu3_by_enumeration(&g);
            let r = color_partially_normal(&g, &PncOptions::default()).unwrap();
            checked += 1;
            if best + mu3 < g.m() || r.normal_count > best {
                bad += 1;
            }
        }
    }
    (bad == 0, format!("m - mu3 <= max normal >= pipeline normal on {checked} graphs (n <= 10), {skipped} bridged skipped, {bad} violations"))
}

fn criterion_8() -> (bool, String) {
    let (mut waves, mut bad, mut shortened, mut moved, mut missed) = (0, 0, 0, 0, 0);
    for (_, g) in bridgeless_upto(CORPUS_MAX_N) {
        let mut cores = sample_cores(&g, CORES_PER_GRAPH);
        cores.push(compute_mu3(&g, DEFAULT_MU3_BUDGET).unwrap().witness);
        for core in cores {
            let Ok(w) = build_wave(&g, &core) else { continue };
            waves += 1;
            if !verify_wave(&g, &core, &w).ok {
                bad += 1;
            }
            for (si, s) in w.strings.iter().enumerate() {
                let att = s.chain().attachments(&g, &core);
                let last = s.paths.len() - 1;
                for (j, anchor) in [(0, att[0].0), (last, att[last - 1].1)] {
                    let p = &s.paths[j];
                    if p.edges.len() < 2 || p.edges.len() + 2 > core.circuits()[s.circuits[j]].len() {
                        continue;
                    }
                    let mut m = w.clone();
                    let q = &mut m.strings[si].paths[j];
                    if q.vertices[0] == anchor {
                        q.vertices.pop();
                        q.edges.pop();
                    } else {
                        q.vertices.remove(0);
                        q.edges.remove(0);
                    }
                    shortened += 1;
                    if verify_wave(&g, &core, &m).ok {
                        missed += 1;
                    }
                }
            }
            let mut m = w.clone();
            let s = m.strings.pop().unwrap();
            m.q.extend(s.circuits);
            moved += 1;
            if verify_wave(&g, &core, &m).item3.is_empty() {
                missed += 1;
            }
        }
    }
    let ok = bad == 0 && missed == 0 && waves > 0 && shortened > 0;
    (ok, format!("{waves} waves valid ({bad} invalid); mutations flagged: {shortened} shortened paths, {moved} Q moves, {missed} missed"))
}

fn criterion_9(runs: &[Run]) -> (bool, String) {
    let corpus_repairs: usize = runs.iter().map(|r| r.result.repairs).sum();
    let corpus_bad = runs
        .iter()
        .filter(|r| r.result.repairs > 0)
        .filter(|r| r.result.abnormal.len() > r.mu3 || (r.exact && 5 * r.result.normal_count < 4 * r.g.m()))
        .count();
    let (mut core_runs, mut core_repairs, mut repaired_runs, mut core_bad) = (0, 0, 0, 0);
    for (_, g) in bridgeless_upto(CORPUS_MAX_N) {
        for core in sample_cores(&g, CORES_PER_GRAPH) {
            let r = color_partially_normal(&g, &PncOptions { core: Some(core.spec()), ..Default::default() }).unwrap();
            core_runs += 1;
            core_repairs += r.repairs;
            if r.repairs > 0 {
                repaired_runs += 1;
                if !verify_pnc(&g, &r).ok {
                    core_bad += 1;
                }
            }
        }
    }
    let ok = corpus_bad == 0 && core_bad == 0;
    let detail = format!(
        "repairs: {corpus_repairs} over {} corpus runs; {core_repairs} over {core_runs} supplied-core runs ({repaired_runs} runs repaired); {} repaired runs out of bound",
        runs.len(),
        corpus_bad + core_bad
    );
    (ok, detail)
}

fn main() {
    let (runs, elapsed) = corpus_runs();
    let results = [
        criterion_1(&runs, elapsed),
        criterion_2(&runs),
        criterion_3(),
        criterion_4(),
        criterion_5(&runs),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(&runs),
    ];
    let mut failed = 0;
    for (i, (ok, detail)) in results.iter().enumerate() {
        println!("criterion {} {}: {detail}", i + 1, if *ok { "PASS" } else { "FAIL" });
        failed += usize::from(!ok);
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
