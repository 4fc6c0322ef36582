use pnc_core::factor::{compute_mu3, DEFAULT_MU3_BUDGET};
use pnc_core::graph::{generate_graph, parse_graph, validate, Family, InputFormat};
use pnc_core::oracles::{count_normal, is_proper_total};
use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn pnc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pnc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpora").join(name)
}

#[test]
fn color_petersen_reports_mu3_and_stays_within_it() {
    let o = pnc(&["color", "--gen", "petersen", "--out", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    let g = generate_graph(Family::Petersen, None).unwrap();
    let mu3 = compute_mu3(&g, DEFAULT_MU3_BUDGET).unwrap();
    assert!(mu3.exact);
    assert_eq!(v["mu3"]["value"], mu3.mu3);
    assert!(v["abnormal"].as_array().unwrap().len() <= mu3.mu3);
    assert_eq!(v["verify"]["ok"], true);
}

#[test]
fn color_prism_has_no_abnormal_edge() {
    let o = pnc(&["color", "--gen", "prism", "--param", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["abnormal"], Value::Array(vec![]));
}

#[test]
fn mu3_prints_value_and_exactness() {
    let g = generate_graph(Family::Petersen, None).unwrap();
    let r = compute_mu3(&g, DEFAULT_MU3_BUDGET).unwrap();
    let o = pnc(&["mu3", "--gen", "petersen"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), format!("{} (exact)\n", r.mu3));
}

#[test]
fn normal_oracle_writes_checkable_witness() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("witness.json");
    let o = pnc(&["oracle", "normal", "--gen", "flower", "--param", "5", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "FOUND\n");
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["oracle"], true);
    let colors: Vec<u8> = serde_json::from_value(v["witness"].clone()).unwrap();
    let text = v["graph"].as_str().unwrap();
    let format = if text.contains('\n') { InputFormat::Edgelist } else { InputFormat::Graph6 };
    let g = parse_graph(text, format).unwrap();
    assert!(is_proper_total(&g, &colors));
    assert_eq!(count_normal(&g, &colors), g.m());
}

#[test]
fn verify_accepts_fresh_result_and_rejects_swapped_colors() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.g6");
    let result = dir.path().join("result.json");
    let g6 = pnc(&["gen", "--gen", "petersen"]);
    std::fs::write(&graph, g6.stdout).unwrap();
    let colored = pnc(&["color", "--gen", "petersen"]);
    std::fs::write(&result, &colored.stdout).unwrap();
    let args = ["verify", "-g", graph.to_str().unwrap(), "-r", result.to_str().unwrap()];
    let ok = pnc(&args);
    assert_eq!(ok.status.code(), Some(0), "{}", stderr(&ok));

    let mut v: Value = serde_json::from_slice(&colored.stdout).unwrap();
    let c = v["coloring"].as_array_mut().unwrap();
    let first = c[0].clone();
    let other = (1..c.len()).find(|&i| c[i] != first).unwrap();
    c.swap(0, other);
    std::fs::write(&result, v.to_string()).unwrap();
    let bad = pnc(&args);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stderr(&bad).contains("verification failed"), "{}", stderr(&bad));
    let report: Value = serde_json::from_str(stdout(&bad).trim()).unwrap();
    assert_eq!(report["ok"], false);
}

#[test]
fn tsv_summary_has_one_row_per_graph_in_input_order() {
    let path = corpus("cubic12.g6");
    let lines: Vec<String> = std::fs::read_to_string(&path).unwrap().lines().map(String::from).collect();
    let o = pnc(&["color", "-i", path.to_str().unwrap(), "--summary", "tsv", "--jobs", "3"]);
    let bridged = lines.iter().any(|l| !validate(&parse_graph(l, InputFormat::Graph6).unwrap()).is_bridgeless);
    assert_eq!(o.status.code(), Some(if bridged { 2 } else { 0 }));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "n\tm\tmu3\tabnormal\tnormal\trepairs");
    assert_eq!(rows.len(), lines.len() + 1);
    for (row, line) in rows[1..].iter().zip(&lines) {
        let g = parse_graph(line, InputFormat::Graph6).unwrap();
        let f: Vec<&str> = row.split('\t').collect();
        assert_eq!(f.len(), 6);
        assert_eq!(f[0], "12");
        if validate(&g).is_bridgeless {
            let mu3: usize = f[2].parse().unwrap();
            let abnormal: usize = f[3].parse().unwrap();
            let normal: usize = f[4].parse().unwrap();
            assert!(abnormal <= mu3);
            assert_eq!(abnormal + normal, g.m());
        } else {
            assert_eq!(f[2], "-");
        }
    }
}

#[test]
fn output_is_identical_across_job_counts() {
    let path = corpus("cubic14.g6");
    let one = pnc(&["color", "-i", path.to_str().unwrap(), "--jobs", "1"]);
    let four = pnc(&["color", "-i", path.to_str().unwrap(), "--jobs", "4"]);
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(one.status.code(), four.status.code());
}

#[test]
fn edgelist_input_is_read_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k33.txt");
    let list = pnc(&["gen", "--gen", "k33", "--format", "edgelist"]);
    std::fs::write(&path, list.stdout).unwrap();
    let o = pnc(&["color", "-i", path.to_str().unwrap(), "--format", "edgelist", "--summary", "tsv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().nth(1), Some("6\t9\t0\t0\t9\t0"));
}

#[test]
fn dot_output_marks_abnormal_edges() {
    let o = pnc(&["color", "--gen", "petersen", "--out", "dot"]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    let json = pnc(&["color", "--gen", "petersen"]);
    let v: Value = serde_json::from_slice(&json.stdout).unwrap();
    assert!(dot.starts_with("graph "));
    assert_eq!(dot.matches(" -- ").count(), 15);
    assert_eq!(dot.matches("dashed,bold").count(), v["abnormal"].as_array().unwrap().len());
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.g6");
    std::fs::write(&path, "not graph6 at all\n").unwrap();
    assert_eq!(pnc(&["color", "-i", path.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(pnc(&["color", "--gen", "dodecahedron"]).status.code(), Some(2));
    assert_eq!(pnc(&["color", "--gen", "petersen", "--budget-mu3", "0"]).status.code(), Some(2));
    assert_eq!(pnc(&["color"]).status.code(), Some(2));
    assert_eq!(pnc(&["color", "--nonsense"]).status.code(), Some(2));
}
