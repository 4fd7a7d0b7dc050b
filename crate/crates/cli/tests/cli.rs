use std::path::Path;
use std::process::{Command, Output};

use treepack_cli::commands::PackOutput;
use treepack_cli::{load_graph, save_graph};
use treepack_core::claims::Report;
use treepack_core::constructions::cycle_graph;
use treepack_core::validate_packing;

fn treepack(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_treepack"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn load_and_save_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let src = write(dir.path(), "p3.txt", "3 2\n0 1\n1 2\n");
    let g = load_graph(Path::new(&src)).unwrap().graph;
    assert_eq!((g.vertex_count(), g.edge_list()), (3, vec![(0, 1), (1, 2)]));
    let dst = dir.path().join("copy.txt");
    save_graph(&g, &dst).unwrap();
    assert_eq!(std::fs::read(&src).unwrap(), std::fs::read(&dst).unwrap());
}

#[test]
fn bad_edge_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let src = write(dir.path(), "bad.txt", "3 2\n5 1\n1 2\n");
    let o = treepack(&["pack", &src]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn duplicate_edge_warns() {
    let dir = tempfile::tempdir().unwrap();
    let src = write(dir.path(), "dup.txt", "3 3\n0 1\n0 1\n1 2\n");
    let o = treepack(&["blocks", &src, "--mode", "simulated"]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("duplicate"));
}

#[test]
fn pack_examples_and_revalidation() {
    let dir = tempfile::tempdir().unwrap();
    let c6 = dir.path().join("c6.txt");
    save_graph(&cycle_graph(6), &c6).unwrap();
    let c6 = c6.to_str().unwrap();
    for mode in ["oracle", "heuristic"] {
        let out = dir.path().join(format!("{mode}.toml"));
        let o = treepack(&[
            "pack",
            c6,
            "--k",
            "1",
            "--mode",
            mode,
            "-o",
            out.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        let parsed: PackOutput = toml::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
        assert_eq!((parsed.size, parsed.valid), (2, true));
        let reloaded = load_graph(Path::new(c6)).unwrap().graph;
        assert!(validate_packing(&reloaded, 1, &parsed.solution().unwrap()).packing_ok());
    }
    let k2 = write(dir.path(), "k2.txt", "2 1\n0 1\n");
    let o = treepack(&["pack", &k2, "--k", "2", "--mode", "heuristic"]);
    let parsed: PackOutput = toml::from_str(&stdout(&o)).unwrap();
    assert_eq!(parsed.size, 0);
}

#[test]
fn budget_errors_exit_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("c30.txt");
    save_graph(&cycle_graph(30), &c).unwrap();
    let o = treepack(&["pack", c.to_str().unwrap(), "--budget-nodes", "5"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("max_nodes"));
}

#[test]
fn cover_and_generate() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("cc.txt");
    let o = treepack(&[
        "generate",
        "chorded-cycle",
        "--r",
        "4",
        "--chord",
        "0,6,6",
        "-o",
        g.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let o = treepack(&["cover", g.to_str().unwrap()]);
    let doc: toml::Table = toml::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["size"].as_integer(), Some(5));
    assert_eq!(doc["packing_size"].as_integer(), Some(5));
    let o = treepack(&["generate", "chorded-cycle", "--r", "3", "--chord", "0,6,6"]);
    assert!(!o.status.success());
}

#[test]
fn simulate_writes_trace() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("b.txt");
    treepack(&[
        "generate",
        "barbell",
        "--path-edges",
        "4",
        "-o",
        g.to_str().unwrap(),
    ]);
    let trace = dir.path().join("t.jsonl");
    let o = treepack(&[
        "simulate",
        g.to_str().unwrap(),
        "--trace",
        trace.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let doc: toml::Table = toml::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["agrees_with_reference"].as_bool(), Some(true));
    let lines = std::fs::read_to_string(&trace).unwrap();
    assert_eq!(lines.lines().count(), 81);
    let first: serde_json::Value = serde_json::from_str(lines.lines().next().unwrap()).unwrap();
    assert_eq!(first["round"], 1);
}

#[test]
fn reproduce_is_deterministic() {
    let runs: Vec<Report> = (0..2)
        .map(|_| {
            let o = treepack(&["reproduce"]);
            assert!(o.status.success());
            toml::from_str(&stdout(&o)).unwrap()
        })
        .collect();
    assert_eq!(runs[0].without_timings(), runs[1].without_timings());
    let cycle = runs[0]
        .claims
        .iter()
        .find(|c| c.claim_id == "cycle-r2")
        .unwrap();
    assert_eq!(
        (cycle.computed_alpha, cycle.computed_beta),
        (Some(2), Some(2))
    );
    let chain = runs[0]
        .claims
        .iter()
        .find(|c| c.claim_id == "g3-chain-r2")
        .unwrap();
    assert_eq!(chain.computed_alpha, Some(2));
    assert!(runs[0].totals.refuted >= 1);
}
