//! End-to-end tests of the command-line interface: every subcommand, the
//! documented exit codes, byte-level determinism, and agreement with direct
//! library calls.

use std::process::{Command, Output};
use std::sync::Arc;

use cluster_quiver::cluster::ClusterFunction;
use cluster_quiver::quiver::{QuiverSpec, Window};
use cluster_quiver::tsv;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cluster-quiver"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn tmp_path(name: &str) -> std::path::PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("cluster-quiver-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn extend_matches_library_output() {
    let out = run(&[
        "extend",
        "--quiver",
        "preset:A2:linear",
        "--level",
        "0",
        "--slice-values",
        "1=-1,2=0",
        "--window",
        "3",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("2\t2\t-1"));

    // the CLI is a thin adapter: byte-identical to the library path
    let q = Arc::new(QuiverSpec::preset("A2").unwrap());
    let f = ClusterFunction::from_standard(Arc::clone(&q), 0, vec![-1, 0]).unwrap();
    let w = Window::levels(&q, 0, 3);
    let expected = tsv::write_values(&q, f.values_on(&w));
    assert_eq!(text, expected);
}

#[test]
fn eval_prints_single_value() {
    let out = run(&[
        "eval",
        "--quiver",
        "preset:A2:linear",
        "--slice-values",
        "1=-1,2=0",
        "--at",
        "2:2",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "-1");
}

#[test]
fn tilting_enumerate_counts() {
    let out = run(&[
        "tilting",
        "enumerate",
        "--quiver",
        "preset:A2:linear",
        "--count-only",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "5");

    let listed = run(&["tilting", "enumerate", "--quiver", "preset:A3"]);
    assert!(listed.status.success());
    assert_eq!(stdout(&listed).lines().count(), 14);
}

#[test]
fn tilting_check_exit_codes() {
    let good = run(&[
        "tilting",
        "check",
        "--quiver",
        "preset:A2",
        "--set",
        "1:0,2:0",
    ]);
    assert!(good.status.success());
    assert!(stdout(&good).starts_with("tilting"));

    let bad = run(&[
        "tilting",
        "check",
        "--quiver",
        "preset:A2",
        "--set",
        "1:0,1:1",
    ]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("not-partial-tilting"));
}

#[test]
fn tilting_mutate_swaps_the_member() {
    let out = run(&[
        "tilting",
        "mutate",
        "--quiver",
        "preset:A2",
        "--set",
        "1:0,2:0",
        "--at",
        "1:0",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "removed=1:0 inserted=1:1 set=1:1,2:0");
}

#[test]
fn tilting_graph_is_the_pentagon() {
    let out = run(&["tilting", "graph", "--quiver", "preset:A2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("graph mutation {"));
    assert_eq!(text.matches(" -- ").count(), 5);
}

#[test]
fn scan_summary_line_and_exit() {
    let out = run(&["scan", "--quiver", "preset:A2:linear", "--range", "-2:2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "anchors=25 decomposed=25 anomalies=0");
}

#[test]
fn scan_is_deterministic_across_thread_counts() {
    let a = bin()
        .args(["scan", "--quiver", "preset:A3", "--range", "-1:1", "--json"])
        .env("CLUSTER_QUIVER_THREADS", "1")
        .output()
        .unwrap();
    let b = bin()
        .args(["scan", "--quiver", "preset:A3", "--range", "-1:1", "--json"])
        .env("CLUSTER_QUIVER_THREADS", "4")
        .output()
        .unwrap();
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn scan_shards_partition_the_anchors() {
    let mut anchors = 0u64;
    let mut decomposed = 0u64;
    for shard in ["0/3", "1/3", "2/3"] {
        let out = run(&[
            "scan",
            "--quiver",
            "preset:A2",
            "--range",
            "-1:1",
            "--shard",
            shard,
            "--json",
        ]);
        assert!(out.status.success());
        let value: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
        anchors += value["anchors"].as_u64().unwrap();
        decomposed += value["decomposed"].as_u64().unwrap();
    }
    assert_eq!(anchors, 9);
    assert_eq!(decomposed, 9);
}

#[test]
fn scan_cursor_resumes() {
    let cursor = tmp_path("cursor");
    let _ = std::fs::remove_file(&cursor);
    std::fs::write(&cursor, "20\n").unwrap();
    let out = run(&[
        "scan",
        "--quiver",
        "preset:A2",
        "--range",
        "-2:2",
        "--cursor",
        cursor.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("resumed at anchor index 20"));
    assert!(text.contains("anchors=5 decomposed=5 anomalies=0"));
    // cursor now points past the end; a rerun does nothing
    let again = run(&[
        "scan",
        "--quiver",
        "preset:A2",
        "--range",
        "-2:2",
        "--cursor",
        cursor.to_str().unwrap(),
    ]);
    assert!(stdout(&again).contains("anchors=0"));
    std::fs::remove_file(&cursor).unwrap();
}

#[test]
fn check_accepts_clean_tables_and_flags_corrupt_ones() {
    let q = Arc::new(QuiverSpec::preset("A2").unwrap());
    let f = ClusterFunction::from_standard(Arc::clone(&q), 0, vec![-1, 0]).unwrap();
    let w = Window::levels(&q, 0, 3);
    let clean = tsv::write_values(&q, f.values_on(&w));

    let path = tmp_path("clean.tsv");
    std::fs::write(&path, &clean).unwrap();
    let out = run(&[
        "check",
        "--quiver",
        "preset:A2",
        "--values",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("violations=0"));

    let corrupt = clean.replace("2\t2\t-1", "2\t2\t9");
    std::fs::write(&path, &corrupt).unwrap();
    let out = run(&[
        "check",
        "--quiver",
        "preset:A2",
        "--values",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("mesh at"));

    // a gap in the table is an input error
    let gappy: String = clean
        .lines()
        .filter(|l| !l.starts_with("1\t2"))
        .map(|l| format!("{l}\n"))
        .collect();
    std::fs::write(&path, &gappy).unwrap();
    let out = run(&[
        "check",
        "--quiver",
        "preset:A2",
        "--values",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn hammock_outputs() {
    let out = run(&["hammock", "--quiver", "preset:A2", "--vertex", "1:0"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "base\tlevel\tvalue\n1\t0\t1\n2\t0\t1\n");

    // infinite support is a finding, not a usage error
    let path = tmp_path("kronecker.q");
    std::fs::write(&path, "v a\nv b\na a b 2\n").unwrap();
    let out = run(&[
        "hammock",
        "--quiver",
        path.to_str().unwrap(),
        "--vertex",
        "a:0",
    ]);
    assert_eq!(out.status.code(), Some(1));
    std::fs::remove_file(&path).unwrap();

    let cluster = run(&[
        "cluster-hammock",
        "--quiver",
        "preset:A2",
        "--vertex",
        "1:0",
        "--window",
        "5",
    ]);
    assert!(cluster.status.success());
    let text = stdout(&cluster);
    assert!(text.contains("1\t0\t-1"));
    assert!(text.contains("1\t5\t-1"));
}

#[test]
fn dt_prints_the_combination() {
    let out = run(&[
        "dt",
        "--quiver",
        "preset:A2",
        "--set",
        "1:0,2:0",
        "--multiplicities",
        "1,1",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("1\t0\t-1"));
    assert!(text.contains("2\t1\t2"));
}

#[test]
fn decompose_json_is_machine_readable() {
    let out = run(&[
        "decompose",
        "--quiver",
        "preset:A2",
        "--slice-values",
        "1=-2,2=-1",
        "--json",
    ]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(value["status"], "decomposed");
    assert_eq!(value["residual_norm"], 0);
    assert!(value["terms"].as_array().unwrap().len() == 2);
}

#[test]
fn laws_run_and_report() {
    let out = run(&[
        "laws",
        "--quiver",
        "preset:A4",
        "--law",
        "rectangle",
        "--trials",
        "5",
        "--seed",
        "1",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("failures=0"));

    let bad = run(&["laws", "--quiver", "preset:A4", "--law", "pentagon"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn laws_fixed_seed_is_byte_identical() {
    let args = [
        "laws",
        "--quiver",
        "preset:A3",
        "--law",
        "wing",
        "--trials",
        "7",
        "--seed",
        "99",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn export_dot_renders_values() {
    let out = run(&[
        "export-dot",
        "--quiver",
        "preset:A2",
        "--window",
        "2",
        "--slice-values",
        "1=-1,2=0",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("digraph"));
    assert!(text.contains("label=\"1:0=-1\""));

    let too_big = run(&["export-dot", "--quiver", "preset:A4", "--window", "400"]);
    assert_eq!(too_big.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["extend", "--quiver", "preset:A2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["extend", "--quiver", "preset:Q9", "--slice-values", "1=0"]);
    assert_eq!(out.status.code(), Some(2));
}
