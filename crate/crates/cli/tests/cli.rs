use std::process::{Command, Output};

use injpack_core::graph::graph6;

fn injpack(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_injpack"))
        .args(args)
        .env_remove("INJPACK_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn solve_injective_on_sierpinski() {
    let out = injpack(&["solve", "chi-i", "--graph", "sierpinski:p=3,n=2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("chi-i = 3\n"));

    let out = injpack(&[
        "--json",
        "--deterministic",
        "solve",
        "chi-i",
        "--graph",
        "sierpinski:p=3,n=2",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"]["value"], 3);
    assert_eq!(v["results"]["exact"], true);
    assert_eq!(v["timestamp"], serde_json::Value::Null);
}

#[test]
fn verify_single_instance() {
    let out = injpack(&["verify", "theorem-3.1", "--p", "3", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("PASS"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn gen_petersen_graph6() {
    let out = injpack(&["gen", "--graph", "kneser:n=5,r=2", "--format", "graph6"]);
    assert_eq!(out.status.code(), Some(0));
    let g = graph6::decode(stdout(&out).trim()).unwrap();
    assert_eq!((g.n(), g.edge_count()), (10, 15));
    assert!((0..10).all(|v| g.degree(v) == 3));
}

#[test]
fn graph6_file_input() {
    let dir = std::env::temp_dir().join(format!("injpack-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("c5.g6");
    let c5 = injpack(&["gen", "--graph", "cycle:5", "--format", "graph6"]);
    std::fs::write(&path, &c5.stdout).unwrap();
    let out = injpack(&["solve", "rho-o", "--graph", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("rho-o = 2\n"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn perfect_and_transfer() {
    let out = injpack(&["--json", "solve", "perfect", "--graph", "kneser:n=7,r=3"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"]["answer"], "no");

    let out = injpack(&[
        "transfer",
        "edge-from-injective",
        "--graph",
        "sierpinski:p=3,n=2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = injpack(&["transfer", "lift", "--graph", "cycle:5"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn exit_codes() {
    assert_eq!(injpack(&["bogus"]).status.code(), Some(2));
    assert_eq!(
        injpack(&["solve", "chi", "--graph", "nonsense:1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(injpack(&["verify", "lemma-9"]).status.code(), Some(2));
    let out = injpack(&[
        "--budget-nodes",
        "5",
        "solve",
        "chi-i",
        "--graph",
        "kneser:n=7,r=3",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn csv_and_markdown_reports() {
    let csv = injpack(&["verify", "lemma-2.2", "--format", "csv"]);
    assert_eq!(csv.status.code(), Some(0));
    let text = stdout(&csv);
    assert!(text.starts_with("target,family,params,claimed,computed,status"));
    let md = injpack(&["verify", "lemma-2.2"]);
    assert!(stdout(&md).contains("| target |"));
}
