use std::io::Write;
use std::process::{Command, Output, Stdio};

use letterkit::graph::{from_graph6, is_isomorphic, Family};

fn letterkit(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_letterkit"))
        .args(args)
        .env("LETTERKIT_THREADS", "2")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn gen_stacked_path() {
    let o = letterkit(&["gen", "--family", "stacked", "--n", "2", "--g6"], "");
    assert_eq!(code(&o), 0);
    let g = from_graph6(stdout(&o).trim()).unwrap();
    assert_eq!((g.n(), g.edge_count()), (8, 14));
}

#[test]
fn gen_json_and_threshold() {
    let o = letterkit(&["gen", "threshold", "--seq", "iidd", "--json"], "");
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["n"], 4);
    assert_eq!(v["edges"].as_array().unwrap().len(), 5);
}

#[test]
fn lettericity_of_three_matching_from_stdin() {
    let g = stdout(&letterkit(&["gen", "matching", "3"], ""));
    let o = letterkit(&["lettericity"], &g);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().next(), Some("3"));
}

#[test]
fn lettericity_json_report() {
    let g = stdout(&letterkit(&["gen", "path", "4"], ""));
    let o = letterkit(&["lettericity", "-", "--json"], &g);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["k"], 2);
    assert_eq!(v["outcome"], "found");
    assert_eq!(v["lettering"]["word"].as_array().unwrap().len(), 4);
}

#[test]
fn constrained_lettericity_reads_class_file() {
    let dir = std::env::temp_dir().join(format!("letterkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let classes = dir.join("classes.json");
    std::fs::write(&classes, "[[0,4],[1,5],[2,6],[3,7]]").unwrap();
    let graph = dir.join("r2.g6");
    let g = stdout(&letterkit(&["gen", "stacked", "2"], ""));
    std::fs::write(&graph, g).unwrap();
    let o = letterkit(
        &[
            "lettericity",
            graph.to_str().unwrap(),
            "--max-k",
            "4",
            "--classes",
            classes.to_str().unwrap(),
        ],
        "",
    );
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "more than 4");
}

#[test]
fn decode_shorthand() {
    let o = letterkit(&["decode", "--decoder", "ab", "--word", "abab"], "");
    let g = from_graph6(stdout(&o).trim()).unwrap();
    assert!(is_isomorphic(&g, &Family::Path.build(4).unwrap()).unwrap());
}

#[test]
fn decompose_and_profile() {
    let g = stdout(&letterkit(&["gen", "matching", "2"], ""));
    let o = letterkit(&["decompose", "--json"], &g);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["kind"], "parallel");
    let o = letterkit(&["decompose", "--tree"], &g);
    assert_eq!(stdout(&o).lines().count(), 7);
    let o = letterkit(&["profile", "--m", "2"], &g);
    let out = stdout(&o);
    assert!(out.starts_with("p=3 q=2 r=1"), "{out}");
    assert!(out.contains("F_impl="));
}

#[test]
fn compose_verifies() {
    let g = stdout(&letterkit(&["gen", "bull"], ""));
    let o = letterkit(&["compose", "--verify", "--json"], &g);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["recursion_tree"]["case"], "prime");
    assert!(v["bound_check"]["within_f_impl"].as_bool().unwrap());
    let o = letterkit(&["compose", "--verify"], &g);
    assert!(stdout(&o).contains("verified: true"));
}

#[test]
fn verify_paper_prop43() {
    let o = letterkit(&["verify-paper", "--suite", "prop43"], "");
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("PASS prop43"));
}

#[test]
fn verify_paper_json_is_sorted_by_name() {
    let o = letterkit(
        &[
            "verify-paper",
            "--suite",
            "threshold,stacked",
            "--seed",
            "5",
            "--json",
        ],
        "",
    );
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["checks"][0]["name"], "stacked");
    assert_eq!(v["checks"][1]["name"], "threshold");
    assert_eq!(v["passed"], true);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(code(&letterkit(&["lettericity"], "not graph6 \u{7f}")), 2);
    assert_eq!(code(&letterkit(&["gen", "--bogus"], "")), 2);
    assert_eq!(
        code(&letterkit(&["verify-paper", "--suite", "quotients"], "")),
        2
    );
    assert_eq!(
        code(&letterkit(&["verify-paper", "--suite", "nope"], "")),
        2
    );
    assert_eq!(code(&letterkit(&["gen", "cycle", "2"], "")), 2);
}

#[test]
fn exhausted_budget_has_its_own_exit_code() {
    let o = letterkit(&["verify-paper", "--suite", "prop43", "--budget", "0"], "");
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).starts_with("BUDGET prop43"));
}

#[test]
fn sequential_mode_gives_the_same_answer() {
    let g = stdout(&letterkit(&["gen", "stacked", "1"], ""));
    let out = Command::new(env!("CARGO_BIN_EXE_letterkit"))
        .args(["lettericity", "--json"])
        .env("LETTERKIT_THREADS", "0")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .and_then(|mut c| {
            c.stdin.take().unwrap().write_all(g.as_bytes()).unwrap();
            c.wait_with_output()
        })
        .unwrap();
    let par = letterkit(&["lettericity", "--json"], &g);
    let a: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let b: serde_json::Value = serde_json::from_slice(&par.stdout).unwrap();
    assert_eq!(a["lettering"], b["lettering"]);
    assert_eq!(a["decoders_tried"], b["decoders_tried"]);
}
