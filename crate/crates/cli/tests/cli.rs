use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

const SYS1: &str = r#"{
  "algebra": {"type": "finite", "atoms": ["v", "w"]},
  "labels": ["e"],
  "actions": {"e": {"dual": {"w": "v"}}},
  "ideals": {"e": {"principal": ["w"]}},
  "relative": {"principal": ["v"]}
}"#;

const SYS1_TOEPLITZ: &str = r#"{
  "algebra": {"type": "finite", "atoms": ["v", "w"]},
  "labels": ["e"],
  "actions": {"e": {"dual": {"w": "v"}}},
  "relative": {"principal": []}
}"#;

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Self {
        Workspace {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn file(&self, name: &str, contents: &str) -> PathBuf {
        let p = self.dir.path().join(name);
        std::fs::write(&p, contents).unwrap();
        p
    }
}

fn gbds(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gbds")).args(args).output().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json_out(o: &Output) -> Value {
    assert!(o.status.success(), "{}", stderr(o));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn lattice_of_the_edge_system() {
    let ws = Workspace::new();
    let sys = ws.file("sys1.json", SYS1);
    let out = json_out(&gbds(&["lattice", path(&sys), "--format", "json"]));
    assert_eq!(
        out["pairs"],
        json!([{"H": [], "S": ["v"]}, {"H": ["v", "w"], "S": ["v", "w"]}])
    );
    assert_eq!(out["covers"], json!([[0, 1]]));

    let toeplitz = ws.file("toeplitz.json", SYS1_TOEPLITZ);
    let out = json_out(&gbds(&["lattice", path(&toeplitz), "--format", "json"]));
    assert_eq!(out["pairs"].as_array().unwrap().len(), 4);
}

#[test]
fn dot_output_has_one_edge_per_cover() {
    let ws = Workspace::new();
    let sys = ws.file("sys1.json", SYS1);
    let o = gbds(&["export-dot", path(&sys)]);
    assert!(o.status.success());
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("->").count(), 1);
    assert_eq!(stdout(&gbds(&["lattice", path(&sys), "--format", "dot"])), dot);
}

#[test]
fn eval_multiplies_symbolically() {
    let ws = Workspace::new();
    let sys = ws.file("sys1.json", SYS1);
    let o = gbds(&["eval", path(&sys), "s[e;w]^ * s[e;w]"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "p[w]");
}

#[test]
fn eval_in_a_representation() {
    let ws = Workspace::new();
    let sys = ws.file("sys1.json", SYS1);
    let rep = ws.file(
        "rep.json",
        r#"{"dim": 2, "P": {"v": [[1,0],[0,0]], "w": [[0,0],[0,1]]}, "S": {"e|w": [[0,1],[0,0]]}}"#,
    );
    let o = gbds(&["eval", path(&sys), "s[e;w] * s[e;w]^", "--rep", path(&rep), "--format", "json"]);
    let out = json_out(&o);
    assert_eq!(out["matrix"], json!([[1.0, 0.0], [0.0, 0.0]]));

    let check = gbds(&["check-rep", path(&sys), "--rep", path(&rep)]);
    assert!(check.status.success(), "{}", stdout(&check));

    let bad = ws.file(
        "bad.json",
        r#"{"dim": 2, "P": {"v": [[1,0],[0,0]], "w": [[0,0],[0,1]]}, "S": {"e|w": [[0,0],[1,0]]}}"#,
    );
    let o = gbds(&["check-rep", path(&sys), "--rep", path(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("(ii)"));
}

#[test]
fn remark_system_is_inspected_and_checked() {
    let ws = Workspace::new();
    let o = gbds(&["remark-example"]);
    assert!(o.status.success());
    let sys = ws.file("remark.json", &stdout(&o));
    let report = stdout(&gbds(&["inspect", path(&sys)]));
    assert!(report.contains("R_a ⊊ I_a"), "{report}");
    assert!(report.contains("(∅, ℕ)"), "{report}");
    let o = gbds(&["check-rep", path(&sys)]);
    assert!(o.status.success(), "{}", stdout(&o));

    let range = ws.file("range.json", &stdout(&gbds(&["remark-example", "--ideal", "range"])));
    let report = stdout(&gbds(&["inspect", path(&range)]));
    assert!(!report.contains("R_a ⊊ I_a"), "{report}");
}

#[test]
fn tilde_output_is_a_system_of_its_own() {
    let ws = Workspace::new();
    let toeplitz = ws.file("toeplitz.json", SYS1_TOEPLITZ);
    let out = json_out(&gbds(&["tilde", path(&toeplitz), "--format", "json"]));
    assert_eq!(out["copies"], json!([["v", "v'"]]));
    assert_eq!(out["system"]["algebra"]["atoms"], json!(["v", "w", "v'"]));
    let again = ws.file("tilde.json", &out["system"].to_string());
    let lattice = json_out(&gbds(&["lattice", path(&again), "--format", "json"]));
    assert!(!lattice["pairs"].as_array().unwrap().is_empty());
}

#[test]
fn imported_graph_round_trips() {
    let ws = Workspace::new();
    let graph = ws.file(
        "graph.json",
        r#"{"vertices": ["v", "w"], "edges": [{"src": "v", "dst": "w", "label": "e"}]}"#,
    );
    let emitted = stdout(&gbds(&["import-labelled", path(&graph)]));
    let sys = ws.file("imported.json", &emitted);
    let out = json_out(&gbds(&["lattice", path(&sys), "--format", "json"]));
    assert_eq!(out["pairs"].as_array().unwrap().len(), 2);
    let inspect = gbds(&["inspect", path(&sys), "--format", "json"]);
    assert!(inspect.status.success());

    let shared = ws.file(
        "shared.json",
        r#"{"vertices": ["u", "u2", "w"], "edges": [
            {"src": "u", "dst": "w", "label": "a"},
            {"src": "u2", "dst": "w", "label": "a"}]}"#,
    );
    let o = gbds(&["import-labelled", path(&shared)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("NotWeaklyLeftResolving"));
}

#[test]
fn quotients_require_admissible_pairs() {
    let ws = Workspace::new();
    let toeplitz = ws.file("toeplitz.json", SYS1_TOEPLITZ);
    let out = json_out(&gbds(&["quotient", path(&toeplitz), "--h", "w", "--format", "json"]));
    assert_eq!(out["algebra"]["atoms"], json!(["v"]));
    let o = gbds(&["quotient", path(&toeplitz), "--h", "v"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn exit_codes() {
    let ws = Workspace::new();
    let broken = ws.file("broken.json", "{ not json");
    assert_eq!(gbds(&["inspect", path(&broken)]).status.code(), Some(2));
    let missing = ws.dir.path().join("absent.json");
    assert_eq!(gbds(&["inspect", path(&missing)]).status.code(), Some(2));
    let sys = ws.file("sys1.json", SYS1);
    let o = gbds(&["eval", path(&sys), "p[v"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error[Parse]"));
    let invalid = ws.file(
        "invalid.json",
        &SYS1.replace(r#""relative": {"principal": ["v"]}"#, r#""relative": {"principal": ["w"]}"#),
    );
    assert_eq!(gbds(&["inspect", path(&invalid)]).status.code(), Some(1));
}

#[test]
fn output_is_deterministic_and_reparses() {
    let ws = Workspace::new();
    let toeplitz = ws.file("toeplitz.json", SYS1_TOEPLITZ);
    for args in [
        vec!["lattice", path(&toeplitz), "--format", "json"],
        vec!["tilde", path(&toeplitz), "--format", "json"],
        vec!["inspect", path(&toeplitz)],
        vec!["remark-example"],
    ] {
        let (a, b) = (gbds(&args), gbds(&args));
        assert!(a.status.success(), "{args:?}: {}", stderr(&a));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let emitted = stdout(&gbds(&["remark-example"]));
    let again = ws.file("again.json", &emitted);
    let o = gbds(&["inspect", path(&again), "--format", "json"]);
    assert!(o.status.success(), "{}", stderr(&o));
}
