use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn kb(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("kb").join(name)
}

fn shi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shi")).args(args).output().expect("the binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn unsatisfiable_query_exits_one() {
    let o = shi(&["sat", path(&kb("web_pages_query.kb"))]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "UNSAT");
}

#[test]
fn satisfiable_with_model() {
    let o = shi(&["sat", path(&kb("trivial.kb")), "--model"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("SAT\n"), "{out}");
    assert!(out.contains("individuals: a=d0"), "{out}");
    assert!(out.contains("r: {(d0, d1)}"), "{out}");
}

#[test]
fn missing_file_exits_two() {
    let o = shi(&["sat", "no/such/file.kb"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cannot read"));
}

#[test]
fn parse_errors_exit_two_with_a_position() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.kb");
    std::fs::write(&file, "inst a (and A)\n").unwrap();
    let o = shi(&["sat", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("1:9"), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(shi(&[]).status.code(), Some(2));
    assert_eq!(shi(&["sat", path(&kb("trivial.kb")), "--strategy", "bfs"]).status.code(), Some(2));
}

#[test]
fn instance_checks() {
    let file = kb("web_pages.kb");
    let o = shi(&["instance", path(&file), "b", "(all L I)"]);
    assert_eq!((o.status.code(), stdout(&o).trim().to_string()), (Some(0), "true".into()));
    let o = shi(&["instance", path(&file), "b", "(not I)"]);
    assert_eq!((o.status.code(), stdout(&o).trim().to_string()), (Some(1), "false".into()));
    assert_eq!(shi(&["instance", path(&file), "zz", "I"]).status.code(), Some(2));
}

#[test]
fn concept_consistency() {
    let o = shi(&["consistent", path(&kb("converse.kb")), "top"]);
    assert_eq!((o.status.code(), stdout(&o).trim().to_string()), (Some(1), "false".into()));
    let o = shi(&["consistent", path(&kb("web_pages.kb")), "(and F (some P (not I)))"]);
    assert_eq!(o.status.code(), Some(1));
    let o = shi(&["consistent", path(&kb("web_pages.kb")), "(and F (some P I))"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn dot_stats_and_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("g.dot");
    let o = shi(&["sat", path(&kb("converse.kb")), "--dot", dot.to_str().unwrap(), "--stats", "--oracle", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("nodes: ") && out.contains("rule conv: "), "{out}");
    assert!(out.contains("oracle: no model of size at most 2"), "{out}");
    let graph = std::fs::read_to_string(&dot).unwrap();
    assert!(graph.starts_with("digraph tableau {"));
    assert!(graph.contains("peripheries=2"));
}

#[test]
fn strategies_agree() {
    for name in ["web_pages.kb", "web_pages_query.kb", "converse.kb", "trivial.kb"] {
        let codes: Vec<_> = ["dfs", "fifo"]
            .iter()
            .map(|s| shi(&["sat", path(&kb(name)), "--strategy", s]).status.code())
            .collect();
        assert_eq!(codes[0], codes[1], "{name}");
    }
}
