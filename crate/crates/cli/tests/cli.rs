use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn nilred(args: &[&str]) -> Output {
    let args: Vec<String> = args
        .iter()
        .map(|a| if a.contains('.') { data(a).to_string_lossy().into_owned() } else { a.to_string() })
        .collect();
    Command::new(env!("CARGO_BIN_EXE_nilred")).args(&args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(data(name)).unwrap()
}

#[test]
fn graph2algebra_k2_matches_golden() {
    let o = nilred(&["graph2algebra", "k2.graph", "--p", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), golden("k2_lie.golden"));
}

#[test]
fn graph2algebra_commutative_kind() {
    let o = nilred(&["graph2algebra", "k2.graph", "--p", "3", "--kind", "commutative"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "3 2 commutative\n1 2 edge\nv1 * v2 = 1 * a12\nv2 * v1 = 1 * a12\n");
}

#[test]
fn graph2algebra_errors() {
    let o = nilred(&["graph2algebra", "k2.graph", "--p", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("odd"));
    let empty = std::env::temp_dir().join("nilred-empty.graph");
    std::fs::write(&empty, "").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_nilred"))
        .args(["graph2algebra", empty.to_str().unwrap(), "--p", "3"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
}

#[test]
fn graph2group_presentations() {
    let o = nilred(&["graph2group", "k2.graph", "--p", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), golden("k2_presentation.golden"));

    let o = nilred(&["graph2group", "k1.graph", "--p", "3"]);
    assert_eq!(stdout(&o), "F := FreeGroup(\"g1\");\nrels := [ g1^27 ];\n");

    let text = stdout(&nilred(&["graph2group", "k3.graph", "--p", "3"]));
    assert_eq!(text.matches("]*a").count(), 3);
    for a in ["a12^3", "a13^3", "a23^3"] {
        assert!(text.contains(a), "{a}");
    }
    assert!(!text.contains("^9"));
}

#[test]
fn group2graph_output() {
    let o = nilred(&["group2graph", "z3.cayley"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("3 27\n"));
    assert!(text.contains("e1 t1 3\n"));

    let o = nilred(&["group2graph", "z3.cayley", "--simple"]);
    assert!(o.status.success());
    let n: usize = stdout(&o).lines().next().unwrap().parse().unwrap();
    assert!(n > 30);

    let o = nilred(&["group2graph", "z2.cayley"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check_iso_exit_codes() {
    let o = nilred(&["check-iso", "graph", "c4a.graph", "c4b.graph"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "isomorphic\n1 3 2 4\n");

    assert_eq!(nilred(&["check-iso", "graph", "c4a.graph", "k3.graph"]).status.code(), Some(1));
    assert_eq!(nilred(&["check-iso", "group-small", "z4.cayley", "klein.cayley"]).status.code(), Some(1));
    assert_eq!(nilred(&["check-iso", "group-small", "z4.cayley", "z4.cayley"]).status.code(), Some(0));
    assert_eq!(nilred(&["check-iso", "graph", "malformed.graph", "c4a.graph"]).status.code(), Some(2));
    assert_eq!(nilred(&["check-iso", "graph", "c4a.graph", "missing.graph"]).status.code(), Some(2));
}

#[test]
fn check_iso_multigraph_and_matrix_pair() {
    let dir = std::env::temp_dir();
    let a = dir.join("nilred-z3.multi");
    std::fs::write(&a, stdout(&nilred(&["group2graph", "z3.cayley"]))).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_nilred"))
        .args(["check-iso", "multigraph", a.to_str().unwrap(), a.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));

    let o = nilred(&["check-iso", "matrix-pair", "pair_a.mat", "pair_c.mat"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "isomorphic\n2 3\n1 0\n0 2\n");
    assert_eq!(nilred(&["check-iso", "matrix-pair", "pair_a.mat", "pair_b.mat"]).status.code(), Some(1));
}

#[test]
fn verify_suites() {
    let o = nilred(&["verify", "--suite", "sizes"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("SIZE group Z3 m=3 -> multigraph vertices=30"));
    assert!(text.ends_with("RESULT pass=1 fail=0\n"));

    let o = nilred(&["verify", "--suite", "gamma"]);
    assert!(o.status.success());
    assert!(stdout(&o).ends_with("RESULT pass=2 fail=0\n"));

    let o = nilred(&["verify", "--suite", "algebra", "--p", "5", "--max-n", "3", "--seed", "7"]);
    assert!(o.status.success(), "{}", stdout(&o));
}

#[test]
fn verify_all_default_flags() {
    let o = nilred(&["verify", "--suite", "all", "--p", "3", "--max-n", "4"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 10);
    assert!(text.ends_with("RESULT pass=10 fail=0\n"));
    // deterministic for a fixed seed
    assert_eq!(stdout(&nilred(&["verify", "--suite", "all", "--p", "3", "--max-n", "4"])), text);
}
