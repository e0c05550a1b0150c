use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use mdtw_core::graph::io;
use mdtw_core::md::build_md;
use mdtw_core::ThreeDMInstance;

fn mdtw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mdtw")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn planted(dir: &Path, n: usize, m: usize, seed: u64) -> std::path::PathBuf {
    let file = dir.join(format!("p{n}_{m}_{seed}.3dm"));
    let o = mdtw(&[
        "gen3dm",
        "--n",
        &n.to_string(),
        "--m",
        &m.to_string(),
        "--seed",
        &seed.to_string(),
        "--planted",
        "--out",
        p(&file),
    ]);
    assert_eq!(code(&o), 0);
    file
}

#[test]
fn gen3dm_is_valid_and_deterministic() {
    let a = mdtw(&["gen3dm", "--n", "1", "--m", "3", "--seed", "7", "--planted"]);
    let b = mdtw(&["gen3dm", "--n", "1", "--m", "3", "--seed", "7", "--planted"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let inst = ThreeDMInstance::parse(&stdout(&a)).unwrap();
    assert_eq!((inst.n, inst.m()), (1, 3));
    assert!(stdout(&a).starts_with("# mdtw gen3dm n=1 m=3 seed=7 planted=true\n"));
    assert_eq!(code(&mdtw(&["gen3dm", "--n", "3", "--m", "2", "--planted"])), 2);
}

#[test]
fn certify_all_on_planted_instance() {
    let dir = tempfile::tempdir().unwrap();
    let inst = planted(dir.path(), 1, 3, 7);
    let facts = dir.path().join("facts.txt");
    let o = mdtw(&["certify", "all", "--in", p(&inst), "--facts", p(&facts)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(out.starts_with("# mdtw certify all seed=7\n"));
    assert!(out.contains("k=121"));
    let facts = fs::read_to_string(facts).unwrap();
    assert!(facts.lines().all(|l| l.starts_with("fact ") && l.contains(" pass")));
    assert!(facts.contains("fact yes-certificate pass"));
}

#[test]
fn certify_no_and_yes_on_a_no_instance() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("no.3dm");
    fs::write(&inst, "3dm 2 3\ntuple 1 1 1\ntuple 1 2 2\ntuple 2 1 2\n").unwrap();
    let o = mdtw(&["certify", "no", "--in", p(&inst)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("PASS C-pair-resolvers"));
    let o = mdtw(&["certify", "yes", "--in", p(&inst)]);
    assert_eq!(code(&o), 1);
    // a planted instance refutes the NO certificate
    let yes = planted(dir.path(), 2, 3, 1);
    let o = mdtw(&["certify", "no", "--in", p(&yes)]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("perfect matching"));
}

#[test]
fn lemma_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    let inst = planted(dir.path(), 2, 3, 3);
    for what in ["lemma1", "forcedset", "forcedvertex", "yes"] {
        let o = mdtw(&["certify", what, "--in", p(&inst)]);
        assert_eq!(code(&o), 0, "{what}");
    }
}

#[test]
fn malformed_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.3dm");
    fs::write(&bad, "3dm 2 1\ntuple 1 1\n").unwrap();
    let o = mdtw(&["reduce", "md", "--in", p(&bad), "--out", p(&dir.path().join("o"))]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    assert_eq!(code(&mdtw(&["reduce", "md", "--in", "/nonexistent", "--out", "x"])), 2);
    assert_eq!(code(&mdtw(&["frobnicate"])), 2);
}

#[test]
fn guards_reject_large_instances() {
    let dir = tempfile::tempdir().unwrap();
    let inst = planted(dir.path(), 2, 3, 0);
    let o = mdtw(&["--max-n", "1", "reduce", "md", "--in", p(&inst), "--out", p(&dir.path().join("o"))]);
    assert_eq!(code(&o), 2);
}

#[test]
fn reduce_md_roundtrips_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let inst_path = planted(dir.path(), 1, 2, 5);
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for out in [&a, &b] {
        let o = mdtw(&["reduce", "md", "--in", p(&inst_path), "--out", p(out)]);
        assert_eq!(code(&o), 0);
        assert!(stdout(&o).contains("k=87 gadgets=86"));
    }
    for f in ["graph.txt", "labels.txt", "sidecar.txt"] {
        assert_eq!(fs::read(a.join(f)).unwrap(), fs::read(b.join(f)).unwrap(), "{f}");
    }
    let g = io::read_graph(
        &fs::read_to_string(a.join("graph.txt")).unwrap(),
        Some(&fs::read_to_string(a.join("labels.txt")).unwrap()),
    )
    .unwrap();
    let inst = ThreeDMInstance::parse(&fs::read_to_string(&inst_path).unwrap()).unwrap();
    let md = build_md(&inst).unwrap();
    assert_eq!(g.edges(), md.graph.edges());
    assert_eq!(g.labels().len(), md.graph.labels().len());
    for v in 0..g.vertex_count() {
        assert_eq!(g.label_string(v), md.graph.label_string(v));
    }
    assert_eq!(g.paths().len(), md.graph.paths().len());
    for path in md.graph.paths() {
        let q = g.path_by_name(&path.name).unwrap();
        assert_eq!((q.first, q.last, q.len), (path.first, path.last, path.len), "{}", path.name);
    }
}

#[test]
fn reduce_mrs_writes_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let inst = planted(dir.path(), 1, 1, 0);
    let out = dir.path().join("g");
    assert_eq!(code(&mdtw(&["reduce", "mrs", "--in", p(&inst), "--out", p(&out)])), 0);
    let side = fs::read_to_string(out.join("sidecar.txt")).unwrap();
    assert!(side.contains("param M 80"));
    assert!(side.contains("xset 1 0"));
    assert!(fs::read_to_string(out.join("graph.txt")).unwrap().starts_with("g 1048 "));
}

#[test]
fn solvers() {
    let dir = tempfile::tempdir().unwrap();
    let inst = planted(dir.path(), 2, 3, 2);
    let o = mdtw(&["solve3dm", "--in", p(&inst)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("answer yes"));
    let o = mdtw(&["solve", "mrs", "--in", p(&inst)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("answer yes"));

    let c6 = dir.path().join("c6.g");
    fs::write(&c6, "g 6 6\ne 0 1\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 0 5\n").unwrap();
    let o = mdtw(&["solve", "tiny", "--graph", p(&c6), "--max-k", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("dimension 2"));
    let o = mdtw(&["solve", "tiny", "--graph", p(&c6), "--max-k", "1"]);
    assert!(stdout(&o).contains("dimension > 1"));
    let o = mdtw(&["--max-tiny-vertices", "5", "solve", "tiny", "--graph", p(&c6), "--max-k", "3"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn width_synth_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let inst = planted(dir.path(), 1, 3, 4);
    let strat = dir.path().join("s.txt");
    let o = mdtw(&["width", "synth", "--in", p(&inst), "--out", p(&strat)]);
    assert_eq!(code(&o), 0);
    let out = dir.path().join("g");
    assert_eq!(code(&mdtw(&["reduce", "md", "--in", p(&inst), "--out", p(&out)])), 0);
    let graph = out.join("graph.txt");
    let o = mdtw(&["width", "verify", "--graph", p(&graph), "--strategy", p(&strat)]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("monotone=true allCleared=true"));
    let o = mdtw(&["width", "verify", "--graph", p(&graph), "--strategy", p(&strat), "--budget", "10"]);
    assert_eq!(code(&o), 1);
    let short = dir.path().join("short.txt");
    fs::write(&short, "+ 0\n- 0\n").unwrap();
    let o = mdtw(&["width", "verify", "--graph", p(&graph), "--strategy", p(&short)]);
    assert_eq!(code(&o), 1);
}

#[test]
fn export_writes_everything() {
    let dir = tempfile::tempdir().unwrap();
    let inst = planted(dir.path(), 1, 1, 0);
    let out = dir.path().join("x");
    assert_eq!(code(&mdtw(&["export", "--in", p(&inst), "--out", p(&out)])), 0);
    for f in ["instance.3dm", "mrs.graph", "mrs.labels", "mrs.sidecar", "md.graph", "md.labels", "md.sidecar", "md.strategy", "md.bags"] {
        assert!(out.join(f).exists(), "{f}");
    }
}

#[test]
fn worker_env_is_validated() {
    let o = Command::new(env!("CARGO_BIN_EXE_mdtw"))
        .env("MDTW_WORKERS", "zero")
        .args(["gen3dm", "--n", "1", "--m", "1"])
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
    let o = Command::new(env!("CARGO_BIN_EXE_mdtw"))
        .env("MDTW_WORKERS", "2")
        .args(["gen3dm", "--n", "1", "--m", "1"])
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
}
