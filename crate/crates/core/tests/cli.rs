use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_opposition"))
}

fn run(args: &[&str]) -> (i32, String) {
    let out = bin().args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn temp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("opposition-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn displacement_of_e7() {
    assert_eq!(run(&["displacement", "--type", "E7", "--circled", "1,6"]), (0, "50\n".into()));
}

#[test]
fn e6_duality_diagrams() {
    let (code, out) = run(&["diagrams", "enumerate", "--type", "E6", "--auto", "op2"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("2 admissible diagrams\n"), "{out}");
}

#[test]
fn check_reports_verdicts() {
    let graph = temp("b3.graph");
    std::fs::write(&graph, "node 1\nnode 2\nnode 3\nbond 1 2 3\nbond 2 3 4\n").unwrap();
    let g = graph.to_str().unwrap();
    assert_eq!(run(&["diagrams", "check", "--graph", g, "--circled", "2"]).0, 0);
    assert_eq!(run(&["diagrams", "check", "--graph", g, "--circled", "3"]).0, 1);
    assert_eq!(run(&["diagrams", "check", "--graph", "A3", "--circled", "2", "--auto", "(1,3)"]).0, 0);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["displacement", "--type", "Q9"]).0, 2);
    assert_eq!(run(&["geometry", "build", "--kind", "polar", "--n", "5", "--q", "2"]).0, 2);
    assert_eq!(run(&["diagrams", "verify-tables", "--max-rank", "9"]).0, 2);
}

#[test]
fn verify_tables_is_deterministic() {
    let (a, b) = (temp("t1.json"), temp("t2.json"));
    for p in [&a, &b] {
        let out = run(&["diagrams", "verify-tables", "--max-rank", "6", "--format", "json", "--out", p.to_str().unwrap()]);
        assert_eq!(out.0, 0);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn fano_search_finds_one_class() {
    let out = temp("fano.kv");
    let (code, text) = run(&["geometry", "search-exceptional", "--geom", "A2@2", "--kind", "duality", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(text.contains("1 conjugacy class"), "{text}");
    let records = std::fs::read_to_string(out).unwrap();
    assert!(!records.is_empty());
    assert!(records.lines().all(|l| l.contains("order=8") && l.contains("capped=false")));
}

#[test]
fn analyze_a_polarity_file() {
    let file = temp("polarity.auto");
    std::fs::write(
        &file,
        "geometry projective n=4 q=2\nkind duality\nform 0 1 0 0 1 0 0 0 0 0 0 1 0 0 1 0\nmatrix\n1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n",
    )
    .unwrap();
    let (code, text) = run(&["geometry", "analyze", "--geom", "A3@2", "--auto-file", file.to_str().unwrap()]);
    assert_eq!(code, 0, "{text}");
    assert!(text.contains("measured=4 formula=4"), "{text}");
    assert_eq!(run(&["geometry", "analyze", "--geom", "A3@3", "--auto-file", file.to_str().unwrap()]).0, 2);
}

#[test]
fn sampling_is_reproducible() {
    let (a, b) = (temp("s1.kv"), temp("s2.kv"));
    for p in [&a, &b] {
        let args = ["--threads", "3", "geometry", "sample", "--geom", "B2@2", "--count", "25", "--seed", "7", "--out", p.to_str().unwrap()];
        assert_eq!(run(&args).0, 0);
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text.lines().count(), 25);
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
}

#[test]
fn build_reports_counts() {
    let (code, text) = run(&["geometry", "build", "--kind", "polar", "--n", "6", "--q", "2"]);
    assert_eq!(code, 0);
    assert!(text.contains("2835 chambers"), "{text}");
}
