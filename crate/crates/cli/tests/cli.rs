use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use neartsp::bench::read_csv;
use neartsp::SolveReport;

fn neartsp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_neartsp")).args(args).env_remove("NEARTSP_THREADS").output().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

const FOUR: &str = "4\n1 5 1\n1 1\n1\n";

#[test]
fn analyze_four_vertex_example() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("four.txt");
    fs::write(&f, FOUR).unwrap();
    let out = neartsp(&["analyze", path(&f)]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("n 4\n"));
    assert!(text.contains("p 4\n"));
    assert!(text.contains("q 1\n"));
    assert!(text.contains("min_violating_set 0\n"));
}

#[test]
fn gen_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.txt"), dir.path().join("b.txt"));
    for f in [&a, &b] {
        let out = neartsp(&["gen", "--kind", "q", "--n", "9", "--target", "2", "--seed", "11", "-o", path(f)]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn solve_reports_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("m.txt");
    assert!(neartsp(&["gen", "--kind", "metric", "--n", "9", "--seed", "4", "-o", path(&f)]).status.success());
    for alg in ["alg1", "alg2", "alg4", "christofides", "exact"] {
        let out = neartsp(&["solve", path(&f), "--alg", alg]);
        assert!(out.status.success(), "{alg}: {}", String::from_utf8_lossy(&out.stderr));
        let text = String::from_utf8(out.stdout).unwrap();
        let r = SolveReport::from_json(&text).unwrap();
        assert_eq!(r.algorithm, alg);
        assert_eq!((r.p, r.q), (0, 0));
        assert_eq!(r.within(3, 2), Some(true));
        assert_eq!(
            top_level_keys(&text),
            ["algorithm", "tour", "weight", "opt", "ratio", "p", "q", "guesses_evaluated", "guesses_skipped", "wall_time_ms"]
        );
    }
}

/// Top-level keys of a pretty-printed JSON object, in order.
fn top_level_keys(text: &str) -> Vec<String> {
    text.lines()
        .filter(|l| l.starts_with("  \"") && !l.starts_with("   "))
        .map(|l| l.trim().split('"').nth(1).unwrap().to_string())
        .collect()
}

#[test]
fn bench_writes_ordered_csv() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("r.csv");
    let out = neartsp(&["bench", "--suite", "q", "--count", "4", "--seed", "2", "--alg", "alg4,exact", "--threads", "2", "-o", path(&f)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = read_csv(fs::File::open(&f).unwrap()).unwrap();
    assert_eq!(rows.len(), 8);
    let ids: Vec<usize> = rows.iter().map(|r| r.instance_id).collect();
    assert_eq!(ids, [0, 0, 1, 1, 2, 2, 3, 3]);
    for r in &rows {
        let ratio = r.ratio.unwrap();
        if r.algorithm == "exact" {
            assert_eq!(ratio, 1.0);
        }
        assert!(r.weight as u128 <= 3 * r.opt.unwrap() as u128);
    }
}

#[test]
fn thread_count_does_not_change_results() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    let run = |f: &Path, threads: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_neartsp"))
            .args(["bench", "--suite", "p", "--count", "3", "-o", path(f)])
            .env("NEARTSP_THREADS", threads)
            .output()
            .unwrap();
        assert!(out.status.success());
        read_csv(fs::File::open(f).unwrap()).unwrap()
    };
    let strip = |rows: Vec<neartsp::bench::BenchRow>| {
        rows.into_iter().map(|r| (r.instance_id, r.algorithm, r.weight, r.opt)).collect::<Vec<_>>()
    };
    assert_eq!(strip(run(&a, "1")), strip(run(&b, "3")));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "3\n1 x\n2\n").unwrap();
    assert_eq!(neartsp(&["analyze", path(&bad)]).status.code(), Some(2));
    assert_eq!(neartsp(&["analyze", path(&dir.path().join("missing.txt"))]).status.code(), Some(2));

    let four = dir.path().join("four.txt");
    fs::write(&four, FOUR).unwrap();
    assert_eq!(neartsp(&["solve", path(&four), "--alg", "christofides"]).status.code(), Some(2));
    assert_eq!(neartsp(&["solve", path(&four), "--alg", "alg4", "--caps", "q=0"]).status.code(), Some(3));
    assert_eq!(neartsp(&["solve", path(&four), "--alg", "exact", "--caps", "held_karp=3"]).status.code(), Some(3));
    assert_eq!(neartsp(&["solve", path(&four), "--alg", "exact", "--caps", "bogus=1"]).status.code(), Some(2));
    assert_eq!(neartsp(&["solve", path(&four), "--alg", "nope"]).status.code(), Some(2));
}
