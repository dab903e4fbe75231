use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn negsssp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_negsssp")).args(args).output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

const G1: &str = "c three vertices\np sp 3 2\na 1 2 4\na 2 3 -2\n";

#[test]
fn solve_prints_distances() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g1.gr", G1);
    let out = negsssp(&["--algo", "bellman-ford", "solve", &g]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "v 1 0\nv 2 4\nv 3 2\n");
}

#[test]
fn every_algorithm_solves_and_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_string_lossy().into_owned();
    let gen = negsssp(&["--seed", "5", "gen", "--n", "80", "--m", "400", "--k", "15", "--nonneg", "0:60", "--count", "3", "--out-dir", &d]);
    assert!(gen.status.success(), "{}", String::from_utf8_lossy(&gen.stderr));
    for entry in fs::read_dir(dir.path()).unwrap() {
        let inst = entry.unwrap().path().to_string_lossy().into_owned();
        for algo in ["recursive", "recursive-improved", "dense", "sparse", "twice-recursive", "twice-sparse", "auto"] {
            let sol = format!("{inst}.{algo}.sol");
            let out = negsssp(&["--algo", algo, "solve", &inst, "--output", &sol]);
            assert!(out.status.success(), "{algo}: {}", String::from_utf8_lossy(&out.stderr));
            let check = negsssp(&["verify", &inst, &sol]);
            assert!(check.status.success(), "{algo}: {}", String::from_utf8_lossy(&check.stderr));
        }
    }
}

#[test]
fn planted_cycle_is_reported_and_verified() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("p.gr").to_string_lossy().into_owned();
    assert!(negsssp(&["gen", "--n", "50", "--m", "200", "--k", "6", "--planted", "--output", &g]).status.success());
    let sol = dir.path().join("p.sol").to_string_lossy().into_owned();
    assert!(negsssp(&["solve", &g, "--output", &sol]).status.success());
    assert!(fs::read_to_string(&sol).unwrap().starts_with("cycle\n"));
    assert!(negsssp(&["verify", &g, &sol]).status.success());
}

#[test]
fn verify_names_the_violated_edge() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g1.gr", G1);
    let sol = write(dir.path(), "bad.sol", "v 1 0\nv 2 5\nv 3 2\n");
    let out = negsssp(&["verify", &g, &sol]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("edge 0"));
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.gr", "p sp 2 1\na 1 5 3\n");
    assert_eq!(negsssp(&["solve", &bad]).status.code(), Some(2));
    let g = write(dir.path(), "g1.gr", G1);
    assert_eq!(negsssp(&["solve", &g, "--source", "9"]).status.code(), Some(2));
    assert_eq!(negsssp(&["solve", "/nonexistent.gr"]).status.code(), Some(2));
}

#[test]
fn json_report_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("a.gr").to_string_lossy().into_owned();
    assert!(negsssp(&["--seed", "2", "gen", "--n", "60", "--m", "300", "--k", "12", "--output", &g]).status.success());
    let run = || negsssp(&["--json", "--algo", "dense", "--seed", "4", "solve", &g]);
    let (a, b) = (run(), run());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stderr, b.stderr);
    let report: serde_json::Value = serde_json::from_slice(&a.stderr).unwrap();
    assert_eq!(report["algorithm"], "dense");
    assert!(report.get("wall_ms").is_none());
}

#[test]
fn bench_writes_rows_in_file_order() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("c");
    let c = corpus.to_string_lossy().into_owned();
    assert!(negsssp(&["gen", "--n", "40", "--m", "160", "--k", "8", "--count", "3", "--out-dir", &c]).status.success());
    let csv = dir.path().join("r.csv").to_string_lossy().into_owned();
    let out = negsssp(&["bench", &c, "--algos", "bellman-ford,recursive", "--csv", &csv]);
    assert!(out.status.success());
    let table = String::from_utf8(out.stdout).unwrap();
    assert!(table.contains("bellman-ford") && table.contains("recursive"));
    let text = fs::read_to_string(&csv).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 7);
    assert!(rows[0].starts_with("instance,algorithm,seed,verdict"));
    assert!(rows[1].starts_with("inst-0000.gr,bellman-ford"));
    assert!(rows[6].starts_with("inst-0002.gr,recursive"));
}

#[test]
fn unknown_algorithm_is_rejected() {
    assert_eq!(negsssp(&["--algo", "magic", "solve", "x.gr"]).status.code(), Some(2));
}
