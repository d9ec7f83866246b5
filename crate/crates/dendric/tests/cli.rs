//! End-to-end tests of the command-line binary.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn workdir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dendric-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(dir: &PathBuf, name: &str, content: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, content).unwrap();
    path.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dendric"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn ext_graph_dot_output() {
    let dir = workdir();
    let fib = write(&dir, "fib.txt", "a -> ab\nb -> a\n");
    let out = run(&[
        "--substitution", &fib, "--horizon", "12", "ext-graph", "--word", "a", "--format", "dot",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("graph \"ext_a_1\" {"));
    assert_eq!(text.matches(" -- ").count(), 3);
}

#[test]
fn returns_lists_three_words() {
    let dir = workdir();
    let trib = write(&dir, "trib.txt", "a -> ab\nb -> ac\nc -> a\n");
    let out = run(&["--substitution", &trib, "--horizon", "30", "returns", "--word", "c"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "abac\nababac\nabaabac\n");
}

#[test]
fn dendric_verdicts_and_exit_codes() {
    let dir = workdir();
    let chacon = write(&dir, "chacon.txt", "a -> aabc\nb -> bc\nc -> abc\n");
    let out = run(&["--substitution", &chacon, "--horizon", "16", "dendric", "--max", "12"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("rejected within scan"));

    let fib = write(&dir, "fib.txt", "a -> ab\nb -> a\n");
    let out = run(&["--substitution", &fib, "--horizon", "12", "dendric", "--max", "8"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("threshold 0"));
}

#[test]
fn language_json_round_trips_through_a_pipe() {
    let dir = workdir();
    let trib = write(&dir, "trib.txt", "a -> ab\nb -> ac\nc -> a\n");
    let alpha = write(&dir, "alpha.txt", "a -> a\nb -> a\nc -> c\n");
    let out = run(&[
        "--substitution", &trib, "--horizon", "30",
        "alpha-image", "--morphism", &alpha, "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json = write(&dir, "image.json", &stdout(&out));
    let out = run(&["--language", &json, "dendric", "--max", "12"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("eventually dendric within scan, threshold 4"));
}

#[test]
fn complexity_csv() {
    let dir = workdir();
    let fib = write(&dir, "fib.txt", "a -> ab\nb -> a\n");
    let out = run(&[
        "--substitution", &fib, "--horizon", "8", "complexity", "--max", "6", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("n,p,s,b,ls,rs\n"));
    assert!(text.contains("\n5,6,1,0,1,1\n"));
}

#[test]
fn return_theorem_passes_on_fibonacci() {
    let dir = workdir();
    let fib = write(&dir, "fib.txt", "a -> ab\nb -> a\n");
    let out = run(&[
        "--substitution", &fib, "--horizon", "24",
        "return-theorem", "--m", "0", "--from", "1", "--to", "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).lines().all(|l| l.ends_with("pass")));
}

#[test]
fn asymptotic_template_report() {
    let dir = workdir();
    let ts = write(&dir, "t.txt", "c | | ab\nd | | ab\nab | | ab\n");
    let out = run(&["--templates", &ts, "asymptotic"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("5 orbits, omega = 2"));
    assert!(text.contains("cluster of trees"));
}

#[test]
fn random_code_is_deterministic_per_seed() {
    let dir = workdir();
    let fib = write(&dir, "fib.txt", "a -> ab\nb -> a\n");
    let args = [
        "--substitution", &fib[..], "--horizon", "20", "--seed", "42",
        "random-code", "--m", "0", "--steps", "6",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).contains("rho(U) = 1, rho(L_0) = 1"));
}

#[test]
fn usage_errors_exit_two() {
    // no source at all
    let out = run(&["dendric", "--max", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("exactly one of"));

    // horizon too small for the requested scan
    let dir = workdir();
    let fib = write(&dir, "fib.txt", "a -> ab\nb -> a\n");
    let out = run(&["--substitution", &fib, "--horizon", "6", "dendric", "--max", "10"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("need at least 12"));
}

#[test]
fn group_code_command() {
    let dir = workdir();
    let fib = write(&dir, "fib.txt", "a -> ab\nb -> a\n");
    let perm = write(&dir, "perm.txt", "a: (1 2)\nb: id\n");
    let out = run(&[
        "--substitution", &fib, "--horizon", "12",
        "group-code", "--perm", &perm, "--point", "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "b\naa\naba\n");
}

#[test]
fn iteration_cap_env_var() {
    let dir = workdir();
    let fib = write(&dir, "fib.txt", "a -> ab\nb -> a\n");
    let out = Command::new(env!("CARGO_BIN_EXE_dendric"))
        .args(["--substitution", &fib, "--horizon", "12", "language"])
        .env("DENDRIC_MAX_ITER", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("did not stabilize within 2"));
}
