use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const TWO_CLAUSES: &str = "p cnf 3 2\n1 2 3 0\n-1 -2 -3 0\n";

fn phutball(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_phutball"))
        .current_dir(dir)
        .args(args)
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn setup(files: &[(&str, &str)]) -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    for (name, text) in files {
        fs::write(dir.path().join(name), text).unwrap();
    }
    dir
}

#[test]
fn reduce_solve_verify_witness_pipeline() {
    let dir = setup(&[("f.cnf", TWO_CLAUSES)]);
    let d = dir.path();
    assert_eq!(
        code(&phutball(d, &["reduce", "f.cnf", "--out", "b.txt"])),
        0
    );
    assert!(d.join("b.txt.manifest").exists());

    assert_eq!(code(&phutball(d, &["solve", "b.txt", "--out", "s.txt"])), 0);
    let v = phutball(d, &["verify", "b.txt", "s.txt"]);
    assert_eq!(code(&v), 0);
    assert!(stdout(&v).starts_with("valid winning"));

    let w = phutball(
        d,
        &[
            "witness",
            "b.txt",
            "--manifest",
            "b.txt.manifest",
            "--sequence",
            "s.txt",
        ],
    );
    assert_eq!(code(&w), 0);
    let a = stdout(&w);
    let vals: Vec<&str> = a.split_whitespace().collect();
    assert_eq!(vals.len(), 3);
    assert!(vals.contains(&"T") && vals.contains(&"F"), "{a}");

    let back = phutball(
        d,
        &[
            "witness",
            "b.txt",
            "--manifest",
            "b.txt.manifest",
            "--assignment",
            "F T F",
            "--out",
            "w.txt",
        ],
    );
    assert_eq!(code(&back), 0);
    assert_eq!(code(&phutball(d, &["verify", "b.txt", "w.txt"])), 0);

    let unsat = phutball(
        d,
        &[
            "witness",
            "b.txt",
            "--manifest",
            "b.txt.manifest",
            "--assignment",
            "T T T",
        ],
    );
    assert_eq!(code(&unsat), 1);
}

#[test]
fn reduce_to_stdout_and_empty_formula() {
    let dir = setup(&[("e.cnf", "p cnf 0 0\n")]);
    let o = phutball(dir.path(), &["reduce", "e.cnf"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("phutball 1 4\n"));
}

#[test]
fn input_errors_exit_two() {
    let dir = setup(&[
        ("wide.cnf", "p cnf 4 1\n1 2 3 4 0\n"),
        ("bad.txt", "nonsense\n"),
    ]);
    let d = dir.path();
    assert_eq!(code(&phutball(d, &["reduce", "wide.cnf"])), 2);
    assert_eq!(code(&phutball(d, &["reduce", "missing.cnf"])), 2);
    assert_eq!(code(&phutball(d, &["solve", "bad.txt"])), 2);
    assert_eq!(code(&phutball(d, &["roundtrip", "--vars", "5..2"])), 2);
    assert_eq!(code(&phutball(d, &["no-such-command"])), 2);
}

#[test]
fn solve_statuses() {
    let dir = setup(&[
        ("one.txt", "phutball 1 3\n.\nO\n@\n"),
        ("empty.txt", "phutball 3 3\n...\n...\n.@.\n"),
        ("f.cnf", TWO_CLAUSES),
    ]);
    let d = dir.path();
    let win = phutball(d, &["solve", "one.txt"]);
    assert_eq!(code(&win), 0);
    assert!(stdout(&win).starts_with("win 0,2"));
    assert_eq!(code(&phutball(d, &["solve", "empty.txt"])), 1);
    assert_eq!(
        code(&phutball(d, &["solve", "one.txt", "--solver", "plain-dfs"])),
        0
    );
    assert_eq!(
        code(&phutball(d, &["solve", "one.txt", "--solver", "nope"])),
        2
    );

    phutball(d, &["reduce", "f.cnf", "--out", "b.txt"]);
    let limited = phutball(d, &["solve", "b.txt", "--node-limit", "3"]);
    assert_eq!(code(&limited), 3);
    assert!(stdout(&limited).starts_with("limit"));
    assert_eq!(
        code(&phutball(d, &["solve", "b.txt", "--orthogonal-only"])),
        0
    );
}

#[test]
fn verify_statuses() {
    let dir = setup(&[
        ("b.txt", "phutball 1 5\n.\n.\nO\nO\n@\n"),
        ("short.txt", "0,3\n"),
        ("invalid.txt", "0,2\n"),
        ("g.txt", "phutball 1 4\n.\nO\nO\n@\n"),
    ]);
    let d = dir.path();
    let won = phutball(d, &["verify", "g.txt", "short.txt"]);
    assert_eq!(code(&won), 0);
    assert_eq!(stdout(&won), "valid winning, 1 jumps, 2 men removed\n");
    let short = phutball(d, &["verify", "b.txt", "short.txt"]);
    assert_eq!(code(&short), 1);
    assert!(stdout(&short).starts_with("valid non-winning"));
    let bad = phutball(d, &["verify", "b.txt", "invalid.txt"]);
    assert_eq!(code(&bad), 1);
    assert_eq!(stdout(&bad), "invalid at step 1\n");
}

#[test]
fn roundtrip_reports_are_reproducible() {
    let dir = setup(&[]);
    let d = dir.path();
    let args = [
        "roundtrip",
        "--seed",
        "7",
        "--count",
        "12",
        "--vars",
        "1..4",
        "--clauses",
        "1..5",
        "--orthogonal-only",
    ];
    let a = phutball(d, &args);
    let b = phutball(d, &args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).ends_with("RESULT: roundtrip agree=12/12 bounds=12/12 limit=none\n"));

    let unsat = phutball(
        d,
        &[
            "roundtrip",
            "--count",
            "4",
            "--vars",
            "1..3",
            "--clauses",
            "8..10",
            "--filter",
            "unsat",
        ],
    );
    assert_eq!(code(&unsat), 0);
    let text = stdout(&unsat);
    assert!(text
        .lines()
        .filter(|l| l.contains(" unsat "))
        .all(|l| l.contains("no-win")));
    assert_eq!(text.lines().filter(|l| l.contains(" unsat ")).count(), 4);
}

#[test]
fn gadget_check_passes() {
    let dir = setup(&[]);
    let o = phutball(dir.path(), &["gadget-check", "--out", "g.txt"]);
    assert_eq!(code(&o), 0);
    let text = fs::read_to_string(dir.path().join("g.txt")).unwrap();
    assert!(text.ends_with("RESULT: gadgets pass\n"));
    assert!(!text.contains(" FAIL "));
}

#[test]
fn checkers_tests_through_both_analyzers() {
    let dir = setup(&[
        ("win.txt", "checkers 4 4 white\n....\n....\n.b..\nW...\n"),
        ("king.txt", "checkers 4 4 black\n....\n..w.\n....\nb...\n"),
        (
            "blocked.txt",
            "checkers 4 4 black\n....\n..w.\n.w..\nb...\n",
        ),
    ]);
    let d = dir.path();
    for analyzer in ["jump-graph", "brute-force"] {
        let w = phutball(
            d,
            &[
                "checkers",
                "win.txt",
                "win-test",
                "white",
                "--analyzer",
                analyzer,
            ],
        );
        assert_eq!(code(&w), 0, "{analyzer}");
        assert!(stdout(&w).starts_with("win: 0,0 -> 2,2"));
        assert_eq!(
            code(&phutball(
                d,
                &[
                    "checkers",
                    "win.txt",
                    "win-test",
                    "black",
                    "--analyzer",
                    analyzer
                ]
            )),
            1
        );
        assert_eq!(
            code(&phutball(
                d,
                &[
                    "checkers",
                    "blocked.txt",
                    "king-test",
                    "0,0",
                    "--analyzer",
                    analyzer
                ]
            )),
            1
        );
    }
    assert_eq!(
        code(&phutball(d, &["checkers", "king.txt", "king-test", "0,0"])),
        1
    );
    assert_eq!(
        code(&phutball(d, &["checkers", "win.txt", "king-test", "0,0"])),
        2
    );
    assert_eq!(
        code(&phutball(d, &["checkers", "win.txt", "win-test", "green"])),
        2
    );
    assert_eq!(
        code(&phutball(
            d,
            &[
                "checkers",
                "win.txt",
                "win-test",
                "white",
                "--analyzer",
                "nope"
            ]
        )),
        2
    );
}

#[test]
fn checkers_suite_agrees() {
    let dir = setup(&[]);
    let o = phutball(
        dir.path(),
        &["checkers-suite", "--count", "60", "--seed", "3"],
    );
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("RESULT: checkers agree=60/60 laws=60/60 replay=60/60\n"));
}

#[test]
fn render_formats() {
    let dir = setup(&[("b.txt", "phutball 1 3\n.\nO\n@\n"), ("s.txt", "0,2\n")]);
    let d = dir.path();
    let ascii = phutball(d, &["render", "b.txt"]);
    assert_eq!(stdout(&ascii), "phutball 1 3\n.\nO\n@\n");
    let svg = phutball(
        d,
        &[
            "render",
            "b.txt",
            "--format",
            "svg",
            "--sequence",
            "s.txt",
            "--out",
            "b.svg",
        ],
    );
    assert_eq!(code(&svg), 0);
    let text = fs::read_to_string(d.join("b.svg")).unwrap();
    assert!(text.starts_with("<svg") && text.contains("polyline"));
}
