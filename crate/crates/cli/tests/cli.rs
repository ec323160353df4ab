use std::path::PathBuf;
use std::process::{Command, Output};

fn surface(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("brauer2-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn split() -> PathBuf {
    surface("split.surf", "f = x*(x-1)*(x-t)*(x-t-1)\n")
}

fn quartic() -> PathBuf {
    surface("quartic.surf", "f = x^4 - t\n")
}

fn brauer2(args: &[&str], threads: Option<usize>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_brauer2"));
    cmd.args(args);
    if let Some(n) = threads {
        cmd.env("RAYON_NUM_THREADS", n.to_string());
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn bad_places_of_x4_minus_t() {
    let q = quartic();
    let o = brauer2(&["bad-places", "--surface", q.to_str().unwrap()], None);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "bad places (2): (t), inf\n");
}

#[test]
fn enumerate_counts_sixty_four() {
    let s = split();
    let o = brauer2(
        &[
            "enumerate",
            "--surface",
            s.to_str().unwrap(),
            "--format",
            "tsv",
        ],
        None,
    );
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 65);
    assert!(out.lines().skip(1).all(|l| l.ends_with("\tS-unramified")));
}

#[test]
fn planted_element_fails_with_certificate() {
    let s = split();
    let o = brauer2(
        &[
            "check",
            "(t-2; t-2; 1; 1)",
            "--surface",
            s.to_str().unwrap(),
        ],
        None,
    );
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("verdict: FAIL"), "{out}");
    assert!(out.contains("certificate: (t - 2) x*(x - 1)"), "{out}");
    // the normalized representative carries the same certificate
    let o = brauer2(
        &[
            "check",
            "(1; 1; t - 2; t - 2)",
            "--surface",
            s.to_str().unwrap(),
        ],
        None,
    );
    assert!(stdout(&o).contains("certificate: (t - 2) x*(x - 1)"));
}

#[test]
fn filter_rows_recheck_through_check() {
    let s = split();
    let path = s.to_str().unwrap();
    let o = brauer2(&["filter", "--surface", path, "--format", "tsv"], None);
    assert!(o.status.success());
    let out = stdout(&o);
    let rows: Vec<Vec<&str>> = out
        .lines()
        .skip(1)
        .map(|l| l.split('\t').collect())
        .collect();
    assert_eq!(rows.len(), 64);
    for row in rows.iter().step_by(7) {
        let c = brauer2(
            &["check", row[0], "--surface", path, "--format", "tsv"],
            None,
        );
        let last = stdout(&c).lines().last().unwrap().to_string();
        let fields: Vec<&str> = last.split('\t').collect();
        assert_eq!(fields[0], row[0]);
        assert_eq!(&fields[1..], &row[1..], "{last}");
    }
}

#[test]
fn reports_are_byte_identical_across_runs_and_threads() {
    let s = split();
    let path = s.to_str().unwrap();
    let args = ["filter", "--surface", path];
    let a = stdout(&brauer2(&args, Some(1)));
    let b = stdout(&brauer2(&args, Some(4)));
    let c = stdout(&brauer2(&args, None));
    assert_eq!(a, b);
    assert_eq!(a, c);
}

#[test]
fn exit_codes() {
    let q = quartic();
    let path = q.to_str().unwrap();
    assert_eq!(
        brauer2(&["enumerate", "--surface", path], None)
            .status
            .code(),
        Some(2)
    );
    let o = brauer2(
        &[
            "residues",
            "A - 1",
            "--place",
            "t-1",
            "--surface",
            path,
            "--precision",
            "1",
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(3));
    let o = brauer2(
        &["residues", "A - 1", "--place", "t-1", "--surface", path],
        None,
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o).trim(),
        "vertical residue at (t - 1): x - 1 (nontrivial)"
    );
    let bad = surface("bad.surf", "f = x^4 - t\nfoo = 3\n");
    let o = brauer2(&["bad-places", "--surface", bad.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2, column 1"));
    let cubic = surface("cubic.surf", "f = x^3 - t\n");
    assert_eq!(
        brauer2(&["bad-places", "--surface", cubic.to_str().unwrap()], None)
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn expand_split() {
    let s = split();
    let o = brauer2(
        &[
            "expand-split",
            "(t; t; 1; 1)",
            "--surface",
            s.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(stdout(&o), "(t, x)_2 + (t, x - 1)_2\n");
    let q = quartic();
    let o = brauer2(
        &["expand-split", "A", "--surface", q.to_str().unwrap()],
        None,
    );
    assert_eq!(o.status.code(), Some(2));
}
