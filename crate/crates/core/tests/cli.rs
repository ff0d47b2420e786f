use std::path::Path;
use std::process::{Command, Output};

use capkit::PointSet;

fn capkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_capkit"))
        .args(args)
        .env_remove("CAPKIT_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

fn read_set(p: &str) -> PointSet {
    PointSet::parse_capset(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn construct_coding_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let f = path(dir.path(), "s.capset");
    let o = capkit(&[
        "construct",
        "--m",
        "4",
        "--n",
        "5",
        "--method",
        "coding",
        "--t",
        "2",
        "-o",
        &f,
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&f).unwrap();
    assert!(text.starts_with("capset v1\nm=4 n=5\n"));
    assert_eq!(text.lines().count(), 2 + 124);

    let v = capkit(&["verify", "--k", "3", "-i", &f]);
    assert_eq!(v.status.code(), Some(0));
    assert_eq!(stdout(&v).trim(), "FREE");
}

#[test]
fn verify_reports_witness() {
    let dir = tempfile::tempdir().unwrap();
    let f = path(dir.path(), "w.capset");
    std::fs::write(&f, "capset v1\nm=4 n=1\n0\n1\n3\n").unwrap();
    let v = capkit(&["verify", "--k", "3", "-i", &f]);
    assert_eq!(v.status.code(), Some(1));
    let out = stdout(&v);
    assert!(out.starts_with("WITNESS start=(1) diff=(3)"), "{out}");

    let j = capkit(&["verify", "--k", "3", "-i", &f, "--json"]);
    assert_eq!(j.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&j.stdout).unwrap();
    assert_eq!(report["version"], "capkit-report/1");
    assert_eq!(report["outputs"]["free"], false);
    assert_eq!(report["outputs"]["report"]["witness"]["diff"]["digits"][0], 3);
}

#[test]
fn verify_empty_and_malformed_files() {
    let dir = tempfile::tempdir().unwrap();
    let empty = path(dir.path(), "empty.capset");
    std::fs::write(&empty, "capset v1\nm=4 n=2\n").unwrap();
    assert_eq!(capkit(&["verify", "--k", "3", "-i", &empty]).status.code(), Some(0));
    let blank = path(dir.path(), "blank.capset");
    std::fs::write(&blank, "").unwrap();
    assert_eq!(capkit(&["verify", "--k", "3", "-i", &blank]).status.code(), Some(0));

    let bad = path(dir.path(), "bad.capset");
    std::fs::write(&bad, "capset v1\nm=4 n=2\n0 7\n").unwrap();
    let o = capkit(&["verify", "--k", "3", "-i", &bad]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::write(&bad, "hello\n").unwrap();
    assert_eq!(capkit(&["verify", "--k", "3", "-i", &bad]).status.code(), Some(2));
    let missing = path(dir.path(), "missing.capset");
    assert_eq!(capkit(&["verify", "--k", "3", "-i", &missing]).status.code(), Some(2));
}

#[test]
fn construct_methods() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[(&[&str], usize)] = &[
        (&["--m", "11", "--n", "7", "--k", "4", "--method", "mod11"], 5040),
        (&["--m", "4", "--n", "1", "--method", "komlos"], 2),
        (&["--m", "5", "--n", "6", "--method", "salem"], 90),
        (&["--m", "4", "--n", "8", "--method", "behrend"], 1792),
        (&["--m", "4", "--n", "3", "--method", "r4"], 36),
        (&["--p", "2", "--s", "2", "--n", "4", "--method", "prime-power-a"], 6),
    ];
    for (i, (args, size)) in cases.iter().enumerate() {
        let f = path(dir.path(), &format!("c{i}.capset"));
        let mut all = vec!["construct"];
        all.extend_from_slice(args);
        all.extend_from_slice(&["-o", &f, "--verify"]);
        let o = capkit(&all);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        assert_eq!(read_set(&f).len(), *size, "{args:?}");
    }
}

#[test]
fn construct_errors() {
    let dir = tempfile::tempdir().unwrap();
    let f = path(dir.path(), "x.capset");
    // missing flag, wrong modulus, impossible t
    for args in [
        vec!["construct", "--method", "behrend", "--m", "4", "-o", &f],
        vec!["construct", "--method", "mod11", "--m", "7", "--n", "7", "-o", &f],
        vec!["construct", "--method", "mod11", "--n", "6", "-o", &f],
        vec!["construct", "--method", "coding", "--n", "3", "--t", "5", "-o", &f],
        vec!["construct", "--method", "bogus", "--n", "3", "-o", &f],
        vec![
            "construct",
            "--method",
            "prime-power-b",
            "--p",
            "3",
            "--s",
            "3",
            "--n",
            "15",
            "-o",
            &f,
        ],
    ] {
        assert_eq!(capkit(&args).status.code(), Some(2), "{args:?}");
    }
    // a product that picks up a progression fails verification
    let a = path(dir.path(), "a.capset");
    let b = path(dir.path(), "b.capset");
    std::fs::write(&a, "capset v1\nm=6 n=1\n0\n3\n").unwrap();
    std::fs::write(&b, "capset v1\nm=6 n=1\n0\n2\n4\n").unwrap();
    let o = capkit(&[
        "construct",
        "--method",
        "product",
        "--in",
        &a,
        "--in",
        &b,
        "--k",
        "4",
        "-o",
        &f,
        "--verify",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn product_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let a = path(dir.path(), "a.capset");
    let b = path(dir.path(), "b.capset");
    let out = path(dir.path(), "ab.capset");
    std::fs::write(&a, "capset v1\nm=4 n=1\n0\n1\n").unwrap();
    std::fs::write(&b, "capset v1\nm=4 n=2\n0 0\n1 0\n0 1\n1 1\n").unwrap();
    let o = capkit(&[
        "construct",
        "--method",
        "product",
        "--in",
        &a,
        "--in",
        &b,
        "-o",
        &out,
        "--verify",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(read_set(&out).len(), 8);
    let o = capkit(&["construct", "--method", "product", "--in", &a, "-o", &out]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bound_table() {
    let o = capkit(&["bound", "--n-max", "10", "--table", "paper"]);
    assert_eq!(o.status.code(), Some(0));
    let totals: Vec<String> = stdout(&o)
        .lines()
        .map(|l| l.rsplit("total=").next().unwrap().to_string())
        .collect();
    assert_eq!(
        totals,
        ["2", "6", "16", "42", "124", "344", "960", "2832", "7880", "22232"]
    );

    let o = capkit(&["bound", "--n-max", "1"]);
    assert_eq!(stdout(&o).trim(), "n=1 t=0 terms=2 total=2");

    let o = capkit(&["bound", "--n-max", "8", "--table", "best-known", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["outputs"]["bounds"][7]["total"], 2832);
    assert_eq!(v["outputs"]["bounds"][7]["t"], 4);

    // beyond the tables, greedy codes fill in
    let o = capkit(&["bound", "--n-max", "11"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(capkit(&["bound", "--n-max", "0"]).status.code(), Some(2));
}

#[test]
fn search_and_digits() {
    let o = capkit(&["search", "--m", "4", "--n", "2", "--k", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("size=6 optimal=true"));

    let o = capkit(&["digits", "--p", "3", "--s", "3", "--variant", "b", "--k", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("|D|=15"), "{out}");
    assert!(out.contains("violations=0"), "{out}");
    assert_eq!(
        capkit(&["digits", "--p", "4", "--s", "3", "--variant", "b"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn convert_roundtrip_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let set = path(dir.path(), "s.capset");
    let sys = path(dir.path(), "s.capsys");
    let back = path(dir.path(), "back.capset");
    assert_eq!(
        capkit(&["construct", "--m", "4", "--n", "4", "--method", "coding", "-o", &set])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(capkit(&["convert", "-i", &set, "-o", &sys]).status.code(), Some(0));
    assert!(std::fs::read_to_string(&sys).unwrap().starts_with("capsys v1\nn=4\n"));
    assert_eq!(capkit(&["convert", "-i", &sys, "-o", &back]).status.code(), Some(0));
    assert_eq!(std::fs::read(&set).unwrap(), std::fs::read(&back).unwrap());

    // capsys files are accepted by verify as well
    assert_eq!(capkit(&["verify", "--k", "3", "-i", &sys]).status.code(), Some(0));

    let z5 = path(dir.path(), "z5.capset");
    std::fs::write(&z5, "capset v1\nm=5 n=1\n0\n").unwrap();
    assert_eq!(capkit(&["convert", "-i", &z5, "-o", &sys]).status.code(), Some(2));
}

#[test]
fn sampling_is_seeded() {
    let args = [
        "sample",
        "--variant",
        "b",
        "--p",
        "3",
        "--s",
        "3",
        "--n",
        "15",
        "--trials",
        "2000",
        "--seed",
        "7",
    ];
    let a = capkit(&args);
    let b = capkit(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let o = capkit(&[
        "sample",
        "--variant",
        "salem-odd",
        "--m",
        "5",
        "--n",
        "3",
        "--k",
        "3",
        "--trials",
        "10",
    ]);
    assert_eq!(o.status.code(), Some(2), "seed is mandatory");
}

#[test]
fn thread_cap_is_validated() {
    let o = Command::new(env!("CARGO_BIN_EXE_capkit"))
        .args(["bound", "--n-max", "2"])
        .env("CAPKIT_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_capkit"))
        .args(["bound", "--n-max", "2"])
        .env("CAPKIT_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn help_mentions_exit_codes_and_generator() {
    let o = capkit(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("ChaCha8"));
    assert!(out.contains("CAPKIT_THREADS"));
    assert!(out.contains("Exit codes"));
}
