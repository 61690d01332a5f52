use std::process::{Command, Output};

use qsorep::{build_rep, QMode, Signature};
use qsorep_cli::{ExportBundle, QSpec};

fn qsorep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsorep"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn dim_examples() {
    for (n, w, d) in [
        ("3", "5", "11"),
        ("5", "1,0", "5"),
        ("5", "0,0", "1"),
        ("4", "1/2,.5", "2"),
    ] {
        let o = qsorep(&["dim", "--n", n, "--weight", w]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o).trim(), d);
    }
}

#[test]
fn invalid_signature_exits_2() {
    let o = qsorep(&["dim", "--n", "5", "--weight", "0,1"]);
    assert_eq!(o.status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    let o = qsorep(&[
        "gen",
        "--n",
        "5",
        "--weight",
        "0,1",
        "--q",
        "0.9",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("dominance"), "{}", stderr(&o));
    assert!(!path.exists());
    let o = qsorep(&["dim", "--n", "4", "--weight", "1,1/2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = qsorep(&["dim", "--n", "3", "--weight", "1/3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn q_flags_are_exclusive() {
    let o = qsorep(&[
        "verify",
        "--n",
        "3",
        "--weight",
        "1",
        "--q",
        "0.9",
        "--classical",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = qsorep(&["verify", "--n", "3", "--weight", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn gen_writes_bundle() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rep.json");
    let o = qsorep(&[
        "gen",
        "--n",
        "5",
        "--weight",
        "1,0",
        "--q",
        "0.9",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let b = ExportBundle::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(b.generators.len(), 4);
    assert_eq!(b.dim(), 5);
    assert_eq!(b.signature, vec![2, 0]);
    assert!(b.checks.is_none());

    let path = dir.path().join("s.json");
    let o = qsorep(&[
        "gen",
        "--n",
        "4",
        "--weight",
        "1/2,1/2",
        "--q-polar",
        "0.3",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let b = ExportBundle::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(b.dim(), 2);
    assert_eq!(b.basis[0], vec![vec![1, 1], vec![1], vec![1]]);
}

#[test]
fn gen_exact_is_unsupported() {
    let o = qsorep(&["gen", "--n", "3", "--weight", "1", "--q-exact", "3"]);
    assert_eq!(o.status.code(), Some(3));
    let o = qsorep(&["verify", "--n", "3", "--weight", "1", "--q-exact", "7/2"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn gen_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let o = qsorep(&[
            "gen",
            "--n",
            "6",
            "--weight",
            "1,1,0",
            "--q-polar",
            "0.3",
            "--with-checks",
            "-o",
            p.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn thread_count_does_not_change_output() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_qsorep"))
            .args(["gen", "--n", "5", "--weight", "2,1", "--q", "1.3"])
            .env("QSOREP_THREADS", threads)
            .output()
            .unwrap()
    };
    let one = run("1");
    let four = run("4");
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(run("zero").status.code(), Some(2));
}

#[test]
fn round_trip_is_exact() {
    let sig = Signature::from_twice(5, &[3, 1]).unwrap();
    for q in [QSpec::Real(0.7), QSpec::Polar(0.3), QSpec::Classical] {
        let bundle = build_rep(&sig, &q.mode().unwrap()).unwrap();
        let export = ExportBundle::new(&bundle, &q, None);
        let back = ExportBundle::from_json(&export.to_json()).unwrap();
        assert_eq!(back, export);
        assert_eq!(QSpec::from_field(&back.q).unwrap(), q);
        for (g, e) in bundle.generators.iter().zip(&back.generators) {
            assert_eq!(g.entries.len(), e.entries.len());
            for (&(r, c, v), &(r2, c2, re, im)) in g.entries.iter().zip(&e.entries) {
                assert_eq!((r, c), (r2, c2));
                assert_eq!(v.re.to_bits(), re.to_bits());
                assert_eq!(v.im.to_bits(), im.to_bits());
            }
        }
    }
    let exact = QSpec::Exact("11/5".parse().unwrap());
    assert_eq!(QSpec::from_field(&exact.to_field()).unwrap(), exact);
    assert!(matches!(
        QSpec::Exact("11/5".parse().unwrap()).mode().unwrap(),
        QMode::ExactRational(_)
    ));
}

#[test]
fn coo_text_format() {
    let o = qsorep(&[
        "gen", "--n", "3", "--weight", "1", "--q", "0.9", "--format", "coo-text",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("% qsorep coo-text"));
    let headers: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("generator"))
        .collect();
    assert_eq!(headers, vec!["generator 2 2", "generator 3 4"]);
}

#[test]
fn verify_examples() {
    let o = qsorep(&["verify", "--n", "5", "--weight", "1,0", "--q", "0.9"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("commutant dimension 1"));
    let o = qsorep(&["verify", "--n", "3", "--weight", "1", "--q-polar", "0.3"]);
    assert_eq!(o.status.code(), Some(0));
    let o = qsorep(&["verify", "--n", "4", "--weight", "1,1", "--classical"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn root_of_unity_warns() {
    let o = qsorep(&["verify", "--n", "3", "--weight", "1", "--q", "-1"]);
    assert!(stderr(&o).contains("warning: q^2 = 1"));
    assert_eq!(o.status.code(), Some(1));
    let o = qsorep(&[
        "gen",
        "--n",
        "3",
        "--weight",
        "1",
        "--q-polar",
        "1.0471975511965976",
    ]);
    assert!(stderr(&o).contains("warning: q^6 = 1"));
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn identity_examples() {
    let o = qsorep(&["identity", "--p-max", "2", "--s", "3", "--s", "7/2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).trim_end().ends_with("PASS"));
    let o = qsorep(&["identity", "--p-max", "1", "--s", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let o = qsorep(&["identity", "--p-max", "9"]);
    assert_eq!(o.status.code(), Some(2));
    let o = qsorep(&["identity", "--p-max", "1", "--s", "1"]);
    assert_eq!(o.status.code(), Some(2));
}
