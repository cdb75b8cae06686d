use std::io::Write;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

fn teamlogic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_teamlogic"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn eval_on_a_team_file() {
    let model = file(r#"{"domain_size": 2, "team": [{"x": 0, "y": 0}, {"x": 0, "y": 1}]}"#);
    let path = model.path().to_str().unwrap();
    let o = teamlogic(&["eval", "--model", path, "dep(x, y)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("verdict: false\n"));
    let o = teamlogic(&["eval", "--model", path, "dep(y, x)"]);
    assert_eq!(o.status.code(), Some(0));

    let team = file(r#"{"team": [{"x": 1, "y": 1}]}"#);
    let o = teamlogic(&[
        "eval",
        "--model",
        path,
        "--team",
        team.path().to_str().unwrap(),
        "dep(x, y)",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn eval_sentences_on_relational_models() {
    let model =
        file(r#"{"version": 1, "domain_size": 3, "relations": {"R": [[0, 1], [1, 2], [2, 0]]}}"#);
    let path = model.path().to_str().unwrap();
    let o = teamlogic(&[
        "eval",
        "--model",
        path,
        "--sentence",
        "A x E y (dep(x, y) & R(x, y))",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = teamlogic(&["eval", "--model", path, "--sentence", "E y A x R(x, y)"]);
    assert_eq!(o.status.code(), Some(1));
    let even = "A x E y A u E v (x y _||_ u v & (x = v <-> y = u) & !(x = y))";
    let o = teamlogic(&["eval", "--domain", "2", "--sentence", even]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn errors_exit_with_two() {
    let o = teamlogic(&["eval", "--domain", "2", "--sentence", "A x (dep(x) &"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("parse error at 1:"), "{err}");
    assert!(err.contains('^'));
    let o = teamlogic(&["eval", "--model", "/nonexistent/model.json", "x = x"]);
    assert_eq!(o.status.code(), Some(2));
    let bad = file(r#"{"version": 7, "domain_size": 2}"#);
    let o = teamlogic(&[
        "eval",
        "--model",
        bad.path().to_str().unwrap(),
        "--sentence",
        "E x x = x",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = teamlogic(&[
        "eval",
        "--domain",
        "3",
        "--budget",
        "0",
        "--sentence",
        "A x A y A z (x _||_ z & dep(x) | dep(y) & y _||_ z)",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn derive_from_a_premises_file() {
    let premises = file("# transitivity\ndep(x, y)\n\ndep(y, z)  # second\n");
    let path = premises.path().to_str().unwrap();
    let o = teamlogic(&[
        "derive",
        "--system",
        "armstrong",
        "--premises",
        path,
        "dep(x, z)",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("DERIVABLE\n"));
    assert!(out.lines().nth(1).unwrap().ends_with("dep(x, z)"));
    let o = teamlogic(&[
        "derive",
        "--system",
        "armstrong",
        "--premises",
        path,
        "dep(z, x)",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("NOT-DERIVABLE\n{"));
}

#[test]
fn derive_in_each_system() {
    let o = teamlogic(&[
        "derive",
        "--system",
        "independence",
        "-p",
        "x _||_ x",
        "-p",
        "y _||_ y",
        "x y _||_ x y",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = teamlogic(&[
        "derive",
        "--system",
        "independence",
        "-p",
        "x _||_ y",
        "x _||_ x",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let o = teamlogic(&["derive", "--system", "conditional", "x _||_{x} y"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("reflexivity"));
}

#[test]
fn equiv_reports() {
    let o = teamlogic(&["equiv", "dep(x)", "x _||_ x"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("EQUIVALENT\n"));
    let o = teamlogic(&["equiv", "dep(x, y)", "dep(y, x)", "--max-domain", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    let json = &out[out.find('{').unwrap()..];
    let doc = teamlogic::ModelDoc::parse(json).unwrap();
    assert_eq!(doc.team().unwrap().len(), 2);
    let o = teamlogic(&["equiv", "dep(x, y)", "dep(y, z)", "--max-vars", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn rewrite_prints_the_translation() {
    let o = teamlogic(&["rewrite", "--targets", "exclusion", "excl(x ; y) & dep(x)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o).trim(),
        "E _z1 (incl(x ; _z1) & y _||_ _z1 & (y) != (_z1)) & dep(x)"
    );
}
