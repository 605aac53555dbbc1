use std::process::{Command, Output};

fn weblab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weblab")).args(args).env_remove("WEBLAB_SEED").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn discriminant() {
    let o = weblab(&["disc", "y*dx^2 - x*dx*dy + dy^2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("divisor: {x^2 - 4*y: 1}"));
}

#[test]
fn invariance_exit_codes() {
    let yes = weblab(&["invariant", "map(x^2, y^2)", "y*dx - x*dy"]);
    assert_eq!(yes.status.code(), Some(0));
    assert!(stdout(&yes).contains("invariant, c = 1"));
    let no = weblab(&["invariant", "map(x^2 + 1, y)", "y*dx - x*dy"]);
    assert_eq!(no.status.code(), Some(1));
    assert!(stdout(&no).contains("not invariant"));
}

#[test]
fn input_errors_exit_2() {
    let mixed = weblab(&["disc", "dx + dy^2"]);
    assert_eq!(mixed.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&mixed.stderr).contains("mixed form orders"));
    assert_eq!(weblab(&["disc", "dx +"]).status.code(), Some(2));
    assert_eq!(weblab(&["catalog", "verify", "zz"]).status.code(), Some(2));
}

#[test]
fn ueda_and_symmetrize() {
    let o = weblab(&["ueda", "z^2 - 2"]);
    assert_eq!(stdout(&o).trim(), "map(s^2 - 2*p - 4, -2*s^2 + p^2 + 4*p + 4)");
    let o = weblab(&["symmetrize", "x^2 + y^2"]);
    assert_eq!(stdout(&o).trim(), "s^2 - 2*p");
    assert_eq!(weblab(&["symmetrize", "x^2 + y"]).status.code(), Some(2));
}

#[test]
fn degree_formula() {
    let o = weblab(&["degree", "x*dy^2 - y*dx^2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("degree: 1"));
}

#[test]
fn seed_from_environment() {
    let run = |seed: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_weblab"));
        c.args(["monodromy", "dx^3 - x*dy^3"]).env_remove("WEBLAB_SEED");
        if let Some(s) = seed {
            c.env("WEBLAB_SEED", s);
        }
        stdout(&c.output().unwrap())
    };
    let default = run(None);
    assert_eq!(default, run(Some("1")));
    let other = run(Some("5"));
    assert_ne!(default.lines().next(), other.lines().next());
    assert!(other.contains("orbits: {1, 2, 3}"));
    assert!(other.contains("group order: 3"));
}

#[test]
fn catalog_verify() {
    let e = weblab(&["catalog", "verify", "e"]);
    assert_eq!(e.status.code(), Some(0));
    assert!(stdout(&e).contains("3 passed, 0 failed"));
    let json = weblab(&["catalog", "verify", "e", "--json"]);
    assert!(stdout(&json).trim_start().starts_with('{'));
    let list = weblab(&["catalog", "list"]);
    assert!(stdout(&list).contains("j-product"));
}

#[test]
fn full_catalog_reports_failures() {
    let first = weblab(&["catalog", "verify"]);
    assert_eq!(first.status.code(), Some(1));
    let out = stdout(&first);
    assert!(out.contains("2 failed"), "{out}");
    assert_eq!(out, stdout(&weblab(&["catalog", "verify"])));
}
