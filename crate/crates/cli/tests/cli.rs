use std::process::Command;

use kamp_cli::{eval, translate, verify, verify_with, Format, RunConfig, EXIT_ARITY, EXIT_BUDGET, EXIT_FAIL, EXIT_OK, EXIT_PARSE};
use kamp_core::formulas::{parse_tl, TlFormula};

fn kamp(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_kamp")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn chain_file(name: &str, text: &str) -> String {
    let path = std::env::temp_dir().join(format!("kamp-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn translate_golden() {
    assert_eq!(kamp(&["translate", "P(x)"]), (0, "P\n".into(), String::new()));
    assert_eq!(kamp(&["translate", "E y.(y>x & Q(y))"]), (0, "(true U Q)\n".into(), String::new()));
    assert_eq!(kamp(&["translate", "--format", "sexpr", "E y.(y>x & Q(y))"]).1, "(U true Q)\n");
}

#[test]
fn translate_errors() {
    let (code, out, err) = kamp(&["translate", "P(x) | Q(y)"]);
    assert_eq!((code, out.as_str()), (3, ""));
    assert_eq!(err, "error: expected exactly 1 free variable(s), found {x, y}\n");
    let (code, _, err) = kamp(&["translate", "P(x"]);
    assert_eq!(code, 2);
    assert!(err.contains("column 4"), "{err}");
    assert_eq!(kamp(&["translate", "E x. P(x)"]).0, 3);
}

#[test]
fn translate_trace_goes_to_stderr() {
    let (code, out, err) = kamp(&["translate", "--trace", "!P(x)"]);
    assert_eq!(code, 0);
    assert_eq!(out, "!P\n");
    let lines: Vec<&str> = err.lines().collect();
    assert!(lines[0].starts_with("step  pass"));
    assert!(lines[1].contains("atomic"));
    assert!(lines.last().unwrap().contains("emit"));
}

#[test]
fn printed_output_reparses() {
    for f in ["(E y > x)(Q(y) & (A w)(x<w & w<y -> P(w)))", "A y.(y>x -> P(y))", "!(E y.(y < x & P(y)))"] {
        let o = translate(f, &RunConfig::default());
        assert_eq!(o.code, EXIT_OK);
        let printed = o.stdout.trim_end();
        assert_eq!(parse_tl(printed).unwrap().to_string(), printed);
    }
}

#[test]
fn verify_golden() {
    assert_eq!(
        kamp(&["verify", "E y.(y>x & Q(y))"]),
        (0, "PASS 131 chains (31 exhaustive up to size 4, 100 random up to size 10), 632 points\n".into(), String::new())
    );
    let (code, out, _) = kamp(&["verify", "--random", "0", "--atoms", "P,Q", "A y.(y>x -> P(y))"]);
    assert_eq!((code, out.as_str()), (0, "PASS 341 chains (341 exhaustive up to size 4, 0 random up to size 10), 1252 points\n"));
}

#[test]
fn verify_reports_the_first_counterexample() {
    let cfg = RunConfig::default();
    let broken = |_: &kamp_core::formulas::FoFormula| Ok(TlFormula::atom("Q"));
    let o = verify_with("P(x)", &cfg, broken);
    assert_eq!(o.code, EXIT_FAIL);
    assert_eq!(o.stdout, "FAIL at position 0 of chain #2\nchain: n=1; P=0; Q=\nfirst-order: 1\ntemporal: 0\n");
    let o = verify_with("P(x)", &cfg, |f| kamp_core::kamp(f).map(TlFormula::not));
    assert_eq!(o.stdout, "FAIL at position 0 of chain #1\nchain: n=1; P=\nfirst-order: 0\ntemporal: 1\n");
}

#[test]
fn verify_is_reproducible() {
    let args = ["verify", "--seed", "7", "--max-size", "3", "(E y > x)(P(y) & (A z in (x,y)) !P(z))"];
    let first = kamp(&args);
    assert_eq!(first.0, 0);
    assert_eq!(kamp(&args), first);
    let other = verify("(E y > x)(P(y) & (A z in (x,y)) !P(z))", &RunConfig { seed: 8, max_size: 3, ..Default::default() });
    assert_eq!(other.code, EXIT_OK);
}

#[test]
fn eval_golden() {
    let file = chain_file("eval", "n=3; P=1; Q=2\nn=0\nn=2; P=0,1\n");
    assert_eq!(kamp(&["eval", "--chain", &file, "P U Q"]), (0, "1 1 0\n\n0 0\n".into(), String::new()));
    assert_eq!(kamp(&["eval", "--chain", &file, "G P"]).1, "0 0 1\n\n1 1\n");
    assert_eq!(kamp(&["eval", "--chain", &file, "E y.(y > x & P(y))"]).1, "1 0 0\n\n1 0\n");
    assert_eq!(kamp(&["eval", "--chain", &file, "P(x) | P(y)"]).0, 3);
}

#[test]
fn eval_errors() {
    let bad = chain_file("bad", "n=2; P=5\n");
    assert_eq!(kamp(&["eval", "--chain", &bad, "P"]).0, 2);
    assert_eq!(kamp(&["eval", "P"]).0, 2);
    assert_eq!(eval("P U", "n=1").code, EXIT_PARSE);
}

#[test]
fn stats_golden() {
    assert_eq!(
        kamp(&["stats", "P(x)"]),
        (0, "input_size 3\noutput_size 1\nmax_disjuncts atomic 1\nmax_disjuncts emit 1\n".into(), String::new())
    );
    let (code, out, err) = kamp(&["stats", "--budget", "10", "(A y > x)(E z > y)(P(z) & (A w in (y,z)) !Q(w))"]);
    assert_eq!((code, out.as_str()), (4, ""));
    assert!(err.starts_with("error: BUDGET-EXCEEDED"), "{err}");
}

#[test]
fn exit_codes_are_the_documented_ones() {
    let cfg = RunConfig { budget: 10, ..Default::default() };
    let deep = "(A y > x)(E z > y)(P(z) & (A w in (y,z)) !Q(w))";
    assert_eq!(translate(deep, &cfg).code, EXIT_BUDGET);
    assert_eq!(verify(deep, &cfg).code, EXIT_BUDGET);
    assert_eq!(translate("P(x) & Q(y)", &cfg).code, EXIT_ARITY);
    assert_eq!(translate("P(x) &", &cfg).code, EXIT_PARSE);
    let sexpr = RunConfig { format: Format::Sexpr, ..Default::default() };
    assert_eq!(translate("!P(x)", &sexpr).stdout, "(not P)\n");
}
