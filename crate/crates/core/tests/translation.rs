mod common;

use common::{fo, names, tl};
use kamp_core::formulas::{FoFormula, TlFormula, Var, VariableOrder};
use kamp_core::generate::{random_ea, random_fo, FoShape};
use kamp_core::normal_form::{eval_dea, Dea};
use kamp_core::semantics::{check_equiv_fo_tl, enumerate_chains, eval_tl, Verdict};
use kamp_core::translate::fo_to_dea;
use kamp_core::{kamp, translate_with_trace, Error, Translator};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn corpus() -> Vec<FoFormula> {
    include_str!("data/corpus.fo")
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(fo)
        .collect()
}

fn atoms_of(f: &FoFormula) -> Vec<String> {
    let atoms: Vec<String> = f.atoms().into_iter().collect();
    if atoms.is_empty() {
        names(&["P"])
    } else {
        atoms
    }
}

fn assert_equivalent(f: &FoFormula, out: &TlFormula, max: usize) {
    let atoms = atoms_of(f);
    let v = check_equiv_fo_tl(f, &Var::from("x"), out, enumerate_chains(max, &atoms)).unwrap();
    assert!(v.is_pass(), "{f} => {out}: {v:?}");
}

#[test]
fn corpus_translates_soundly() {
    let corpus = corpus();
    assert!(corpus.len() >= 20);
    for f in &corpus {
        let out = kamp(f).unwrap();
        assert_equivalent(f, &out, 4);
        assert_eq!(kamp_core::formulas::parse_tl(&out.to_string()).unwrap(), out, "{f}");
    }
}

#[test]
fn small_examples() {
    let p = kamp(&fo("P(x)")).unwrap();
    assert_equivalent(&fo("P(x)"), &p, 4);
    let diamond = kamp(&fo("E y.(y>x & Q(y))")).unwrap();
    let v = check_equiv_fo_tl(&fo("E y.(y>x & Q(y))"), &Var::from("x"), &tl("true U Q"), enumerate_chains(4, &names(&["Q"])))
        .unwrap();
    assert!(v.is_pass());
    for m in enumerate_chains(4, &names(&["Q"])) {
        for t in 0..m.size() {
            assert_eq!(eval_tl(&m, t, &diamond).unwrap(), eval_tl(&m, t, &tl("true U Q")).unwrap());
        }
    }
    let until = kamp(&fo("(E y > x)(Q(y) & (A w)(x<w & w<y -> P(w)))")).unwrap();
    for m in enumerate_chains(4, &names(&["P", "Q"])) {
        for t in 0..m.size() {
            assert_eq!(eval_tl(&m, t, &until).unwrap(), eval_tl(&m, t, &tl("P U Q")).unwrap(), "{m} at {t}");
        }
    }
}

#[test]
fn random_formulas_translate_soundly() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let shape = FoShape::default();
    for _ in 0..60 {
        let f = random_fo(&mut rng, &shape);
        let out = kamp(&f).unwrap();
        let v = check_equiv_fo_tl(&f, &Var::from("x"), &out, enumerate_chains(3, &shape.atoms)).unwrap();
        assert!(v.is_pass(), "{f}: {v:?}");
    }
}

#[test]
fn arity_is_enforced() {
    for (s, found) in [("P(x) | Q(y)", vec!["x", "y"]), ("E x. P(x)", vec![])] {
        match kamp(&fo(s)) {
            Err(Error::Arity { expected: 1, found: f }) => {
                assert_eq!(f.into_iter().collect::<Vec<_>>(), found.into_iter().map(Var::from).collect::<Vec<_>>())
            }
            other => panic!("{s}: {other:?}"),
        }
    }
}

#[test]
fn anchor_stays_in_scope() {
    let x = Var::from("x");
    for f in corpus() {
        let d = fo_to_dea(&f, &x).unwrap();
        assert!(d.scope().contains(&x), "{f}");
    }
    let d = fo_to_dea(&fo("E y. P(y)"), &x).unwrap();
    assert_eq!(d.scope().vars(), &[x.clone()]);
    let two = fo_to_dea(&fo("x < y & P(y)"), &x).unwrap();
    assert_eq!(two.scope().vars()[0], x);
    let atom = fo_to_dea(&fo("P(x)"), &x).unwrap();
    assert_eq!(atom.len(), 1);
    assert_eq!(atom.disjuncts()[0].points(), &[tl("P")]);
}

#[test]
fn normal_forms_agree_with_the_first_order_oracle() {
    let x = Var::from("x");
    for s in ["E y.(y>x & Q(y))", "A y.(y>x -> P(y))", "x < y & P(y)", "E y.(y < x & x < z & Q(y))"] {
        let f = fo(s);
        let d = fo_to_dea(&f, &x).unwrap();
        for m in enumerate_chains(4, &names(&["P", "Q"])) {
            for a in common::assignments(&m, d.scope()) {
                assert_eq!(eval_dea(&m, &a, &d).unwrap(), kamp_core::semantics::eval_fo(&m, &a, &f).unwrap(), "{s} on {m}");
            }
        }
    }
}

#[test]
fn trace_follows_the_pipeline() {
    let (_, t) = translate_with_trace(&fo("P(x)")).unwrap();
    assert_eq!(t.passes(), vec!["atomic", "emit"]);
    let (_, t) = translate_with_trace(&fo("!(E y.(x < y & P(y))) | Q(x)")).unwrap();
    let passes = t.passes();
    assert_eq!(passes.last(), Some(&"emit"));
    assert_eq!(passes.iter().filter(|p| **p == "emit").count(), 1);
    assert!(passes.iter().all(|p| ["atomic", "not", "or", "and", "exists", "emit"].contains(p)));
    // post-order: the quantifier's body precedes it, the root precedes emission
    assert_eq!(&passes[passes.len() - 2..], &["or", "emit"]);
    let cumulative: Vec<usize> = t.entries().iter().map(|e| e.cumulative_disjuncts).collect();
    assert!(cumulative.windows(2).all(|w| w[0] <= w[1]));
    assert_eq!(t.entries().iter().map(|e| e.step).collect::<Vec<_>>(), (0..t.entries().len()).collect::<Vec<_>>());
}

#[test]
fn emission_is_linear_in_label_size() {
    let labels: Vec<TlFormula> = ["true", "P", "!Q", "P U Q", "(Q S P) & !P"].iter().map(|s| tl(s)).collect();
    let s = VariableOrder::new([Var::from("z")]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let ds: Vec<_> = (0..4).map(|_| random_ea(&mut rng, &s, 5, &labels)).collect();
        let d = Dea::new(s.clone(), ds).unwrap();
        let input: u64 = d
            .disjuncts()
            .iter()
            .map(|e| e.points().iter().chain(e.intervals()).map(TlFormula::size).sum::<u64>() + e.len() as u64 + 1)
            .sum();
        let out = Translator::new().dea1_to_tl(&d).unwrap();
        assert!(out.size() <= 6 * input + d.len() as u64, "{} vs {input}", out.size());
    }
}

#[test]
fn budget_is_reported() {
    let f = fo("(A y > x)(E z > y)(P(z) & (A w in (y,z)) !Q(w))");
    match Translator::with_budget(10).kamp(&f) {
        Err(Error::BudgetExceeded { budget: 10, reached }) => assert!(reached > 10),
        other => panic!("{other:?}"),
    }
    assert!(Translator::with_budget(1_000_000).kamp(&f).is_ok());
}

#[test]
fn output_is_deterministic() {
    for f in corpus().iter().take(10) {
        assert_eq!(kamp(f).unwrap().to_string(), kamp(f).unwrap().to_string());
    }
    let v = check_equiv_fo_tl(&fo("P(x)"), &Var::from("x"), &tl("Q"), ["n=1; P=0".parse().unwrap()]).unwrap();
    assert!(matches!(v, Verdict::Fail(c) if c.position == 0 && c.fo_value && !c.tl_value));
}
