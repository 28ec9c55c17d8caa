mod common;

use common::{fo, names, occurs, pattern, tl, z};
use kamp_core::formulas::{fold, FoFormula, TlFormula, Var};
use kamp_core::normal_form::{conjoin, eval_dea, eval_dea_with, Dea, EaFormula};
use kamp_core::semantics::{enumerate_chains, eval_fo, Assignment, Chain, TlEvaluator};
use kamp_core::translate::{inf_pattern, interval_cases, neg_exists_between_left, neg_exists_between_right, IntervalPattern};
use kamp_core::Translator;
use rayon::prelude::*;

fn pq() -> Vec<String> {
    names(&["P", "Q"])
}

/// `∃x1 < … < xn in (z0, z1)` with `Pi(xi)`.
fn increasing(atoms: &[String]) -> FoFormula {
    let xs: Vec<String> = (1..=atoms.len()).map(|i| format!("x{i}")).collect();
    let mut body = vec![];
    let mut prev = "z0".to_string();
    for (x, p) in xs.iter().zip(atoms) {
        body.push(format!("{prev} < {x} & {p}({x})"));
        prev = x.clone();
    }
    body.push(format!("{prev} < z1"));
    let quant: String = xs.iter().map(|x| format!("E {x}. ")).collect();
    fo(&format!("{quant}({})", body.join(" & ")))
}

#[test]
fn occurrence_ladder_up_to_three() {
    for n in 1..=3 {
        let atoms: Vec<String> = (1..=n).map(|i| format!("P{i}")).collect();
        let d = Translator::new().oc(&atoms.iter().map(|p| TlFormula::atom(p)).collect::<Vec<_>>()).unwrap();
        let pattern = increasing(&atoms);
        let chains: Vec<Chain> = enumerate_chains(5, &atoms).collect();
        chains.par_iter().for_each(|m| {
            let mut ev = TlEvaluator::new(m);
            for q in 0..m.size() {
                for p in 0..q {
                    let a = z(p, q);
                    let want = !eval_fo(m, &a, &pattern).unwrap();
                    assert_eq!(eval_dea_with(&mut ev, &a, &d).unwrap(), want, "Oc_{n} on {m} at ({p}, {q})");
                }
            }
        });
    }
}

#[test]
fn occurrence_examples() {
    let d = kamp_core::translate::oc(&[tl("P")]).unwrap();
    assert_eq!(d.len(), 1);
    assert_eq!(d.disjuncts()[0].intervals()[1], tl("!P"));
    let two = kamp_core::translate::oc(&[tl("P"), tl("Q")]).unwrap();
    let m: Chain = "n=5; P=1; Q=3".parse().unwrap();
    assert!(!eval_dea(&m, &z(0, 4), &two).unwrap());
    let full: Chain = "n=4; P=0,1,2,3; Q=0,1,2,3".parse().unwrap();
    for p in 0..3 {
        assert!(eval_dea(&full, &z(p, p + 1), &two).unwrap());
    }
}

#[test]
fn infimum_witness() {
    let d = inf_pattern(&tl("P"));
    let at = |m: &Chain, r| -> bool {
        let a: Assignment = [(Var::from("z0"), 0), (Var::from("r"), r), (Var::from("z1"), 4)].into_iter().collect();
        eval_dea(m, &a, &d).unwrap()
    };
    let m: Chain = "n=5; P=3".parse().unwrap();
    assert_eq!((1..4).filter(|&r| at(&m, r)).collect::<Vec<_>>(), vec![3]);
    let none: Chain = "n=5; P=0,4".parse().unwrap();
    assert!((1..4).all(|r| !at(&none, r)));
    let first: Chain = "n=5; P=1,2".parse().unwrap();
    assert!(at(&first, 1));
}

/// Every pattern with `n` intervals over the given labels.
fn patterns(n: usize, labels: &[&str]) -> Vec<IntervalPattern> {
    let mut out: Vec<Vec<&str>> = vec![vec![]];
    for _ in 0..2 * n + 1 {
        out = out.into_iter().flat_map(|p| labels.iter().map(move |l| [p.clone(), vec![*l]].concat())).collect();
    }
    out.iter().map(|items| pattern(items)).collect()
}

fn check_between(pats: &[IntervalPattern], left: bool) {
    let chains: Vec<Chain> = enumerate_chains(5, &pq()).collect();
    let mut t = Translator::new();
    for pat in pats {
        let d = if left { t.nebl(pat) } else { t.nebr(pat) }.unwrap();
        chains.par_iter().for_each(|m| {
            let mut ev = TlEvaluator::new(m);
            for q in 0..m.size() {
                for p in 0..q {
                    let want = !(p + 1..q).any(|w| if left { occurs(m, pat, p, w) } else { occurs(m, pat, w, q) });
                    assert_eq!(eval_dea_with(&mut ev, &z(p, q), &d).unwrap(), want, "{pat} on {m} at ({p}, {q})");
                }
            }
        });
    }
}

#[test]
fn nothing_between_on_the_left() {
    let mut pats = patterns(1, &["P", "!Q", "true"]);
    pats.extend([pattern(&["P"]), pattern(&["true", "true", "Q"]), pattern(&["false", "true", "Q"])]);
    pats.push(pattern(&["P", "Q", "!P", "true", "Q"]));
    check_between(&pats, true);
    let t = neg_exists_between_left(&pattern(&["false", "true", "Q"])).unwrap();
    let m: Chain = "n=3; Q=1,2".parse().unwrap();
    assert!(eval_dea(&m, &z(0, 2), &t).unwrap());
}

#[test]
fn nothing_between_on_the_right() {
    let mut pats = patterns(1, &["P", "!Q", "true"]);
    pats.extend([pattern(&["Q", "true", "true"]), pattern(&["Q", "true", "false"])]);
    pats.push(pattern(&["P", "Q", "!P", "true", "Q"]));
    check_between(&pats, false);
}

#[test]
fn right_is_the_mirror_of_left() {
    let pat = pattern(&["Q", "true", "true"]);
    let right = neg_exists_between_right(&pat).unwrap();
    let left = neg_exists_between_left(&pat.mirror()).unwrap();
    for m in enumerate_chains(5, &pq()) {
        let n = m.size();
        let r = m.reverse();
        for q in 0..n {
            for p in 0..q {
                assert_eq!(
                    eval_dea(&m, &z(p, q), &right).unwrap(),
                    eval_dea(&r, &z(n - 1 - q, n - 1 - p), &left).unwrap()
                );
            }
        }
    }
}

fn check_neg_interval(pats: &[IntervalPattern]) {
    let chains: Vec<Chain> = enumerate_chains(5, &pq()).collect();
    let mut t = Translator::new();
    for pat in pats {
        let d = t.neg_interval(pat).unwrap();
        let cases = (pat.n() > 0).then(|| interval_cases(pat).unwrap());
        chains.par_iter().for_each(|m| {
            let mut ev = TlEvaluator::new(m);
            for q in 0..m.size() {
                for p in 0..q {
                    let a = z(p, q);
                    let got = eval_dea_with(&mut ev, &a, &d).unwrap();
                    assert_eq!(got, !occurs(m, pat, p, q), "{pat} on {m} at ({p}, {q})");
                    if let (Some(cases), true) = (&cases, q > p + 1) {
                        assert!(
                            cases.iter().any(|c| eval_dea_with(&mut ev, &a, c).unwrap()),
                            "no case holds for {pat} on {m} at ({p}, {q})"
                        );
                    }
                }
            }
        });
    }
}

#[test]
fn interval_negation_one_interval() {
    let mut pats = patterns(0, &["P", "Q", "!P", "true"]);
    pats.extend(patterns(1, &["P", "Q", "!P", "true"]));
    check_neg_interval(&pats);
}

#[test]
fn interval_negation_two_intervals_sample() {
    let pats: Vec<IntervalPattern> = patterns(2, &["P", "Q", "!P", "true"]).into_iter().step_by(37).collect();
    check_neg_interval(&pats);
}

#[test]
fn interval_negation_longer_patterns() {
    check_neg_interval(&[
        pattern(&["P", "Q", "!P", "true", "Q", "!Q", "P"]),
        pattern(&["true", "P", "Q", "P", "true", "!P", "Q"]),
        pattern(&["P", "P U Q", "true", "Q S P", "!P"]),
    ]);
}

#[test]
fn interval_negation_degenerate_labels() {
    let d = Translator::new().neg_interval(&pattern(&["false", "P", "Q"])).unwrap();
    let wide = Translator::new().neg_interval(&pattern(&["P", "true", "Q"])).unwrap();
    for m in enumerate_chains(4, &pq()) {
        for q in 0..m.size() {
            for p in 0..q {
                assert!(eval_dea(&m, &z(p, q), &d).unwrap());
                // with β1 = true the pattern fails iff ¬P at z0 or ¬Q at z1
                let want = !m.holds("P", p) || !m.holds("Q", q);
                assert_eq!(eval_dea(&m, &z(p, q), &wide).unwrap(), want);
            }
        }
    }
}

/// `Inf(z0, z, z1)`: `β1` on `(z0, z)` and `¬β1 ∨ K⁺¬β1` at `z`.
fn infimum(b1: &TlFormula) -> Dea {
    let tt = TlFormula::tt;
    let e = EaFormula::new(
        vec![tt(), fold::or(fold::not(b1.clone()), fold::k_plus(fold::not(b1.clone()))), tt()],
        vec![tt(), b1.clone(), tt(), tt()],
        [(Var::from("z0"), 0), (Var::from("z"), 1), (Var::from("z1"), 2)].into_iter().collect(),
    )
    .unwrap();
    Dea::single(common::scope(&["z0", "z", "z1"]), e).unwrap()
}

#[test]
fn infimum_absorbs_the_first_plus_factor() {
    for items in [
        &["P", "Q", "true"][..],
        &["true", "!P", "Q", "P", "!Q"][..],
        &["P", "P", "P", "Q", "true"][..],
    ] {
        let pat = pattern(items);
        let b1 = pat.intervals()[0].clone();
        let mut plus = vec![b1.clone(), b1.clone()];
        plus.extend(pat.points()[1..].iter().zip(pat.intervals()[1..].iter().map(Some).chain([None])).flat_map(
            |(a, b)| std::iter::once(a.clone()).chain(b.cloned()),
        ));
        let plus = IntervalPattern::from_alternating(plus).unwrap();
        let map = [(Var::from("z0"), Var::from("z"))].into_iter().collect();
        let not_plus = Translator::new().neg_interval(&plus).unwrap().rename(&map).unwrap();
        let inf = infimum(&b1);
        let both = conjoin(&inf, &not_plus);
        for m in enumerate_chains(5, &pq()) {
            for a in common::assignments(&m, inf.scope()) {
                assert_eq!(
                    eval_dea(&m, &a, &both).unwrap(),
                    eval_dea(&m, &a, &inf).unwrap(),
                    "{pat} on {m} at {a:?}"
                );
            }
        }
    }
}
