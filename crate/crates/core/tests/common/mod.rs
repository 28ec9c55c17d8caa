//! Brute-force oracles shared by the integration tests. None of them go
//! through the library's own EA evaluator.
#![allow(dead_code)]

use kamp_core::formulas::{parse_fo, parse_tl, FoFormula, TlFormula, Var, VariableOrder};
use kamp_core::normal_form::{Dea, EaFormula};
use kamp_core::semantics::{eval_tl, Assignment, Chain};
use kamp_core::translate::IntervalPattern;

pub fn tl(s: &str) -> TlFormula {
    parse_tl(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

pub fn fo(s: &str) -> FoFormula {
    parse_fo(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

pub fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

pub fn scope(vs: &[&str]) -> VariableOrder {
    VariableOrder::new(vs.iter().map(|v| Var::from(*v))).unwrap()
}

pub fn pattern(items: &[&str]) -> IntervalPattern {
    IntervalPattern::from_alternating(items.iter().map(|s| tl(s)).collect()).unwrap()
}

/// Every assignment of `scope` into the positions of `m`.
pub fn assignments(m: &Chain, scope: &VariableOrder) -> Vec<Assignment> {
    let mut out = vec![Assignment::new()];
    for v in scope.vars() {
        out = out
            .into_iter()
            .flat_map(|a| {
                (0..m.size()).map(move |t| {
                    let mut b = a.clone();
                    b.insert(v.clone(), t);
                    b
                })
            })
            .collect();
    }
    out
}

/// Tries every strictly increasing tuple of positions for the existential
/// points.
pub fn naive_ea(m: &Chain, a: &Assignment, e: &EaFormula) -> bool {
    let n = e.len();
    let holds = |f: &TlFormula, t: usize| eval_tl(m, t, f).unwrap();
    let mut xs = Vec::with_capacity(n);
    fn go(
        m: &Chain,
        a: &Assignment,
        e: &EaFormula,
        xs: &mut Vec<usize>,
        holds: &dyn Fn(&TlFormula, usize) -> bool,
    ) -> bool {
        let j = xs.len();
        if j == e.len() {
            let inside = |lo: Option<usize>, hi: Option<usize>, b: &TlFormula| {
                let lo = lo.map_or(0, |x| x + 1);
                let hi = hi.unwrap_or(m.size());
                (lo..hi).all(|u| holds(b, u))
            };
            return e.bindings().iter().all(|(v, &i)| a[v] == xs[i])
                && (0..=e.len()).all(|k| {
                    let lo = k.checked_sub(1).map(|i| xs[i]);
                    inside(lo, xs.get(k).copied(), &e.intervals()[k])
                });
        }
        let start = xs.last().map_or(0, |x| x + 1);
        for x in start..m.size() {
            if holds(&e.points()[j], x) {
                xs.push(x);
                if go(m, a, e, xs, holds) {
                    return true;
                }
                xs.pop();
            }
        }
        false
    }
    go(m, a, e, &mut xs, &holds)
}

pub fn naive_dea(m: &Chain, a: &Assignment, d: &Dea) -> bool {
    d.disjuncts().iter().any(|e| naive_ea(m, a, e))
}

/// Does the pattern occur with its first point at `p` and its last at `q`?
pub fn occurs(m: &Chain, pat: &IntervalPattern, p: usize, q: usize) -> bool {
    let e = pat.to_ea();
    let a: Assignment = [(Var::from("z0"), p), (Var::from("z1"), q)].into_iter().collect();
    naive_ea(m, &a, &e)
}

pub fn z(p: usize, q: usize) -> Assignment {
    [(Var::from("z0"), p), (Var::from("z1"), q)].into_iter().collect()
}
