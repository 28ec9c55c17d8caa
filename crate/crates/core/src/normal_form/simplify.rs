use std::collections::BTreeMap;

use crate::formulas::{fold, TlFormula};

use super::dea::Dea;
use super::ea::EaFormula;

/// Semantics-preserving cleanup, run to a fixpoint:
///
/// * labels are re-folded knowing which neighbours exist (`true U true` holds
///   at every point but the last existential one, and so on);
/// * disjuncts with a `false` point label are dropped (a `false` interval
///   only says the interval is empty, so it is kept);
/// * unbound points before the first bound point and after the last are
///   absorbed into that point's label as Since/Until chains;
/// * disjuncts differing in a single point label are merged;
/// * disjuncts implied label-wise by another of the same shape are dropped.
pub fn simplify(d: &Dea) -> Dea {
    let mut cur = d.clone();
    loop {
        let next = step(&cur);
        if next == cur {
            return next;
        }
        cur = next;
    }
}

fn step(d: &Dea) -> Dea {
    let mut out: Vec<EaFormula> = d
        .disjuncts()
        .iter()
        .map(fold_in_context)
        .filter(|e| !e.points().iter().any(TlFormula::is_false))
        .map(|e| absorb_ends(&e))
        .collect();
    out.sort();
    out.dedup();
    out = merge_point_labels(out);
    out = drop_subsumed(out);
    Dea::raw(d.scope().clone(), out)
}

fn fold_in_context(e: &EaFormula) -> EaFormula {
    let n = e.len();
    let points = e
        .points()
        .iter()
        .enumerate()
        .map(|(j, a)| fold::at_point(a, j + 1 < n, j > 0))
        .collect();
    let intervals = e
        .intervals()
        .iter()
        .enumerate()
        .map(|(j, b)| fold::at_point(b, j < n, j > 0))
        .collect();
    EaFormula::raw(points, intervals, e.bindings().clone())
}

/// `β_k S (α_{k-1} ∧ (β_{k-1} S (… α_0 ∧ H β_0)))` evaluated at point `k`
/// states everything the EA says about points and intervals before `k`.
pub(crate) fn backward_chain(e: &EaFormula, k: usize) -> TlFormula {
    let mut acc = fold::always_past(e.intervals()[0].clone());
    for j in 0..k {
        acc = fold::and(e.points()[j].clone(), acc);
        acc = fold::since(e.intervals()[j + 1].clone(), acc);
    }
    acc
}

/// Mirror image of [`backward_chain`]: the part of the EA after point `k`.
pub(crate) fn forward_chain(e: &EaFormula, k: usize) -> TlFormula {
    let n = e.len();
    let mut acc = fold::always_future(e.intervals()[n].clone());
    for j in (k + 1..n).rev() {
        acc = fold::and(e.points()[j].clone(), acc);
        acc = fold::until(e.intervals()[j].clone(), acc);
    }
    acc
}

fn absorb_ends(e: &EaFormula) -> EaFormula {
    let bound = e.bound_points();
    let (Some(&first), Some(&last)) = (bound.first(), bound.last()) else {
        return e.clone();
    };
    let n = e.len();
    let tt = TlFormula::tt();
    if first == 0 && last + 1 == n && e.intervals()[0].is_true() && e.intervals()[n].is_true() {
        return e.clone();
    }
    let mut points = e.points()[first..=last].to_vec();
    let mut intervals = e.intervals()[first..=last + 1].to_vec();
    points[0] = fold::and(points[0].clone(), backward_chain(e, first));
    let lp = points.len() - 1;
    points[lp] = fold::and(points[lp].clone(), forward_chain(e, last));
    intervals[0] = tt.clone();
    let li = intervals.len() - 1;
    intervals[li] = tt;
    let points = {
        let m = points.len();
        points
            .iter()
            .enumerate()
            .map(|(j, a)| fold::at_point(a, j + 1 < m, j > 0))
            .collect()
    };
    let bindings = e
        .bindings()
        .iter()
        .map(|(v, i)| (v.clone(), i - first))
        .collect();
    EaFormula::raw(points, intervals, bindings)
}

/// Merges disjuncts that agree everywhere except one point label, OR-ing that
/// label. Interval labels cannot be merged this way.
fn merge_point_labels(mut ds: Vec<EaFormula>) -> Vec<EaFormula> {
    let max_len = ds.iter().map(EaFormula::len).max().unwrap_or(0);
    for j in 0..max_len {
        let mut groups: BTreeMap<EaFormula, TlFormula> = BTreeMap::new();
        let mut rest = Vec::new();
        for e in ds {
            if j >= e.len() {
                rest.push(e);
                continue;
            }
            let label = e.points()[j].clone();
            let mut points = e.points().to_vec();
            points[j] = TlFormula::tt();
            let key = EaFormula::raw(points, e.intervals().to_vec(), e.bindings().clone());
            groups
                .entry(key)
                .and_modify(|l| *l = fold::or(l.clone(), label.clone()))
                .or_insert(label);
        }
        for (key, label) in groups {
            let mut points = key.points().to_vec();
            points[j] = label;
            rest.push(EaFormula::raw(points, key.intervals().to_vec(), key.bindings().clone()));
        }
        rest.sort();
        rest.dedup();
        ds = rest;
    }
    ds
}

fn implied_by(weaker: &EaFormula, stronger: &EaFormula) -> bool {
    weaker.len() == stronger.len()
        && weaker.bindings() == stronger.bindings()
        && stronger
            .points()
            .iter()
            .zip(weaker.points())
            .all(|(s, w)| fold::implies(s, w))
        && stronger
            .intervals()
            .iter()
            .zip(weaker.intervals())
            .all(|(s, w)| fold::implies(s, w))
}

fn drop_subsumed(ds: Vec<EaFormula>) -> Vec<EaFormula> {
    let mut keep = vec![true; ds.len()];
    for i in 0..ds.len() {
        for j in 0..ds.len() {
            if i != j && keep[j] && implied_by(&ds[j], &ds[i]) && (!implied_by(&ds[i], &ds[j]) || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    ds.into_iter()
        .zip(keep)
        .filter_map(|(e, k)| k.then_some(e))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::{parse_tl, Var, VariableOrder};
    use crate::normal_form::eval_dea;
    use crate::semantics::{enumerate_chains, Assignment};

    fn tl(s: &str) -> TlFormula {
        parse_tl(s).unwrap()
    }

    fn ea(points: &[&str], intervals: &[&str], bindings: &[(&str, usize)]) -> EaFormula {
        EaFormula::new(
            points.iter().map(|s| tl(s)).collect(),
            intervals.iter().map(|s| tl(s)).collect(),
            bindings.iter().map(|(v, i)| (Var::from(*v), *i)).collect(),
        )
        .unwrap()
    }

    fn sample() -> Dea {
        let s: VariableOrder = ["z"].into_iter().collect();
        Dea::new(
            s,
            vec![
                ea(&["P", "false"], &["true", "true", "true"], &[("z", 0)]),
                ea(&["Q", "P"], &["true", "false", "!Q"], &[("z", 1)]),
                ea(&["Q", "!P"], &["true", "false", "!Q"], &[("z", 1)]),
                ea(&["true U true", "P"], &["true", "true", "true"], &[("z", 1)]),
                ea(&["true", "P"], &["true", "true", "true"], &[("z", 1)]),
                ea(&["true", "P & Q"], &["true", "Q", "true"], &[("z", 1)]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn drops_false_points_only() {
        let s = simplify(&sample());
        for e in s.disjuncts() {
            assert!(!e.points().iter().any(TlFormula::is_false));
        }
        // the `false` interval forces adjacency and must survive as a label
        // on the absorbed chain
        assert!(s.disjuncts().iter().any(|e| e.points()[0].to_string().contains("(!true S Q)")), "{s}");
    }

    #[test]
    fn preserves_semantics() {
        let d = sample();
        let s = simplify(&d);
        assert!(s.len() < d.len());
        for m in enumerate_chains(4, &["P".into(), "Q".into()]) {
            for p in 0..m.size() {
                let a: Assignment = [(Var::from("z"), p)].into_iter().collect();
                assert_eq!(eval_dea(&m, &a, &s).unwrap(), eval_dea(&m, &a, &d).unwrap(), "{m} {p}");
            }
        }
    }

    #[test]
    fn idempotent() {
        let s = simplify(&sample());
        assert_eq!(simplify(&s), s);
    }
}
