use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::formulas::{fold, TlFormula, Var, VariableOrder};
use crate::normal_form::{conjoin, ea_split_pairs, simplify, top_dea, Dea, EaFormula};

use super::emit::ea1_to_tl;
use super::pattern::{z0, z1, IntervalPattern};
use super::Translator;

fn point(label: TlFormula, vars: &[&Var]) -> EaFormula {
    EaFormula::points_only(vec![label], &vars.iter().map(|v| (*v, 0)).collect::<Vec<_>>())
        .expect("one point")
}

fn two_points(first: TlFormula, second: TlFormula, a: &Var, b: &Var) -> EaFormula {
    EaFormula::points_only(vec![first, second], &[(a, 0), (b, 1)]).expect("two points")
}

/// A one-point EA asserting `f` at `v`.
pub(crate) fn atom_at(v: &Var, f: TlFormula) -> Dea {
    let scope = VariableOrder::new([v.clone()]).expect("one variable");
    if f.is_false() {
        return Dea::falsum(scope);
    }
    Dea::single(scope, point(f, &[v])).expect("scope matches")
}

impl Translator {
    pub fn neg_ea2(&mut self, e: &EaFormula) -> Result<Dea> {
        let tt = TlFormula::tt;
        let mut vars: Vec<(Var, usize)> = e.bindings().iter().map(|(v, i)| (v.clone(), *i)).collect();
        vars.sort_by_key(|(_, i)| *i);
        match vars.as_slice() {
            [(v, _)] => Ok(atom_at(v, fold::not(ea1_to_tl(e)))),
            [(a, m), (b, k)] => {
                let scope = VariableOrder::new([a.clone(), b.clone()])?;
                let before = two_points(tt(), tt(), b, a);
                let mut parts = vec![before];
                if m == k {
                    parts.push(two_points(tt(), tt(), a, b));
                    let mut only_a = e.bindings().clone();
                    only_a.remove(b);
                    let whole = EaFormula::new(e.points().to_vec(), e.intervals().to_vec(), only_a)?;
                    parts.push(point(fold::not(ea1_to_tl(&whole)), &[a, b]));
                    return Ok(simplify(&Dea::new(scope, parts)?));
                }
                let (m, k) = (*m, *k);
                parts.push(point(tt(), &[a, b]));

                let mut pre_points = e.points()[..=m].to_vec();
                pre_points[m] = tt();
                let mut pre_intervals = e.intervals()[..=m].to_vec();
                pre_intervals.push(tt());
                let prefix = EaFormula::new(pre_points, pre_intervals, [(a.clone(), m)].into_iter().collect())?;

                let mut post_points = e.points()[k..].to_vec();
                post_points[0] = tt();
                let mut post_intervals = vec![tt()];
                post_intervals.extend_from_slice(&e.intervals()[k + 1..]);
                let suffix = EaFormula::new(post_points, post_intervals, [(b.clone(), 0)].into_iter().collect())?;

                parts.push(two_points(fold::not(ea1_to_tl(&prefix)), tt(), a, b));
                parts.push(two_points(tt(), fold::not(ea1_to_tl(&suffix)), a, b));

                let middle = IntervalPattern::new(
                    e.points()[m..=k].to_vec(),
                    e.intervals()[m + 1..=k].to_vec(),
                )?;
                let map: BTreeMap<Var, Var> = [(z0(), a.clone()), (z1(), b.clone())].into_iter().collect();
                let gap = self.neg_interval(&middle)?.rename(&map)?;
                parts.extend(gap.disjuncts().iter().cloned());
                let out = simplify(&Dea::new(scope, parts)?);
                self.check_dea(&out)?;
                Ok(out)
            }
            _ => Err(Error::Arity {
                expected: 2,
                found: e.bindings().keys().cloned().collect(),
            }),
        }
    }

    /// De Morgan over the disjuncts, split by order type: the weak orderings
    /// of the scope partition the assignments, so `¬d` is the union over
    /// orderings `T` of `T ∧ ⋀ ¬e` for the disjuncts `e` of type `T`, and
    /// each `¬e` is the union of `neg_ea2` over the pieces of `e`.
    pub fn neg_dea(&mut self, d: &Dea) -> Result<Dea> {
        let scope = d.scope().clone();
        if d.is_empty() {
            return Ok(top_dea(&scope));
        }
        if scope.len() == 1 {
            let a = self.dea1_to_tl(d)?;
            return Ok(atom_at(&scope.vars()[0], fold::not(a)));
        }
        let mut by_type: BTreeMap<Vec<Vec<Var>>, Vec<&EaFormula>> = BTreeMap::new();
        for e in d.disjuncts() {
            by_type.entry(order_type(e)).or_default().push(e);
        }
        let mut out = Vec::new();
        for t in top_dea(&scope).disjuncts() {
            let mut acc = Dea::new(scope.clone(), vec![t.clone()])?;
            for e in by_type.get(&order_type(t)).into_iter().flatten() {
                let mut parts = Vec::new();
                for piece in ea_split_pairs(e) {
                    let neg = self.neg_ea2(&piece)?;
                    self.check_product(&acc, &neg)?;
                    parts.extend(conjoin(&acc, &neg).disjuncts().iter().cloned());
                }
                acc = simplify(&Dea::new(scope.clone(), parts)?);
                self.check_dea(&acc)?;
                if acc.is_empty() {
                    break;
                }
            }
            out.extend(acc.disjuncts().iter().cloned());
        }
        let out = simplify(&Dea::new(scope, out)?);
        self.check_dea(&out)?;
        Ok(out)
    }
}

/// The variables grouped by the point they are bound to, in point order.
fn order_type(e: &EaFormula) -> Vec<Vec<Var>> {
    e.bound_points().into_iter().map(|i| e.vars_at(i)).collect()
}
