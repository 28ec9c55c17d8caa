use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::formulas::{fold, TlFormula, Var, VariableOrder};
use crate::semantics::{Assignment, Chain, TlEvaluator};

use super::ea::{eval_ea_with, EaFormula};

/// A finite disjunction of EA formulas over a common set of free variables.
/// Disjuncts are kept sorted and distinct; no disjuncts means false.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dea {
    scope: VariableOrder,
    disjuncts: Vec<EaFormula>,
}

impl Dea {
    pub fn new(scope: VariableOrder, disjuncts: Vec<EaFormula>) -> Result<Self> {
        let want: BTreeSet<&Var> = scope.vars().iter().collect();
        for e in &disjuncts {
            let got: BTreeSet<&Var> = e.bindings().keys().collect();
            if got != want {
                return Err(Error::ScopeMismatch {
                    expected: scope.to_string(),
                    found: format!("{e}"),
                });
            }
        }
        Ok(Dea::raw(scope, disjuncts))
    }

    pub(crate) fn raw(scope: VariableOrder, mut disjuncts: Vec<EaFormula>) -> Self {
        disjuncts.sort();
        disjuncts.dedup();
        Dea { scope, disjuncts }
    }

    pub fn falsum(scope: VariableOrder) -> Self {
        Dea {
            scope,
            disjuncts: Vec::new(),
        }
    }

    pub fn single(scope: VariableOrder, e: EaFormula) -> Result<Self> {
        Dea::new(scope, vec![e])
    }

    pub fn scope(&self) -> &VariableOrder {
        &self.scope
    }

    pub fn disjuncts(&self) -> &[EaFormula] {
        &self.disjuncts
    }

    pub fn len(&self) -> usize {
        self.disjuncts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.disjuncts.is_empty()
    }

    /// Total label size over all disjuncts.
    pub fn weight(&self) -> u64 {
        self.disjuncts
            .iter()
            .fold(0u64, |acc, e| acc.saturating_add(e.weight()))
    }

    pub fn union(&self, other: &Dea) -> Result<Dea> {
        if !self.scope.same_set(&other.scope) {
            return Err(Error::ScopeMismatch {
                expected: self.scope.to_string(),
                found: other.scope.to_string(),
            });
        }
        let mut ds = self.disjuncts.clone();
        ds.extend(other.disjuncts.iter().cloned());
        Ok(Dea::raw(self.scope.clone(), ds))
    }

    /// Simultaneous renaming of free variables. Variables missing from `map`
    /// keep their names.
    pub fn rename(&self, map: &BTreeMap<Var, Var>) -> Result<Dea> {
        let scope = VariableOrder::new(
            self.scope
                .vars()
                .iter()
                .map(|v| map.get(v).cloned().unwrap_or_else(|| v.clone())),
        )?;
        Ok(Dea::raw(
            scope,
            self.disjuncts.iter().map(|e| e.rename(map)).collect(),
        ))
    }

    /// Time reversal of every disjunct.
    pub fn mirror(&self) -> Dea {
        Dea::raw(
            self.scope.clone(),
            self.disjuncts.iter().map(EaFormula::mirror).collect(),
        )
    }
}

impl fmt::Display for Dea {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.disjuncts.is_empty() {
            return write!(f, "{} FALSE", self.scope);
        }
        write!(f, "{}", self.scope)?;
        for e in &self.disjuncts {
            write!(f, "\n  {e}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Dea {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dea {} [", self.scope)?;
        for (i, e) in self.disjuncts.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e:?}")?;
        }
        write!(f, "]")
    }
}

pub fn eval_dea(m: &Chain, a: &Assignment, d: &Dea) -> Result<bool> {
    eval_dea_with(&mut TlEvaluator::new(m), a, d)
}

pub fn eval_dea_with(ev: &mut TlEvaluator<'_>, a: &Assignment, d: &Dea) -> Result<bool> {
    for v in d.scope.vars() {
        match a.get(v) {
            None => return Err(Error::Unassigned(v.clone())),
            Some(&p) if p >= ev.chain().size() => {
                return Err(Error::PositionOutOfRange {
                    position: p,
                    size: ev.chain().size(),
                })
            }
            Some(_) => {}
        }
    }
    for e in &d.disjuncts {
        if eval_ea_with(ev, a, e)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// True over `scope`: one all-`true` disjunct per weak ordering of the
/// variables.
pub fn top_dea(scope: &VariableOrder) -> Dea {
    fn blocks(rest: &[Var]) -> Vec<Vec<Vec<Var>>> {
        if rest.is_empty() {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        // the first block is any nonempty subset
        for mask in 1u32..(1 << rest.len()) {
            let (first, others): (Vec<_>, Vec<_>) = rest
                .iter()
                .enumerate()
                .partition(|(i, _)| mask >> i & 1 == 1);
            let first: Vec<Var> = first.into_iter().map(|(_, v)| v.clone()).collect();
            let others: Vec<Var> = others.into_iter().map(|(_, v)| v.clone()).collect();
            for mut tail in blocks(&others) {
                tail.insert(0, first.clone());
                out.push(tail);
            }
        }
        out
    }
    let disjuncts = blocks(scope.vars())
        .into_iter()
        .map(|order| {
            let bindings = order
                .iter()
                .enumerate()
                .flat_map(|(i, block)| block.iter().map(move |v| (v.clone(), i)))
                .collect();
            EaFormula::raw(
                vec![TlFormula::tt(); order.len()],
                vec![TlFormula::tt(); order.len() + 1],
                bindings,
            )
        })
        .collect();
    Dea::raw(scope.clone(), disjuncts)
}

/// All order-preserving merges of the points of `e1` and `e2`, where points
/// from opposite sides may coincide and must when they carry a common
/// variable.
pub fn merge_ea(e1: &EaFormula, e2: &EaFormula) -> Vec<EaFormula> {
    struct Ctx<'a> {
        e1: &'a EaFormula,
        e2: &'a EaFormula,
        // for each point: indices on the other side it must coincide with
        must1: Vec<Option<usize>>,
        must2: Vec<Option<usize>>,
        // false when some common variable makes coincidence impossible
        consistent: bool,
        out: Vec<EaFormula>,
    }
    let (n1, n2) = (e1.len(), e2.len());
    let mut must1 = vec![None; n1];
    let mut must2 = vec![None; n2];
    let mut consistent = true;
    for (v, &i) in e1.bindings() {
        if let Some(&j) = e2.bindings().get(v) {
            if must1[i].is_some_and(|k| k != j) || must2[j].is_some_and(|k| k != i) {
                consistent = false;
            }
            must1[i] = Some(j);
            must2[j] = Some(i);
        }
    }
    if !consistent {
        return Vec::new();
    }
    let mut ctx = Ctx {
        e1,
        e2,
        must1,
        must2,
        consistent,
        out: Vec::new(),
    };

    fn rec(
        c: &mut Ctx<'_>,
        i: usize,
        j: usize,
        points: &mut Vec<TlFormula>,
        intervals: &mut Vec<TlFormula>,
        pos1: &mut Vec<usize>,
        pos2: &mut Vec<usize>,
    ) {
        let (n1, n2) = (c.e1.len(), c.e2.len());
        let cover1 = &c.e1.intervals()[i];
        let cover2 = &c.e2.intervals()[j];
        if i == n1 && j == n2 {
            let mut ivs = intervals.clone();
            ivs.push(fold::and(cover1.clone(), cover2.clone()));
            let bindings = c
                .e1
                .bindings()
                .iter()
                .map(|(v, &k)| (v.clone(), pos1[k]))
                .chain(c.e2.bindings().iter().map(|(v, &k)| (v.clone(), pos2[k])))
                .collect();
            c.out.push(EaFormula::raw(points.clone(), ivs, bindings));
            return;
        }
        let gap = fold::and(cover1.clone(), cover2.clone());
        // point i of e1 alone
        if i < n1 && c.must1[i].is_none() {
            points.push(fold::and(c.e1.points()[i].clone(), cover2.clone()));
            intervals.push(gap.clone());
            pos1.push(points.len() - 1);
            rec(c, i + 1, j, points, intervals, pos1, pos2);
            pos1.pop();
            intervals.pop();
            points.pop();
        }
        // point j of e2 alone
        if j < n2 && c.must2[j].is_none() {
            points.push(fold::and(cover1.clone(), c.e2.points()[j].clone()));
            intervals.push(gap.clone());
            pos2.push(points.len() - 1);
            rec(c, i, j + 1, points, intervals, pos1, pos2);
            pos2.pop();
            intervals.pop();
            points.pop();
        }
        // both together
        if i < n1
            && j < n2
            && c.must1[i].map_or(true, |k| k == j)
            && c.must2[j].map_or(true, |k| k == i)
        {
            points.push(fold::and(c.e1.points()[i].clone(), c.e2.points()[j].clone()));
            intervals.push(gap);
            pos1.push(points.len() - 1);
            pos2.push(points.len() - 1);
            rec(c, i + 1, j + 1, points, intervals, pos1, pos2);
            pos2.pop();
            pos1.pop();
            intervals.pop();
            points.pop();
        }
    }

    debug_assert!(ctx.consistent);
    rec(
        &mut ctx,
        0,
        0,
        &mut Vec::new(),
        &mut Vec::new(),
        &mut Vec::new(),
        &mut Vec::new(),
    );
    ctx.out
}

/// Conjunction of two DEA formulas with arbitrary scopes; the result scope is
/// the union (left order first).
pub fn conjoin(d1: &Dea, d2: &Dea) -> Dea {
    let scope = d1.scope.union(&d2.scope);
    let pairs: Vec<(&EaFormula, &EaFormula)> = d1
        .disjuncts
        .iter()
        .flat_map(|a| d2.disjuncts.iter().map(move |b| (a, b)))
        .collect();
    let merged: Vec<EaFormula> = if pairs.len() > 64 {
        pairs
            .par_iter()
            .flat_map_iter(|(a, b)| merge_ea(a, b))
            .collect()
    } else {
        pairs.iter().flat_map(|(a, b)| merge_ea(a, b)).collect()
    };
    Dea::raw(scope, merged)
}

/// Conjunction of two DEA formulas over the same variable set.
pub fn ea_and(d1: &Dea, d2: &Dea) -> Result<Dea> {
    if !d1.scope.same_set(&d2.scope) {
        return Err(Error::ScopeMismatch {
            expected: d1.scope.to_string(),
            found: d2.scope.to_string(),
        });
    }
    let mut out = conjoin(d1, d2);
    out.scope = d1.scope.clone();
    Ok(out)
}

/// Disjunction; both sides are first embedded into the union scope.
pub fn disjoin(d1: &Dea, d2: &Dea) -> Dea {
    let scope = d1.scope.union(&d2.scope);
    let a = embed(d1, &scope).expect("union contains both scopes");
    let b = embed(d2, &scope).expect("union contains both scopes");
    a.union(&b).expect("same scope")
}

/// The same formula viewed over the larger scope `scope`; the new variables
/// are unconstrained.
pub fn embed(d: &Dea, scope: &VariableOrder) -> Result<Dea> {
    if !d.scope.is_subset_of(scope) {
        return Err(Error::ScopeMismatch {
            expected: format!("a subset of {scope}"),
            found: d.scope.to_string(),
        });
    }
    let extra = scope.difference(&d.scope);
    let mut out = if extra.is_empty() {
        d.clone()
    } else {
        conjoin(d, &top_dea(&extra))
    };
    out.scope = scope.clone();
    Ok(out)
}

/// `∃v d`: the point `v` was bound to stays as an existential point.
pub fn ea_exists(v: &Var, d: &Dea) -> Result<Dea> {
    if !d.scope.contains(v) {
        return Err(Error::NotInScope(v.clone()));
    }
    let disjuncts = d
        .disjuncts
        .iter()
        .map(|e| {
            let mut b = e.bindings().clone();
            b.remove(v);
            EaFormula::raw(e.points().to_vec(), e.intervals().to_vec(), b)
        })
        .collect();
    Ok(Dea::raw(d.scope.without(v), disjuncts))
}

/// EA formulas with at most two free variables each whose conjunction is
/// equivalent to `e`: the part up to the first bound point, one piece per
/// pair of consecutive bound points, the part from the last bound point on,
/// and an equality piece for each extra variable sharing a point.
pub fn ea_split_pairs(e: &EaFormula) -> Vec<EaFormula> {
    if e.bindings().len() <= 2 && e.bound_points().len() <= 1
        || e.bindings().len() <= 1
    {
        return vec![e.clone()];
    }
    let bound = e.bound_points();
    let reps: Vec<Var> = bound.iter().map(|&i| e.vars_at(i)[0].clone()).collect();
    let tt = TlFormula::tt;
    let mut out = Vec::new();
    let first = bound[0];
    let last = *bound.last().expect("at least one bound point");

    let mut ivs = e.intervals()[..=first].to_vec();
    ivs.push(tt());
    out.push(EaFormula::raw(
        e.points()[..=first].to_vec(),
        ivs,
        [(reps[0].clone(), first)].into_iter().collect(),
    ));
    for (k, w) in bound.windows(2).enumerate() {
        let (lo, hi) = (w[0], w[1]);
        let mut ivs = vec![tt()];
        ivs.extend_from_slice(&e.intervals()[lo + 1..=hi]);
        ivs.push(tt());
        out.push(EaFormula::raw(
            e.points()[lo..=hi].to_vec(),
            ivs,
            [(reps[k].clone(), 0), (reps[k + 1].clone(), hi - lo)]
                .into_iter()
                .collect(),
        ));
    }
    let mut ivs = vec![tt()];
    ivs.extend_from_slice(&e.intervals()[last + 1..]);
    out.push(EaFormula::raw(
        e.points()[last..].to_vec(),
        ivs,
        [(reps[reps.len() - 1].clone(), 0)].into_iter().collect(),
    ));
    for (k, &i) in bound.iter().enumerate() {
        for w in e.vars_at(i).into_iter().filter(|w| *w != reps[k]) {
            out.push(EaFormula::raw(
                vec![tt()],
                vec![tt(), tt()],
                [(reps[k].clone(), 0), (w, 0)].into_iter().collect(),
            ));
        }
    }
    out
}
