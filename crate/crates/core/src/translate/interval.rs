use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::formulas::{fold, TlFormula, Var, VariableOrder};
use crate::normal_form::{conjoin, ea_exists, simplify, Dea, EaFormula};

use super::pattern::{between, endpoints, z0, z1, IntervalPattern};
use super::Translator;

/// The point strictly between the endpoints used by the case analysis.
fn mid() -> Var {
    Var::from("z")
}

/// The infimum witness of the occurrence ladder.
fn r0() -> Var {
    Var::from("r")
}

fn rename(d: &Dea, pairs: &[(Var, Var)]) -> Dea {
    let map: BTreeMap<Var, Var> = pairs.iter().cloned().collect();
    d.rename(&map).expect("renaming to distinct names")
}

fn single(e: EaFormula) -> Dea {
    let scope = VariableOrder::new(e.bindings().keys().cloned()).expect("distinct keys");
    Dea::single(scope, e).expect("scope taken from the bindings")
}

fn three_points(points: [TlFormula; 3], inner: [TlFormula; 2], names: [Var; 3]) -> EaFormula {
    let tt = TlFormula::tt;
    let [b1, b2] = inner;
    EaFormula::new(
        points.to_vec(),
        vec![tt(), b1, b2, tt()],
        names.into_iter().enumerate().map(|(i, v)| (v, i)).collect(),
    )
    .expect("three points, four intervals")
}

/// `z0 < z1`.
pub(crate) fn less_than() -> Dea {
    single(between(vec![TlFormula::tt(), TlFormula::tt(), TlFormula::tt()]))
}

/// `(z0, z1)` has no points.
fn adjacent() -> Dea {
    single(between(vec![TlFormula::tt(), TlFormula::ff(), TlFormula::tt()]))
}

pub(crate) fn inf_pattern(p: &TlFormula) -> Dea {
    let tt = TlFormula::tt;
    single(three_points(
        [tt(), fold::or(p.clone(), fold::k_plus(p.clone())), tt()],
        [fold::not(p.clone()), tt()],
        [z0(), r0(), z1()],
    ))
}

pub(crate) fn interval_cases(pat: &IntervalPattern) -> Result<[Dea; 3]> {
    if pat.n() == 0 {
        return Err(Error::MalformedEa(
            "the case analysis needs a pattern with at least one interval".into(),
        ));
    }
    let tt = TlFormula::tt;
    let (a0, b1) = (pat.alpha(0).clone(), pat.beta(1).clone());
    let k_not_b1 = fold::k_plus(fold::not(b1.clone()));
    let cond1 = single(between(vec![fold::or(fold::not(a0.clone()), k_not_b1.clone()), tt(), tt()]));
    let cond2 = single(between(vec![a0.clone(), b1.clone(), tt()]));
    let cond3 = single(three_points(
        [
            fold::and(a0, fold::not(k_not_b1.clone())),
            fold::or(fold::not(b1.clone()), k_not_b1),
            tt(),
        ],
        [b1, tt()],
        [z0(), mid(), z1()],
    ));
    let cond3 = ea_exists(&mid(), &cond3)?;
    Ok([cond1, cond2, cond3])
}

impl Translator {
    fn and(&self, a: &Dea, b: &Dea) -> Result<Dea> {
        self.check_product(a, b)?;
        let out = simplify(&conjoin(a, b));
        self.check_dea(&out)?;
        Ok(out)
    }

    fn union_all(&self, scope: VariableOrder, parts: Vec<Dea>) -> Result<Dea> {
        let mut ds = Vec::new();
        for p in parts {
            debug_assert!(p.scope().same_set(&scope));
            ds.extend(p.disjuncts().iter().cloned());
        }
        let out = simplify(&Dea::new(scope, ds)?);
        self.check_dea(&out)?;
        Ok(out)
    }

    pub fn oc(&mut self, preds: &[TlFormula]) -> Result<Dea> {
        if preds.is_empty() {
            return Err(Error::EmptyOccurrence);
        }
        if let Some(d) = self.oc_memo.get(preds) {
            return Ok(d.clone());
        }
        let tt = TlFormula::tt;
        let p1 = &preds[0];
        let nowhere = single(between(vec![tt(), fold::not(p1.clone()), tt()]));
        let out = if preds.len() == 1 {
            nowhere
        } else {
            let rest = self.oc(&preds[1..])?;
            // P_1 accumulates right after z0
            let at_z0 = single(between(vec![fold::k_plus(p1.clone()), tt(), tt()]));
            let at_z0 = self.and(&at_z0, &rest)?;
            // r is the first P_1 point, or the limit of P_1 points
            let shifted = rename(&rest, &[(z0(), r0())]);
            let via_inf = ea_exists(&r0(), &self.and(&inf_pattern(p1), &shifted)?)?;
            self.union_all(endpoints(), vec![adjacent(), nowhere, at_z0, via_inf])?
        };
        self.oc_memo.insert(preds.to_vec(), out.clone());
        Ok(out)
    }

    /// With `F_n = α_n` and `F_{i-1} = α_{i-1} ∧ (β_i U F_i)`, the pattern
    /// occurs from `z0` to a point of `(z0, z1)` iff `F_0` holds at `z0` and
    /// `F_1 … F_n` occur in order inside `(z0, z1)`.
    pub fn nebl(&mut self, pat: &IntervalPattern) -> Result<Dea> {
        if pat.n() == 0 {
            // the pattern's endpoints coincide, so no z in (z0, z1) fits
            return Ok(less_than());
        }
        if let Some(d) = self.nebl_memo.get(pat) {
            return Ok(d.clone());
        }
        let n = pat.n();
        let mut fs = vec![pat.alpha(n).clone()];
        for i in (1..=n).rev() {
            let next = fs.last().expect("nonempty").clone();
            fs.push(fold::and(
                pat.alpha(i - 1).clone(),
                fold::until(pat.beta(i).clone(), next),
            ));
        }
        fs.reverse();
        let tt = TlFormula::tt;
        let no_start = single(between(vec![fold::not(fs[0].clone()), tt(), tt()]));
        let no_sequence = self.oc(&fs[1..])?;
        let out = self.union_all(endpoints(), vec![no_start, no_sequence])?;
        self.nebl_memo.insert(pat.clone(), out.clone());
        Ok(out)
    }

    pub fn nebr(&mut self, pat: &IntervalPattern) -> Result<Dea> {
        let left = self.nebl(&pat.mirror())?;
        Ok(rename(&left.mirror(), &[(z0(), z1()), (z1(), z0())]))
    }

    pub fn neg_interval(&mut self, pat: &IntervalPattern) -> Result<Dea> {
        if let Some(d) = self.neg_interval_memo.get(pat) {
            return Ok(d.clone());
        }
        let tt = TlFormula::tt;
        let n = pat.n();
        let out = match n {
            0 => less_than(),
            1 => {
                let left = single(between(vec![fold::not(pat.alpha(0).clone()), tt(), tt()]));
                let right = single(between(vec![tt(), tt(), fold::not(pat.alpha(1).clone())]));
                let gap = single(three_points(
                    [tt(), fold::not(pat.beta(1).clone()), tt()],
                    [tt(), tt()],
                    [z0(), mid(), z1()],
                ));
                let gap = ea_exists(&mid(), &gap)?;
                self.union_all(endpoints(), vec![left, right, gap])?
            }
            _ => {
                let [case1, cond2, _] = interval_cases(pat)?;
                let tail = pat.slice(1, n);
                let case2 = self.nebr(&tail)?;
                let case2 = self.and(&cond2, &case2)?;
                let case3 = self.case_three(pat)?;
                self.union_all(endpoints(), vec![adjacent(), case1, case2, case3])?
            }
        };
        self.neg_interval_memo.insert(pat.clone(), out.clone());
        Ok(out)
    }

    /// `¬pat` given that the first failure of `β_1` after `z0` is at some
    /// `z ∈ (z0, z1)`: the pattern then passes through `z` either at one of
    /// its points (`A_i`) or inside one of its intervals (`B_i`).
    fn case_three(&mut self, pat: &IntervalPattern) -> Result<Dea> {
        let tt = TlFormula::tt;
        let n = pat.n();
        let (a0, b1) = (pat.alpha(0).clone(), pat.beta(1).clone());
        let k_not_b1 = fold::k_plus(fold::not(b1.clone()));
        let mut acc = single(three_points(
            [
                fold::and(a0.clone(), fold::not(k_not_b1.clone())),
                fold::or(fold::not(b1.clone()), k_not_b1),
                tt(),
            ],
            [b1, tt()],
            [z0(), mid(), z1()],
        ));
        let left_of = |d: &Dea| rename(d, &[(z1(), mid())]);
        let right_of = |d: &Dea| rename(d, &[(z0(), mid())]);

        // through z at point i: A_i = A_i^-(z0, z) ∧ A_i^+(z, z1)
        for i in 1..n {
            let l = left_of(&self.neg_interval(&pat.slice(0, i))?);
            let r = right_of(&self.neg_interval(&pat.slice(i, n))?);
            acc = self.either(&acc, &l, &r)?;
        }
        // through z inside interval i; i = 1 is impossible right at the
        // infimum, i = n is handled below
        for i in 2..n {
            let (minus, plus) = split_at_interval(pat, i);
            let l = left_of(&self.neg_interval(&minus)?);
            let r = right_of(&self.neg_interval(&plus)?);
            acc = self.either(&acc, &l, &r)?;
        }
        // B_n^- holds on (z0, z) exactly when its head holds at z0 and the
        // rest occurs from some point of (z0, z), since β_1 covers (z0, z)
        let (minus, plus) = split_at_interval(pat, n);
        let head = single(between(vec![fold::not(a0), tt(), tt()]));
        let rest = self.nebr(&minus.slice(1, minus.n()))?;
        let l = left_of(&self.union_all(endpoints(), vec![head, rest])?);
        let r = right_of(&self.neg_interval(&plus)?);
        acc = self.either(&acc, &l, &r)?;
        ea_exists(&mid(), &acc)
    }

    /// `acc ∧ (l ∨ r)` without embedding `l` and `r` into a common scope.
    fn either(&self, acc: &Dea, l: &Dea, r: &Dea) -> Result<Dea> {
        let with_l = self.and(acc, l)?;
        let with_r = self.and(acc, r)?;
        self.union_all(acc.scope().clone(), vec![with_l, with_r])
    }
}

/// `B_i^- = [α_0, …, α_{i-1}, β_i, β_i]` and `B_i^+ = [β_i, β_i, α_i, …, α_n]`.
fn split_at_interval(pat: &IntervalPattern, i: usize) -> (IntervalPattern, IntervalPattern) {
    let b = pat.beta(i).clone();
    let mut mp = pat.points()[..i].to_vec();
    mp.push(b.clone());
    let minus = IntervalPattern::new(mp, pat.intervals()[..i].to_vec()).expect("well-formed");
    let mut pp = vec![b.clone()];
    pp.extend_from_slice(&pat.points()[i..]);
    let mut pi = vec![b];
    pi.extend_from_slice(&pat.intervals()[i..]);
    let plus = IntervalPattern::new(pp, pi).expect("well-formed");
    (minus, plus)
}
