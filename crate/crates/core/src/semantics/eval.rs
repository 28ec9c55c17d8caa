use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::formulas::{FoFormula, TlFormula, TlKind, Var};

use super::Chain;

/// Variable-to-position map.
pub type Assignment = BTreeMap<Var, usize>;

/// Evaluates temporal formulas on one chain, memoizing the truth row of every
/// subformula it has seen.
pub struct TlEvaluator<'a> {
    chain: &'a Chain,
    memo: HashMap<usize, Arc<[bool]>>,
}

impl<'a> TlEvaluator<'a> {
    pub fn new(chain: &'a Chain) -> Self {
        TlEvaluator {
            chain,
            memo: HashMap::new(),
        }
    }

    pub fn chain(&self) -> &Chain {
        self.chain
    }

    /// Truth value of `f` at every position.
    pub fn row(&mut self, f: &TlFormula) -> Arc<[bool]> {
        if let Some(r) = self.memo.get(&f.id()) {
            return r.clone();
        }
        // post-order without recursion; formulas can be deep
        let mut stack: Vec<(TlFormula, bool)> = vec![(f.clone(), false)];
        while let Some((g, expanded)) = stack.pop() {
            if self.memo.contains_key(&g.id()) {
                continue;
            }
            if !expanded {
                stack.push((g.clone(), true));
                match g.kind() {
                    TlKind::True | TlKind::Atom(_) => {}
                    TlKind::Not(a) => stack.push((a.clone(), false)),
                    TlKind::Or(a, b)
                    | TlKind::And(a, b)
                    | TlKind::Until(a, b)
                    | TlKind::Since(a, b) => {
                        stack.push((a.clone(), false));
                        stack.push((b.clone(), false));
                    }
                }
                continue;
            }
            let row = self.compute(&g);
            self.memo.insert(g.id(), row);
        }
        self.memo[&f.id()].clone()
    }

    fn compute(&self, g: &TlFormula) -> Arc<[bool]> {
        let n = self.chain.size();
        let get = |h: &TlFormula| &self.memo[&h.id()];
        match g.kind() {
            TlKind::True => vec![true; n].into(),
            TlKind::Atom(a) => match self.chain.row(a) {
                Some(r) => r.into(),
                None => vec![false; n].into(),
            },
            TlKind::Not(a) => get(a).iter().map(|v| !v).collect(),
            TlKind::Or(a, b) => get(a).iter().zip(get(b).iter()).map(|(x, y)| *x || *y).collect(),
            TlKind::And(a, b) => get(a).iter().zip(get(b).iter()).map(|(x, y)| *x && *y).collect(),
            TlKind::Until(a, b) => {
                let (ra, rb) = (get(a), get(b));
                // out[t] = rb[t+1] || (ra[t+1] && out[t+1])
                let mut out = vec![false; n];
                for t in (0..n.saturating_sub(1)).rev() {
                    out[t] = rb[t + 1] || (ra[t + 1] && out[t + 1]);
                }
                out.into()
            }
            TlKind::Since(a, b) => {
                let (ra, rb) = (get(a), get(b));
                let mut out = vec![false; n];
                for t in 1..n {
                    out[t] = rb[t - 1] || (ra[t - 1] && out[t - 1]);
                }
                out.into()
            }
        }
    }

    pub fn eval(&mut self, t: usize, f: &TlFormula) -> Result<bool> {
        if t >= self.chain.size() {
            return Err(Error::PositionOutOfRange {
                position: t,
                size: self.chain.size(),
            });
        }
        Ok(self.row(f)[t])
    }
}

/// `m, t |= f`.
pub fn eval_tl(m: &Chain, t: usize, f: &TlFormula) -> Result<bool> {
    TlEvaluator::new(m).eval(t, f)
}

/// Truth value of `f` at every position of `m`.
pub fn eval_tl_all(m: &Chain, f: &TlFormula) -> Vec<bool> {
    TlEvaluator::new(m).row(f).to_vec()
}

/// Tarskian evaluation with quantifiers over `0..m.size()`.
pub fn eval_fo(m: &Chain, a: &Assignment, f: &FoFormula) -> Result<bool> {
    for v in f.free_vars() {
        match a.get(&v) {
            None => return Err(Error::Unassigned(v)),
            Some(&p) if p >= m.size() => {
                return Err(Error::PositionOutOfRange {
                    position: p,
                    size: m.size(),
                })
            }
            Some(_) => {}
        }
    }
    let mut env: Vec<(Var, usize)> = a.iter().map(|(v, p)| (v.clone(), *p)).collect();
    Ok(eval_fo_env(m, &mut env, f))
}

fn lookup(env: &[(Var, usize)], v: &Var) -> usize {
    env.iter()
        .rev()
        .find(|(w, _)| w == v)
        .map(|(_, p)| *p)
        .expect("free variables are checked before evaluation")
}

fn eval_fo_env(m: &Chain, env: &mut Vec<(Var, usize)>, f: &FoFormula) -> bool {
    match f {
        FoFormula::Pred(p, v) => m.holds(p, lookup(env, v)),
        FoFormula::Less(a, b) => lookup(env, a) < lookup(env, b),
        FoFormula::Equal(a, b) => lookup(env, a) == lookup(env, b),
        FoFormula::Not(g) => !eval_fo_env(m, env, g),
        FoFormula::Or(g, h) => eval_fo_env(m, env, g) || eval_fo_env(m, env, h),
        FoFormula::And(g, h) => eval_fo_env(m, env, g) && eval_fo_env(m, env, h),
        FoFormula::Exists(v, g) | FoFormula::Forall(v, g) => {
            let want = matches!(f, FoFormula::Exists(..));
            for p in 0..m.size() {
                env.push((v.clone(), p));
                let r = eval_fo_env(m, env, g);
                env.pop();
                if r == want {
                    return want;
                }
            }
            !want
        }
    }
}
