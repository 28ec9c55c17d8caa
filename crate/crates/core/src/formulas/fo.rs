use std::collections::BTreeSet;
use std::fmt;

use super::Var;

/// First-order monadic logic of order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum FoFormula {
    /// `P(x)`
    Pred(String, Var),
    /// `x < y`
    Less(Var, Var),
    /// `x = y`
    Equal(Var, Var),
    Not(Box<FoFormula>),
    Or(Box<FoFormula>, Box<FoFormula>),
    And(Box<FoFormula>, Box<FoFormula>),
    Exists(Var, Box<FoFormula>),
    Forall(Var, Box<FoFormula>),
}

impl FoFormula {
    pub fn pred(name: &str, v: &str) -> Self {
        FoFormula::Pred(name.to_string(), Var::from(v))
    }

    pub fn less(a: &str, b: &str) -> Self {
        FoFormula::Less(Var::from(a), Var::from(b))
    }

    pub fn equal(a: &str, b: &str) -> Self {
        FoFormula::Equal(Var::from(a), Var::from(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: FoFormula) -> Self {
        FoFormula::Not(Box::new(f))
    }

    pub fn or(a: FoFormula, b: FoFormula) -> Self {
        FoFormula::Or(Box::new(a), Box::new(b))
    }

    pub fn and(a: FoFormula, b: FoFormula) -> Self {
        FoFormula::And(Box::new(a), Box::new(b))
    }

    /// `a -> b`, desugared to `!a | b`.
    pub fn implies(a: FoFormula, b: FoFormula) -> Self {
        FoFormula::or(FoFormula::not(a), b)
    }

    pub fn exists(v: &str, body: FoFormula) -> Self {
        FoFormula::Exists(Var::from(v), Box::new(body))
    }

    pub fn forall(v: &str, body: FoFormula) -> Self {
        FoFormula::Forall(Var::from(v), Box::new(body))
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
        let mut add = |v: &Var, bound: &Vec<Var>| {
            if !bound.contains(v) {
                out.insert(v.clone());
            }
        };
        match self {
            FoFormula::Pred(_, v) => add(v, bound),
            FoFormula::Less(a, b) | FoFormula::Equal(a, b) => {
                add(a, bound);
                add(b, bound);
            }
            FoFormula::Not(f) => f.collect_free(bound, out),
            FoFormula::Or(a, b) | FoFormula::And(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            FoFormula::Exists(v, f) | FoFormula::Forall(v, f) => {
                bound.push(v.clone());
                f.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn all_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            FoFormula::Pred(_, v) => {
                out.insert(v.clone());
            }
            FoFormula::Less(a, b) | FoFormula::Equal(a, b) => {
                out.insert(a.clone());
                out.insert(b.clone());
            }
            FoFormula::Exists(v, _) | FoFormula::Forall(v, _) => {
                out.insert(v.clone());
            }
            _ => {}
        });
        out
    }

    /// Predicate names, sorted.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let FoFormula::Pred(p, _) = f {
                out.insert(p.clone());
            }
        });
        out
    }

    fn visit(&self, f: &mut impl FnMut(&FoFormula)) {
        f(self);
        match self {
            FoFormula::Pred(..) | FoFormula::Less(..) | FoFormula::Equal(..) => {}
            FoFormula::Not(a) | FoFormula::Exists(_, a) | FoFormula::Forall(_, a) => a.visit(f),
            FoFormula::Or(a, b) | FoFormula::And(a, b) => {
                a.visit(f);
                b.visit(f);
            }
        }
    }

    /// AST size: an atom counts its symbol and variables, a quantifier its
    /// bound variable.
    pub fn size(&self) -> usize {
        match self {
            FoFormula::Pred(..) | FoFormula::Less(..) | FoFormula::Equal(..) => 3,
            FoFormula::Not(a) => 1 + a.size(),
            FoFormula::Or(a, b) | FoFormula::And(a, b) => 1 + a.size() + b.size(),
            FoFormula::Exists(_, a) | FoFormula::Forall(_, a) => 2 + a.size(),
        }
    }

    pub fn quantifier_depth(&self) -> usize {
        match self {
            FoFormula::Pred(..) | FoFormula::Less(..) | FoFormula::Equal(..) => 0,
            FoFormula::Not(a) => a.quantifier_depth(),
            FoFormula::Or(a, b) | FoFormula::And(a, b) => {
                a.quantifier_depth().max(b.quantifier_depth())
            }
            FoFormula::Exists(_, a) | FoFormula::Forall(_, a) => 1 + a.quantifier_depth(),
        }
    }

    /// Pushes quantifiers inward: `∃` over `∨` and `∀` over `∧`, and
    /// conjuncts (resp. disjuncts) not mentioning the bound variable are moved
    /// out of its scope. Vacuous quantifiers are dropped, which is sound over
    /// nonempty domains.
    pub fn miniscope(&self) -> FoFormula {
        match self {
            FoFormula::Pred(..) | FoFormula::Less(..) | FoFormula::Equal(..) => self.clone(),
            FoFormula::Not(a) => FoFormula::not(a.miniscope()),
            FoFormula::Or(a, b) => FoFormula::or(a.miniscope(), b.miniscope()),
            FoFormula::And(a, b) => FoFormula::and(a.miniscope(), b.miniscope()),
            FoFormula::Exists(v, a) => push_quantifier(true, v, a.miniscope()),
            FoFormula::Forall(v, a) => push_quantifier(false, v, a.miniscope()),
        }
    }

    /// Renames every bound variable to a fresh name that clashes with neither
    /// `avoid` nor any variable of the formula, so no quantifier shadows
    /// another or captures a free variable.
    pub fn rename_bound_apart(&self, avoid: &BTreeSet<Var>) -> FoFormula {
        let mut taken: BTreeSet<Var> = self.all_vars();
        taken.extend(avoid.iter().cloned());
        let mut counter = 0usize;
        self.rename_rec(&mut Vec::new(), &mut taken, &mut counter)
    }

    fn rename_rec(
        &self,
        env: &mut Vec<(Var, Var)>,
        taken: &mut BTreeSet<Var>,
        counter: &mut usize,
    ) -> FoFormula {
        let look = |v: &Var, env: &Vec<(Var, Var)>| {
            env.iter()
                .rev()
                .find(|(from, _)| from == v)
                .map(|(_, to)| to.clone())
                .unwrap_or_else(|| v.clone())
        };
        match self {
            FoFormula::Pred(p, v) => FoFormula::Pred(p.clone(), look(v, env)),
            FoFormula::Less(a, b) => FoFormula::Less(look(a, env), look(b, env)),
            FoFormula::Equal(a, b) => FoFormula::Equal(look(a, env), look(b, env)),
            FoFormula::Not(a) => FoFormula::not(a.rename_rec(env, taken, counter)),
            FoFormula::Or(a, b) => FoFormula::or(
                a.rename_rec(env, taken, counter),
                b.rename_rec(env, taken, counter),
            ),
            FoFormula::And(a, b) => FoFormula::and(
                a.rename_rec(env, taken, counter),
                b.rename_rec(env, taken, counter),
            ),
            FoFormula::Exists(v, a) | FoFormula::Forall(v, a) => {
                let fresh = loop {
                    *counter += 1;
                    let cand = Var::new(format!("v{counter}"));
                    if !taken.contains(&cand) {
                        taken.insert(cand.clone());
                        break cand;
                    }
                };
                env.push((v.clone(), fresh.clone()));
                let body = Box::new(a.rename_rec(env, taken, counter));
                env.pop();
                match self {
                    FoFormula::Exists(..) => FoFormula::Exists(fresh, body),
                    _ => FoFormula::Forall(fresh, body),
                }
            }
        }
    }
}

/// Operands of a chain of `∧` (`conj`) or `∨`.
fn flatten(f: &FoFormula, conj: bool, out: &mut Vec<FoFormula>) {
    match f {
        FoFormula::And(a, b) if conj => {
            flatten(a, conj, out);
            flatten(b, conj, out);
        }
        FoFormula::Or(a, b) if !conj => {
            flatten(a, conj, out);
            flatten(b, conj, out);
        }
        _ => out.push(f.clone()),
    }
}

fn join(items: Vec<FoFormula>, conj: bool) -> FoFormula {
    items
        .into_iter()
        .reduce(|a, b| if conj { FoFormula::and(a, b) } else { FoFormula::or(a, b) })
        .expect("nonempty")
}

/// `∃v body` (or `∀v body`) with `body` already miniscoped.
fn push_quantifier(exists: bool, v: &Var, body: FoFormula) -> FoFormula {
    if !body.free_vars().contains(v) {
        return body;
    }
    let wrap = |b: FoFormula| {
        if exists {
            FoFormula::Exists(v.clone(), Box::new(b))
        } else {
            FoFormula::Forall(v.clone(), Box::new(b))
        }
    };
    // the connective the quantifier distributes over, and the other one
    let mut parts = Vec::new();
    flatten(&body, !exists, &mut parts);
    if parts.len() > 1 {
        return join(
            parts.into_iter().map(|p| push_quantifier(exists, v, p)).collect(),
            !exists,
        );
    }
    let mut parts = Vec::new();
    flatten(&body, exists, &mut parts);
    let (with, without): (Vec<_>, Vec<_>) = parts.into_iter().partition(|p| p.free_vars().contains(v));
    if without.is_empty() {
        return wrap(body);
    }
    let mut out = without;
    out.push(push_quantifier(exists, v, join(with, exists)));
    join(out, exists)
}

impl fmt::Display for FoFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FoFormula::Pred(p, v) => write!(f, "{p}({v})"),
            FoFormula::Less(a, b) => write!(f, "{a} < {b}"),
            FoFormula::Equal(a, b) => write!(f, "{a} = {b}"),
            FoFormula::Not(a) => match **a {
                FoFormula::Less(..) | FoFormula::Equal(..) => write!(f, "!({a})"),
                _ => write!(f, "!{a}"),
            },
            FoFormula::Or(a, b) => write!(f, "({a} | {b})"),
            FoFormula::And(a, b) => write!(f, "({a} & {b})"),
            FoFormula::Exists(v, a) => write!(f, "(E {v}. {a})"),
            FoFormula::Forall(v, a) => write!(f, "(A {v}. {a})"),
        }
    }
}
