//! Seeded random formulas for randomized testing.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::formulas::{FoFormula, TlFormula, Var, VariableOrder};
use crate::normal_form::EaFormula;

/// Shape limits for [`random_fo`].
#[derive(Clone, Debug)]
pub struct FoShape {
    pub atoms: Vec<String>,
    pub free: Var,
    pub max_quantifier_depth: usize,
    /// Bound on boolean connectives along any branch.
    pub max_depth: usize,
}

impl Default for FoShape {
    fn default() -> Self {
        FoShape {
            atoms: vec!["P".into(), "Q".into()],
            free: Var::from("x"),
            max_quantifier_depth: 3,
            max_depth: 6,
        }
    }
}

/// A formula whose only free variable is `shape.free`; draws until one is
/// found.
pub fn random_fo(rng: &mut impl Rng, shape: &FoShape) -> FoFormula {
    loop {
        let f = fo_rec(rng, shape, &[shape.free.clone()], shape.max_quantifier_depth, shape.max_depth);
        let free = f.free_vars();
        if free.len() == 1 && free.contains(&shape.free) {
            return f;
        }
    }
}

fn fo_rec(rng: &mut impl Rng, shape: &FoShape, vars: &[Var], qdepth: usize, depth: usize) -> FoFormula {
    let pick = |rng: &mut _| vars.choose(rng).expect("nonempty").clone();
    let atomic = depth == 0 || rng.gen_bool(0.25);
    if atomic {
        return match rng.gen_range(0..5) {
            0..=2 => FoFormula::Pred(shape.atoms.choose(rng).expect("atoms").clone(), pick(rng)),
            3 => FoFormula::Less(pick(rng), pick(rng)),
            _ => FoFormula::Equal(pick(rng), pick(rng)),
        };
    }
    let sub = |rng: &mut _, vars: &[Var], q| Box::new(fo_rec(rng, shape, vars, q, depth - 1));
    match rng.gen_range(0..if qdepth > 0 { 6 } else { 3 }) {
        0 => FoFormula::Not(sub(rng, vars, qdepth)),
        1 => FoFormula::And(sub(rng, vars, qdepth), sub(rng, vars, qdepth)),
        2 => FoFormula::Or(sub(rng, vars, qdepth), sub(rng, vars, qdepth)),
        k => {
            let v = Var::new(format!("y{}", vars.len()));
            let mut inner = vars.to_vec();
            inner.push(v.clone());
            let body = sub(rng, &inner, qdepth - 1);
            if k == 5 {
                FoFormula::Forall(v, body)
            } else {
                FoFormula::Exists(v, body)
            }
        }
    }
}

/// A temporal formula of nesting depth at most `depth` over `atoms`.
pub fn random_tl(rng: &mut impl Rng, atoms: &[String], depth: usize) -> TlFormula {
    if depth == 0 || rng.gen_bool(0.2) {
        return match rng.gen_range(0..5) {
            0 => TlFormula::tt(),
            _ => TlFormula::atom(atoms.choose(rng).expect("atoms")),
        };
    }
    let sub = |rng: &mut _| random_tl(rng, atoms, depth - 1);
    match rng.gen_range(0..6) {
        0 => TlFormula::not(sub(rng)),
        1 => TlFormula::and(sub(rng), sub(rng)),
        2 => TlFormula::or(sub(rng), sub(rng)),
        3 | 4 => TlFormula::until(sub(rng), sub(rng)),
        _ => TlFormula::since(sub(rng), sub(rng)),
    }
}

/// An EA formula with up to `max_points` points binding every variable of
/// `scope`, with labels drawn from `labels`.
pub fn random_ea(
    rng: &mut impl Rng,
    scope: &VariableOrder,
    max_points: usize,
    labels: &[TlFormula],
) -> EaFormula {
    let lo = usize::from(!scope.is_empty());
    let n = rng.gen_range(lo..=max_points.max(lo));
    let label = |rng: &mut _| labels.choose(rng).expect("labels").clone();
    let points = (0..n).map(|_| label(rng)).collect();
    let intervals = (0..=n).map(|_| label(rng)).collect();
    let bindings: BTreeMap<Var, usize> = scope
        .vars()
        .iter()
        .map(|v| (v.clone(), rng.gen_range(0..n)))
        .collect();
    EaFormula::new(points, intervals, bindings).expect("indices below n")
}
