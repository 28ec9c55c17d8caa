use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::formulas::{TlFormula, Var};
use crate::semantics::{Assignment, Chain, TlEvaluator};

/// One existential block over the canonical expansion:
///
/// ```text
/// ∃ x_0 < … < x_n .  ⋀ z_k = x_{i_k}
///                  ∧ ⋀ α_j(x_j)
///                  ∧ ⋀ ∀y ∈ (x_{j-1}, x_j). β_j(y)
///                  ∧ ∀y < x_0. β_0(y) ∧ ∀y > x_n. β_{n+1}(y)
/// ```
///
/// Labels are arbitrary temporal formulas; in the canonical expansion every
/// temporal formula is an atomic predicate.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EaFormula {
    points: Vec<TlFormula>,
    intervals: Vec<TlFormula>,
    bindings: BTreeMap<Var, usize>,
}

impl EaFormula {
    pub fn new(
        points: Vec<TlFormula>,
        intervals: Vec<TlFormula>,
        bindings: BTreeMap<Var, usize>,
    ) -> Result<Self> {
        if intervals.len() != points.len() + 1 {
            return Err(Error::MalformedEa(format!(
                "{} points need {} interval labels, got {}",
                points.len(),
                points.len() + 1,
                intervals.len()
            )));
        }
        if let Some((v, i)) = bindings.iter().find(|(_, i)| **i >= points.len()) {
            return Err(Error::MalformedEa(format!(
                "`{v}` is bound to point {i} of {}",
                points.len()
            )));
        }
        Ok(EaFormula {
            points,
            intervals,
            bindings,
        })
    }

    pub(crate) fn raw(
        points: Vec<TlFormula>,
        intervals: Vec<TlFormula>,
        bindings: BTreeMap<Var, usize>,
    ) -> Self {
        debug_assert_eq!(intervals.len(), points.len() + 1);
        debug_assert!(bindings.values().all(|i| *i < points.len()));
        EaFormula {
            points,
            intervals,
            bindings,
        }
    }

    /// Points labeled `points`, all interval labels `true`, variables bound as
    /// given.
    pub fn points_only(points: Vec<TlFormula>, bindings: &[(&Var, usize)]) -> Result<Self> {
        let intervals = vec![TlFormula::tt(); points.len() + 1];
        EaFormula::new(
            points,
            intervals,
            bindings.iter().map(|(v, i)| ((*v).clone(), *i)).collect(),
        )
    }

    pub fn points(&self) -> &[TlFormula] {
        &self.points
    }

    pub fn intervals(&self) -> &[TlFormula] {
        &self.intervals
    }

    pub fn bindings(&self) -> &BTreeMap<Var, usize> {
        &self.bindings
    }

    /// Number of existential points, `n + 1`.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Sum of label sizes.
    pub fn weight(&self) -> u64 {
        self.points
            .iter()
            .chain(self.intervals.iter())
            .fold(0u64, |acc, l| acc.saturating_add(l.size()))
    }

    /// Sorted distinct point indices carrying at least one variable.
    pub fn bound_points(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = self.bindings.values().copied().collect();
        idx.sort_unstable();
        idx.dedup();
        idx
    }

    /// Variables bound to point `i`.
    pub fn vars_at(&self, i: usize) -> Vec<Var> {
        self.bindings
            .iter()
            .filter(|(_, j)| **j == i)
            .map(|(v, _)| v.clone())
            .collect()
    }

    pub fn rename(&self, map: &BTreeMap<Var, Var>) -> EaFormula {
        EaFormula {
            points: self.points.clone(),
            intervals: self.intervals.clone(),
            bindings: self
                .bindings
                .iter()
                .map(|(v, i)| (map.get(v).cloned().unwrap_or_else(|| v.clone()), *i))
                .collect(),
        }
    }

    /// The time-reversed formula: points and intervals in reverse order with
    /// mirrored labels.
    pub fn mirror(&self) -> EaFormula {
        let n = self.points.len();
        EaFormula {
            points: self.points.iter().rev().map(TlFormula::mirror).collect(),
            intervals: self.intervals.iter().rev().map(TlFormula::mirror).collect(),
            bindings: self
                .bindings
                .iter()
                .map(|(v, i)| (v.clone(), n - 1 - i))
                .collect(),
        }
    }
}

/// `[b0 | a0 | b1 | a1 | b2] @ {z0->0, z1->1}`
impl fmt::Display for EaFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}", self.intervals[0])?;
        for (a, b) in self.points.iter().zip(self.intervals[1..].iter()) {
            write!(f, " | {a} | {b}")?;
        }
        write!(f, "] @ {{")?;
        for (k, (v, i)) in self.bindings.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}->{i}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for EaFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.weight() <= 400 {
            write!(f, "{self}")
        } else {
            write!(f, "<EA with {} points, weight {}>", self.len(), self.weight())
        }
    }
}

/// Truth of `e` under `a`: is there a strictly increasing tuple of positions
/// meeting the bindings and all labels? Decided by dynamic programming over
/// (point index, position).
pub fn eval_ea(m: &Chain, a: &Assignment, e: &EaFormula) -> Result<bool> {
    eval_ea_with(&mut TlEvaluator::new(m), a, e)
}

pub fn eval_ea_with(ev: &mut TlEvaluator<'_>, a: &Assignment, e: &EaFormula) -> Result<bool> {
    let n = ev.chain().size();
    let mut fixed: Vec<Option<usize>> = vec![None; e.points.len()];
    for (v, &i) in &e.bindings {
        let p = *a.get(v).ok_or_else(|| Error::Unassigned(v.clone()))?;
        if p >= n {
            return Err(Error::PositionOutOfRange { position: p, size: n });
        }
        match fixed[i] {
            Some(q) if q != p => return Ok(false),
            _ => fixed[i] = Some(p),
        }
    }
    let beta: Vec<_> = e.intervals.iter().map(|b| ev.row(b)).collect();
    if e.points.is_empty() {
        return Ok(beta[0].iter().all(|v| *v));
    }
    let mut reach = vec![false; n];
    // first position where beta_0 fails
    let before_ok = beta[0].iter().position(|v| !v).unwrap_or(n);
    for (j, label) in e.points.iter().enumerate() {
        let alpha = ev.row(label);
        let mut next = vec![false; n];
        for p in 0..n {
            if !alpha[p] || fixed[j].is_some_and(|q| q != p) {
                continue;
            }
            next[p] = if j == 0 {
                p <= before_ok
            } else {
                let b = &beta[j];
                let mut ok = false;
                // walk q down from p-1; (q, p) must be covered by beta_j
                let mut q = p;
                while q > 0 {
                    q -= 1;
                    if reach[q] {
                        ok = true;
                        break;
                    }
                    if !b[q] {
                        break;
                    }
                }
                ok
            };
        }
        reach = next;
    }
    let after = &beta[e.points.len()];
    Ok((0..n).any(|p| reach[p] && after[p + 1..].iter().all(|v| *v)))
}
