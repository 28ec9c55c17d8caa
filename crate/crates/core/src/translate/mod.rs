//! The translation pipeline: emission of one-variable normal forms as
//! temporal formulas, negation of interval patterns, negation of normal
//! forms, and the structural induction over first-order formulas.
//!
//! The free functions run on a fresh unbounded [`Translator`]; use a
//! translator directly to share memo tables between calls or to impose a
//! size budget.

mod emit;
mod induction;
mod interval;
mod negate;
mod pattern;
mod trace;

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::formulas::{FoFormula, TlFormula, Var};
use crate::normal_form::{Dea, EaFormula};

pub use pattern::{endpoints, z0, z1, IntervalPattern};
pub use trace::{TraceEntry, TranslationTrace};

/// Translation state: memo tables for the pattern constructions, an optional
/// budget on the total label size of intermediate normal forms and of the
/// output, and the trace of the current run.
#[derive(Default)]
pub struct Translator {
    budget: Option<u64>,
    oc_memo: HashMap<Vec<TlFormula>, Dea>,
    nebl_memo: HashMap<IntervalPattern, Dea>,
    neg_interval_memo: HashMap<IntervalPattern, Dea>,
    trace: TranslationTrace,
}

impl Translator {
    pub fn new() -> Self {
        Translator::default()
    }

    pub fn with_budget(budget: u64) -> Self {
        Translator {
            budget: Some(budget),
            ..Translator::default()
        }
    }

    pub fn budget(&self) -> Option<u64> {
        self.budget
    }

    pub fn trace(&self) -> &TranslationTrace {
        &self.trace
    }

    pub(crate) fn check(&self, reached: u64) -> Result<()> {
        match self.budget {
            Some(budget) if reached > budget => Err(Error::BudgetExceeded { budget, reached }),
            _ => Ok(()),
        }
    }

    pub(crate) fn check_dea(&self, d: &Dea) -> Result<()> {
        self.check(d.weight())
    }

    /// Guards a product construction before it is built.
    pub(crate) fn check_product(&self, a: &Dea, b: &Dea) -> Result<()> {
        self.check((a.len() as u64).saturating_mul(b.len() as u64))
    }
}

/// The temporal formula equivalent to a normal form with one free variable.
pub fn dea1_to_tl(d: &Dea) -> Result<TlFormula> {
    Translator::new().dea1_to_tl(d)
}

/// No increasing sequence `x_1 < … < x_n` in `(z0, z1)` with `P_i(x_i)`.
pub fn oc(preds: &[TlFormula]) -> Result<Dea> {
    Translator::new().oc(preds)
}

/// `z0 < r < z1`, `p` nowhere on `(z0, r)`, and `p ∨ K⁺p` at `r`.
pub fn inf_pattern(p: &TlFormula) -> Dea {
    interval::inf_pattern(p)
}

/// `¬∃z ∈ (z0, z1). pat(z0, z)`, assuming `z0 < z1`.
pub fn neg_exists_between_left(pat: &IntervalPattern) -> Result<Dea> {
    Translator::new().nebl(pat)
}

/// `¬∃z ∈ (z0, z1). pat(z, z1)`, assuming `z0 < z1`.
pub fn neg_exists_between_right(pat: &IntervalPattern) -> Result<Dea> {
    Translator::new().nebr(pat)
}

/// `z0 < z1 ∧ ¬pat(z0, z1)`.
pub fn neg_interval(pat: &IntervalPattern) -> Result<Dea> {
    Translator::new().neg_interval(pat)
}

/// The three case conditions over `(z0, z1)` for a pattern with at least one
/// interval; on `z0 < z1` at least one of them holds.
pub fn interval_cases(pat: &IntervalPattern) -> Result<[Dea; 3]> {
    interval::interval_cases(pat)
}

/// The complement of an EA formula with one or two free variables.
pub fn neg_ea2(e: &EaFormula) -> Result<Dea> {
    Translator::new().neg_ea2(e)
}

/// The complement of a normal form, over the same scope.
pub fn neg_dea(d: &Dea) -> Result<Dea> {
    Translator::new().neg_dea(d)
}

/// A normal form equivalent to `f` over the scope `free_vars(f) ∪ {anchor}`.
pub fn fo_to_dea(f: &FoFormula, anchor: &Var) -> Result<Dea> {
    Translator::new().fo_to_dea(f, anchor)
}

/// The temporal formula equivalent to `f`, which must have exactly one free
/// variable.
pub fn kamp(f: &FoFormula) -> Result<TlFormula> {
    Translator::new().kamp(f)
}

pub fn translate_with_trace(f: &FoFormula) -> Result<(TlFormula, TranslationTrace)> {
    let mut t = Translator::new();
    let out = t.kamp(f)?;
    Ok((out, t.trace))
}
