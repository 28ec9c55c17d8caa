use crate::error::{Error, Result};
use crate::formulas::{fold, TlFormula};
use crate::normal_form::{backward_chain, forward_chain, Dea, EaFormula};

use super::Translator;

/// `α_k ∧ (β_{k+1} U (α_{k+1} ∧ … (α_n ∧ G β_{n+1})))
///      ∧ (β_k S (α_{k-1} ∧ … (α_0 ∧ H β_0)))`
/// for the point `k` the free variable is bound to.
pub(crate) fn ea1_to_tl(e: &EaFormula) -> TlFormula {
    let k = *e
        .bindings()
        .values()
        .next()
        .expect("one-variable EA formula");
    fold::and_all([
        e.points()[k].clone(),
        forward_chain(e, k),
        backward_chain(e, k),
    ])
}

impl Translator {
    pub fn dea1_to_tl(&mut self, d: &Dea) -> Result<TlFormula> {
        if d.scope().len() != 1 {
            return Err(Error::Arity {
                expected: 1,
                found: d.scope().vars().iter().cloned().collect(),
            });
        }
        let mut parts: Vec<TlFormula> = d.disjuncts().iter().map(ea1_to_tl).collect();
        parts.sort();
        let out = fold::or_all(parts);
        self.check(out.size())?;
        Ok(out)
    }
}
