use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::formulas::{FoFormula, TlFormula, Var};

use super::{eval_fo, Assignment, Chain, TlEvaluator};

/// A point where the two formulas disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    /// Index of the chain in the checked sequence.
    pub chain_index: usize,
    pub chain: Chain,
    pub position: usize,
    pub fo_value: bool,
    pub tl_value: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass { chains: usize, points: usize },
    Fail(Counterexample),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass { .. })
    }
}

/// Checks `m, t |= fo[x := t]` iff `m, t |= tl` at every position of every
/// chain. On failure reports the first disagreement in chain order, then
/// position order, independent of how the work is scheduled.
pub fn check_equiv_fo_tl(
    fo: &FoFormula,
    x: &Var,
    tl: &TlFormula,
    chains: impl IntoIterator<Item = Chain>,
) -> Result<Verdict> {
    let free = fo.free_vars();
    if free.iter().any(|v| v != x) {
        return Err(Error::Arity {
            expected: 1,
            found: free,
        });
    }
    let chains: Vec<Chain> = chains.into_iter().collect();
    let first = chains
        .par_iter()
        .enumerate()
        .map(|(i, m)| first_disagreement(fo, x, tl, m).map(|r| r.map(|cx| (i, cx))))
        .find_map_first(|r| match r {
            Ok(None) => None,
            other => Some(other),
        });
    match first {
        None => Ok(Verdict::Pass {
            chains: chains.len(),
            points: chains.iter().map(Chain::size).sum(),
        }),
        Some(Err(e)) => Err(e),
        Some(Ok(Some((i, mut cx)))) => {
            cx.chain_index = i;
            Ok(Verdict::Fail(cx))
        }
        Some(Ok(None)) => unreachable!(),
    }
}

fn first_disagreement(
    fo: &FoFormula,
    x: &Var,
    tl: &TlFormula,
    m: &Chain,
) -> Result<Option<Counterexample>> {
    let row = TlEvaluator::new(m).row(tl);
    let mut a = Assignment::new();
    for (t, &tl_value) in row.iter().enumerate() {
        a.insert(x.clone(), t);
        let fo_value = eval_fo(m, &a, fo)?;
        if fo_value != tl_value {
            return Ok(Some(Counterexample {
                chain_index: 0,
                chain: m.clone(),
                position: t,
                fo_value,
                tl_value,
            }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::{parse_fo, parse_tl};
    use crate::semantics::enumerate_chains;

    #[test]
    fn diamond_passes() {
        let fo = parse_fo("E y.(y>x & Q(y))").unwrap();
        let tl = parse_tl("true U Q").unwrap();
        let v = check_equiv_fo_tl(&fo, &Var::from("x"), &tl, enumerate_chains(4, &["Q".into()]))
            .unwrap();
        // sum of n * 2^n for n = 0..=4
        assert_eq!(v, Verdict::Pass { chains: 31, points: 98 });
    }

    #[test]
    fn distinct_atoms_fail_at_first_point() {
        let fo = parse_fo("P(x)").unwrap();
        let tl = parse_tl("Q").unwrap();
        let m: Chain = "n=1; P=0; Q=".parse().unwrap();
        let v = check_equiv_fo_tl(&fo, &Var::from("x"), &tl, [m.clone()]).unwrap();
        assert_eq!(
            v,
            Verdict::Fail(Counterexample {
                chain_index: 0,
                chain: m,
                position: 0,
                fo_value: true,
                tl_value: false
            })
        );
    }

    #[test]
    fn identical_atom_passes() {
        let fo = parse_fo("P(x)").unwrap();
        let tl = parse_tl("P").unwrap();
        let v = check_equiv_fo_tl(&fo, &Var::from("x"), &tl, enumerate_chains(3, &["P".into()]))
            .unwrap();
        assert!(v.is_pass());
    }

    #[test]
    fn rejects_other_free_variables() {
        let fo = parse_fo("P(y)").unwrap();
        let tl = parse_tl("P").unwrap();
        assert!(matches!(
            check_equiv_fo_tl(&fo, &Var::from("x"), &tl, enumerate_chains(1, &[])),
            Err(Error::Arity { .. })
        ));
    }
}
