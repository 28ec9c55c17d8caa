use crate::error::{Error, Result};
use crate::formulas::{fold, FoFormula, TlFormula, Var, VariableOrder};
use crate::normal_form::{conjoin, disjoin, ea_exists, embed, simplify, top_dea, Dea, EaFormula};

use super::negate::atom_at;
use super::Translator;

impl Translator {
    pub fn fo_to_dea(&mut self, f: &FoFormula, anchor: &Var) -> Result<Dea> {
        let mut avoid = f.free_vars();
        avoid.insert(anchor.clone());
        let f = f.rename_bound_apart(&avoid).miniscope();
        let d = self.induct(&f, anchor)?;
        let mut target = vec![anchor.clone()];
        target.extend(f.free_vars().into_iter().filter(|v| v != anchor));
        embed(&d, &VariableOrder::new(target)?)
    }

    pub fn kamp(&mut self, f: &FoFormula) -> Result<TlFormula> {
        let free = f.free_vars();
        let x = match free.iter().next() {
            Some(x) if free.len() == 1 => x.clone(),
            _ => return Err(Error::Arity { expected: 1, found: free }),
        };
        self.trace = Default::default();
        let d = self.fo_to_dea(f, &x)?;
        let out = self.dea1_to_tl(&d)?;
        self.trace.record("emit", d.weight(), out.size(), 1);
        Ok(out)
    }

    /// Post-order structural induction. The result's scope is the free
    /// variables of `f`, plus `anchor` when `f` has a closed subformula that
    /// had to be pinned to a point.
    fn induct(&mut self, f: &FoFormula, anchor: &Var) -> Result<Dea> {
        let tt = TlFormula::tt;
        let (pass, input, d) = match f {
            FoFormula::Pred(p, v) => ("atomic", f.size() as u64, atom_at(v, TlFormula::atom(p))),
            FoFormula::Less(a, b) if a == b => ("atomic", f.size() as u64, Dea::falsum(scope_of(&[a]))),
            FoFormula::Less(a, b) => {
                let e = EaFormula::points_only(vec![tt(), tt()], &[(a, 0), (b, 1)])?;
                ("atomic", f.size() as u64, Dea::single(scope_of(&[a, b]), e)?)
            }
            FoFormula::Equal(a, b) if a == b => ("atomic", f.size() as u64, top_dea(&scope_of(&[a]))),
            FoFormula::Equal(a, b) => {
                let e = EaFormula::points_only(vec![tt()], &[(a, 0), (b, 0)])?;
                ("atomic", f.size() as u64, Dea::single(scope_of(&[a, b]), e)?)
            }
            FoFormula::Not(g) => {
                let dg = self.induct(g, anchor)?;
                ("not", dg.weight(), self.neg_dea(&dg)?)
            }
            FoFormula::Or(g, h) => {
                let (dg, dh) = (self.induct(g, anchor)?, self.induct(h, anchor)?);
                ("or", dg.weight() + dh.weight(), disjoin(&dg, &dh))
            }
            FoFormula::And(g, h) => {
                let (dg, dh) = (self.induct(g, anchor)?, self.induct(h, anchor)?);
                self.check_product(&dg, &dh)?;
                ("and", dg.weight() + dh.weight(), conjoin(&dg, &dh))
            }
            FoFormula::Exists(v, g) => {
                let dg = self.induct(g, anchor)?;
                let w = dg.weight();
                if !dg.scope().contains(v) {
                    ("exists", w, dg)
                } else if dg.scope().len() == 1 {
                    // a sentence: true at the anchor iff its witness exists
                    // somewhere, before, at or after the anchor
                    let a = self.dea1_to_tl(&dg)?;
                    let somewhere = fold::or_all([
                        a.clone(),
                        fold::until(tt(), a.clone()),
                        fold::since(tt(), a),
                    ]);
                    ("exists", w, atom_at(anchor, somewhere))
                } else {
                    ("exists", w, ea_exists(v, &dg)?)
                }
            }
            FoFormula::Forall(v, g) => {
                let rewritten = FoFormula::Not(Box::new(FoFormula::Exists(
                    v.clone(),
                    Box::new(FoFormula::Not(g.clone())),
                )));
                return self.induct(&rewritten, anchor);
            }
        };
        let mut d = simplify(&d);
        if d.scope().len() == 1 && !is_single_atom(&d) {
            let a = self.dea1_to_tl(&d)?;
            d = atom_at(&d.scope().vars()[0], a);
        }
        self.check_dea(&d)?;
        self.trace.record(pass, input, d.weight(), d.len());
        Ok(d)
    }
}

fn scope_of(vs: &[&Var]) -> VariableOrder {
    VariableOrder::new(vs.iter().map(|v| (*v).clone())).expect("distinct variables")
}

fn is_single_atom(d: &Dea) -> bool {
    match d.disjuncts() {
        [e] => e.len() == 1 && e.intervals().iter().all(TlFormula::is_true),
        _ => false,
    }
}
