//! Finite chains and brute-force evaluators for both logics. Finite linear
//! orders are Dedekind complete, so these evaluators are the ground truth the
//! translation is checked against.

mod chain;
mod equiv;
mod eval;

pub use chain::{chain_count, enumerate_chains, random_chain, random_chains, Chain, Density};
pub use equiv::{check_equiv_fo_tl, Counterexample, Verdict};
pub use eval::{eval_fo, eval_tl, eval_tl_all, Assignment, TlEvaluator};
