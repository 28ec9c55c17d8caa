//! Existential normal forms: EA formulas, their disjunctions, and the
//! closure constructions (conjunction, projection, splitting, embedding).

mod dea;
mod ea;
mod simplify;

pub use dea::{
    conjoin, disjoin, ea_and, ea_exists, ea_split_pairs, embed, eval_dea, eval_dea_with, merge_ea,
    top_dea, Dea,
};
pub use ea::{eval_ea, eval_ea_with, EaFormula};
pub use simplify::simplify;
#[allow(unused_imports)]
pub(crate) use simplify::{backward_chain, forward_chain};
