//! Syntax of the two logics: first-order monadic logic of order ([`FoFormula`])
//! and temporal logic with strict Until and Since ([`TlFormula`]), together with
//! their concrete grammar.

mod fo;
mod parse;
mod tl;

use std::fmt;

pub use fo::FoFormula;
pub use parse::{parse_fo, parse_tl};
pub use tl::{fold, TlFormula, TlKind};

use crate::error::{Error, Result};

/// A first-order variable name.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(String);

impl Var {
    pub fn new(name: impl Into<String>) -> Self {
        Var(name.into())
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<&str> for Var {
    fn from(s: &str) -> Self {
        Var(s.to_string())
    }
}

/// An ordered list of distinct variables, `z_0, ..., z_m`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VariableOrder(Vec<Var>);

impl VariableOrder {
    pub fn new(vars: impl IntoIterator<Item = Var>) -> Result<Self> {
        let vars: Vec<Var> = vars.into_iter().collect();
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::DuplicateVariable(v.clone()));
            }
        }
        Ok(VariableOrder(vars))
    }

    pub fn empty() -> Self {
        VariableOrder(Vec::new())
    }

    pub fn vars(&self) -> &[Var] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: &Var) -> bool {
        self.0.contains(v)
    }

    /// Same variables, regardless of order.
    pub fn same_set(&self, other: &VariableOrder) -> bool {
        self.len() == other.len() && self.0.iter().all(|v| other.contains(v))
    }

    pub fn is_subset_of(&self, other: &VariableOrder) -> bool {
        self.0.iter().all(|v| other.contains(v))
    }

    /// `self` followed by the variables of `other` not already present.
    pub fn union(&self, other: &VariableOrder) -> VariableOrder {
        let mut vars = self.0.clone();
        for v in &other.0 {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        VariableOrder(vars)
    }

    pub fn without(&self, v: &Var) -> VariableOrder {
        VariableOrder(self.0.iter().filter(|w| *w != v).cloned().collect())
    }

    pub fn difference(&self, other: &VariableOrder) -> VariableOrder {
        VariableOrder(
            self.0
                .iter()
                .filter(|w| !other.contains(w))
                .cloned()
                .collect(),
        )
    }
}

impl fmt::Display for VariableOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for VariableOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<'a> FromIterator<&'a str> for VariableOrder {
    /// Panics on duplicates; intended for literals in tests and examples.
    fn from_iter<I: IntoIterator<Item = &'a str>>(iter: I) -> Self {
        VariableOrder::new(iter.into_iter().map(Var::from)).expect("duplicate variable")
    }
}
