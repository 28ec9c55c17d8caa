use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::formulas::{TlFormula, Var, VariableOrder};
use crate::normal_form::{Dea, EaFormula};

/// Left endpoint of every two-variable construction.
pub fn z0() -> Var {
    Var::from("z0")
}

/// Right endpoint of every two-variable construction.
pub fn z1() -> Var {
    Var::from("z1")
}

/// The scope `(z0, z1)`.
pub fn endpoints() -> VariableOrder {
    VariableOrder::new([z0(), z1()]).expect("distinct names")
}

/// `[α_0, β_1, α_1, …, β_n, α_n](z0, z1)`: `z0 = x_0 < x_1 < … < x_n = z1`
/// with `α_j` at `x_j` and `β_j` throughout `(x_{j-1}, x_j)`. For `n = 0` the
/// endpoints coincide.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntervalPattern {
    points: Vec<TlFormula>,
    intervals: Vec<TlFormula>,
}

impl IntervalPattern {
    pub fn new(points: Vec<TlFormula>, intervals: Vec<TlFormula>) -> Result<Self> {
        if points.len() != intervals.len() + 1 {
            return Err(Error::MalformedEa(format!(
                "an interval pattern with {} intervals needs {} points, got {}",
                intervals.len(),
                intervals.len() + 1,
                points.len()
            )));
        }
        Ok(IntervalPattern { points, intervals })
    }

    /// Builds a pattern from the alternating sequence `α_0, β_1, …, α_n`.
    pub fn from_alternating(items: Vec<TlFormula>) -> Result<Self> {
        if items.len() % 2 == 0 {
            return Err(Error::MalformedEa(format!(
                "an alternating pattern has odd length, got {}",
                items.len()
            )));
        }
        let mut points = Vec::new();
        let mut intervals = Vec::new();
        for (i, f) in items.into_iter().enumerate() {
            if i % 2 == 0 {
                points.push(f);
            } else {
                intervals.push(f);
            }
        }
        Ok(IntervalPattern { points, intervals })
    }

    pub fn points(&self) -> &[TlFormula] {
        &self.points
    }

    /// `β_1 … β_n`; index `j - 1` holds `β_j`.
    pub fn intervals(&self) -> &[TlFormula] {
        &self.intervals
    }

    /// `α_j`.
    pub(crate) fn alpha(&self, j: usize) -> &TlFormula {
        &self.points[j]
    }

    /// `β_j` for `1 <= j <= n`.
    pub(crate) fn beta(&self, j: usize) -> &TlFormula {
        &self.intervals[j - 1]
    }

    /// Number of intervals.
    pub fn n(&self) -> usize {
        self.intervals.len()
    }

    /// The sub-pattern from `x_i` to `x_j`.
    pub(crate) fn slice(&self, i: usize, j: usize) -> IntervalPattern {
        IntervalPattern {
            points: self.points[i..=j].to_vec(),
            intervals: self.intervals[i..j].to_vec(),
        }
    }

    /// Time reversal: reversed order, mirrored labels.
    pub fn mirror(&self) -> IntervalPattern {
        IntervalPattern {
            points: self.points.iter().rev().map(TlFormula::mirror).collect(),
            intervals: self.intervals.iter().rev().map(TlFormula::mirror).collect(),
        }
    }

    /// The pattern as an EA formula over `(z0, z1)` with `true` outside.
    pub fn to_ea(&self) -> EaFormula {
        let mut intervals = vec![TlFormula::tt()];
        intervals.extend(self.intervals.iter().cloned());
        intervals.push(TlFormula::tt());
        let bindings: BTreeMap<Var, usize> = [(z0(), 0), (z1(), self.n())].into_iter().collect();
        EaFormula::new(self.points.clone(), intervals, bindings).expect("well-formed pattern")
    }

    pub fn to_dea(&self) -> Dea {
        Dea::single(endpoints(), self.to_ea()).expect("scope is (z0, z1)")
    }
}

impl fmt::Display for IntervalPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}", self.points[0])?;
        for (b, a) in self.intervals.iter().zip(&self.points[1..]) {
            write!(f, ", {b}, {a}")?;
        }
        write!(f, "](z0, z1)")
    }
}

impl fmt::Debug for IntervalPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// An EA over `(z0, z1)` with inner labels given in alternating order and
/// `true` before `z0` and after `z1`.
pub(crate) fn between(items: Vec<TlFormula>) -> EaFormula {
    IntervalPattern::from_alternating(items)
        .expect("odd length")
        .to_ea()
}
