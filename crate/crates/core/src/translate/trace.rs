use std::fmt;

/// One pass of the structural induction, or the final emission.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEntry {
    pub step: usize,
    /// `atomic`, `or`, `and`, `not`, `exists` or `emit`.
    pub pass: &'static str,
    /// Size of the input: FO nodes for `atomic`, otherwise the total label
    /// size of the operand normal forms.
    pub input_size: u64,
    /// Total label size of the result, or the TL size for `emit`.
    pub output_size: u64,
    /// Disjuncts in the result (1 for `emit`).
    pub disjuncts: usize,
    /// Running total of `disjuncts` over this and all earlier steps.
    pub cumulative_disjuncts: usize,
}

/// Append-only log of a translation, in the order the passes ran.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TranslationTrace {
    entries: Vec<TraceEntry>,
}

impl TranslationTrace {
    pub fn entries(&self) -> &[TraceEntry] {
        &self.entries
    }

    pub fn passes(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.pass).collect()
    }

    pub(crate) fn record(&mut self, pass: &'static str, input_size: u64, output_size: u64, disjuncts: usize) {
        let cumulative = self.entries.last().map_or(0, |e| e.cumulative_disjuncts) + disjuncts;
        self.entries.push(TraceEntry {
            step: self.entries.len(),
            pass,
            input_size,
            output_size,
            disjuncts,
            cumulative_disjuncts: cumulative,
        });
    }

    /// Largest disjunct count seen for each pass name, in first-seen order.
    pub fn max_disjuncts_per_pass(&self) -> Vec<(&'static str, usize)> {
        let mut out: Vec<(&'static str, usize)> = Vec::new();
        for e in &self.entries {
            match out.iter_mut().find(|(p, _)| *p == e.pass) {
                Some((_, m)) => *m = (*m).max(e.disjuncts),
                None => out.push((e.pass, e.disjuncts)),
            }
        }
        out
    }
}

/// A fixed-width table, one row per entry.
impl fmt::Display for TranslationTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:>4}  {:<7} {:>12} {:>12} {:>9} {:>10}",
            "step", "pass", "in-size", "out-size", "disjuncts", "cumulative"
        )?;
        for e in &self.entries {
            writeln!(
                f,
                "{:>4}  {:<7} {:>12} {:>12} {:>9} {:>10}",
                e.step, e.pass, e.input_size, e.output_size, e.disjuncts, e.cumulative_disjuncts
            )?;
        }
        Ok(())
    }
}
