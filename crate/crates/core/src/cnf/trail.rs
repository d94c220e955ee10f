use std::fmt;

use thiserror::Error;

use super::{Assignment, ClauseId, Literal, Model, Variable};

/// Why a trail entry was made.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reason {
    Decision,
    /// Implied by the clause that was unit under the preceding prefix.
    Implied(ClauseId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TrailEntry {
    pub literal: Literal,
    pub reason: Reason,
    /// Number of decisions among the entries up to and including this one.
    pub level: u32,
}

impl TrailEntry {
    pub fn var(&self) -> Variable {
        self.literal.var()
    }

    pub fn value(&self) -> bool {
        self.literal.polarity()
    }

    pub fn is_decision(&self) -> bool {
        self.reason == Reason::Decision
    }
}

/// Trace-log rendering: `D <var> <val>` or `I <var> <val> <reason>`.
impl fmt::Display for TrailEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let val = self.value() as u8;
        match self.reason {
            Reason::Decision => write!(f, "D {} {}", self.var(), val),
            Reason::Implied(c) => write!(f, "I {} {} {}", self.var(), val, c),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TrailError {
    #[error("variable {0} is already assigned")]
    AlreadyAssigned(Variable),
    #[error("variable {var} is outside 1..={num_vars}")]
    OutOfRange { var: Variable, num_vars: usize },
}

/// A state of the search: an ordered sequence of assignments to distinct
/// variables, some of them marked as decisions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trail {
    entries: Vec<TrailEntry>,
    values: Vec<Option<bool>>,
    levels: Vec<u32>,
}

impl Trail {
    pub fn new(num_vars: usize) -> Self {
        Trail {
            entries: Vec::new(),
            values: vec![None; num_vars],
            levels: vec![0; num_vars],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.values.len()
    }

    pub fn entries(&self) -> &[TrailEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.entries.len() == self.values.len()
    }

    /// Level of the last entry, i.e. the number of decisions on the trail.
    pub fn decision_level(&self) -> u32 {
        self.entries.last().map_or(0, |e| e.level)
    }

    pub fn level_of(&self, var: Variable) -> Option<u32> {
        self.value(var).map(|_| self.levels[var.slot()])
    }

    pub fn push_decision(&mut self, lit: Literal) -> Result<(), TrailError> {
        self.push(lit, Reason::Decision)
    }

    pub fn push_implied(&mut self, lit: Literal, reason: ClauseId) -> Result<(), TrailError> {
        self.push(lit, Reason::Implied(reason))
    }

    pub fn push(&mut self, lit: Literal, reason: Reason) -> Result<(), TrailError> {
        let var = lit.var();
        if var.slot() >= self.values.len() {
            return Err(TrailError::OutOfRange {
                var,
                num_vars: self.values.len(),
            });
        }
        if self.values[var.slot()].is_some() {
            return Err(TrailError::AlreadyAssigned(var));
        }
        let level = self.decision_level() + (reason == Reason::Decision) as u32;
        self.values[var.slot()] = Some(lit.polarity());
        self.levels[var.slot()] = level;
        self.entries.push(TrailEntry {
            literal: lit,
            reason,
            level,
        });
        Ok(())
    }

    pub fn pop(&mut self) -> Option<TrailEntry> {
        let e = self.entries.pop()?;
        self.values[e.var().slot()] = None;
        Some(e)
    }

    pub fn truncate(&mut self, len: usize) {
        while self.entries.len() > len {
            self.pop();
        }
    }

    pub fn clear(&mut self) {
        self.truncate(0);
    }

    pub fn decisions(&self) -> impl Iterator<Item = &TrailEntry> {
        self.entries.iter().filter(|e| e.is_decision())
    }

    pub fn unassigned(&self) -> impl Iterator<Item = Variable> + '_ {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_none())
            .map(|(i, _)| Variable::new(i as u32 + 1))
    }

    /// The total assignment, when every variable is set.
    pub fn to_model(&self) -> Option<Model> {
        self.values
            .iter()
            .copied()
            .collect::<Option<Vec<bool>>>()
            .map(Model::new)
    }
}

impl Assignment for Trail {
    #[inline]
    fn value(&self, var: Variable) -> Option<bool> {
        self.values.get(var.slot()).copied().flatten()
    }
}

impl fmt::Display for Trail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(f, "{}", e)?;
        }
        Ok(())
    }
}
