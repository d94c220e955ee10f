use std::collections::HashSet;

use thiserror::Error;

use crate::cnf::{Clause, ClauseId, ClauseSet, CnfFormula};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("clause {0} is already in the database")]
pub struct DuplicateClause(pub Clause);

/// The current clause set `D`: the input clauses followed by learned ones.
///
/// Learned clauses are append-only and never removed.
#[derive(Debug, Clone)]
pub struct ClauseDb {
    num_vars: usize,
    clauses: Vec<Clause>,
    original_len: usize,
    index: HashSet<Clause>,
}

impl ClauseDb {
    pub fn new(formula: &CnfFormula) -> Self {
        let clauses = formula.clauses().to_vec();
        ClauseDb {
            num_vars: formula.num_vars(),
            index: clauses.iter().cloned().collect(),
            original_len: clauses.len(),
            clauses,
        }
    }

    pub fn original(&self) -> &[Clause] {
        &self.clauses[..self.original_len]
    }

    pub fn learned(&self) -> &[Clause] {
        &self.clauses[self.original_len..]
    }

    pub fn clause(&self, id: ClauseId) -> &Clause {
        &self.clauses[id.0]
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn contains(&self, clause: &Clause) -> bool {
        self.index.contains(clause)
    }

    pub fn add_learned(&mut self, clause: Clause) -> Result<ClauseId, DuplicateClause> {
        if self.index.contains(&clause) {
            return Err(DuplicateClause(clause));
        }
        self.index.insert(clause.clone());
        self.clauses.push(clause);
        Ok(ClauseId(self.clauses.len() - 1))
    }

    /// The current clause set as a formula (original and learned clauses).
    pub fn to_formula(&self) -> CnfFormula {
        CnfFormula::from_clauses(self.num_vars, self.clauses.iter().cloned())
            .expect("database clauses stay within the universe")
    }
}

impl ClauseSet for ClauseDb {
    fn num_vars(&self) -> usize {
        self.num_vars
    }

    fn clauses(&self) -> &[Clause] {
        &self.clauses
    }
}

impl From<&CnfFormula> for ClauseDb {
    fn from(f: &CnfFormula) -> Self {
        ClauseDb::new(f)
    }
}
