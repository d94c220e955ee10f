//! Absorption, 1-empowerment, entailment and beneficial rounds.
//!
//! A clause set `D` absorbs `C` at `x^a` when every inconclusive round
//! started with `D` that falsifies `C \ {x^a}` sets `x = a`. The production
//! test is the dual one: falsify `C \ {x^a}` by an assignment α, close
//! under unit propagation, and look for a conflict or `x = a`.

mod beneficial;
mod oracle;

pub use beneficial::beneficial_check;
pub use oracle::{absorbed_at_oracle, find_beneficial_round, BeneficialWitness, OracleAnswer};

use thiserror::Error;

use crate::cnf::{Assignment, Clause, ClauseSet, Literal, Trail};
use crate::solver::{unit_propagate, PropagationResult};

pub const ENTAILS_MAX_VARS: usize = 20;
pub const ORACLE_MAX_VARS: usize = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AbsorptionError {
    #[error("the clause is empty")]
    EmptyClause,
    #[error("literal {0} is not in the clause")]
    LiteralNotInClause(Literal),
    #[error("clause minus {0} contains a complementary pair; no assignment falsifies it")]
    IllDefinedAlpha(Literal),
    #[error("{n} variables exceed the limit of {limit} for exhaustive search")]
    UniverseTooLarge { n: usize, limit: usize },
    #[error("literal {literal} is outside the universe of {num_vars} variables")]
    VariableOutOfRange { literal: Literal, num_vars: usize },
    #[error("not a valid inconclusive round: {0}")]
    InvalidRound(String),
}

fn check_range(clause: &Clause, num_vars: usize) -> Result<(), AbsorptionError> {
    match clause.iter().find(|l| l.var().index() as usize > num_vars) {
        Some(literal) => Err(AbsorptionError::VariableOutOfRange { literal, num_vars }),
        None => Ok(()),
    }
}

/// `C \ {ℓ}` after validating the query.
pub(crate) fn rest_of(clause: &Clause, lit: Literal, num_vars: usize) -> Result<Clause, AbsorptionError> {
    if clause.is_empty() {
        return Err(AbsorptionError::EmptyClause);
    }
    if !clause.contains(lit) {
        return Err(AbsorptionError::LiteralNotInClause(lit));
    }
    check_range(clause, num_vars)?;
    let rest = clause.without(lit);
    if rest.is_tautology() {
        return Err(AbsorptionError::IllDefinedAlpha(lit));
    }
    Ok(rest)
}

/// Unit closure of the assignment falsifying `rest`.
fn close_alpha(db: &impl ClauseSet, rest: &Clause) -> (Trail, PropagationResult) {
    let mut trail = Trail::new(db.num_vars());
    for l in rest.iter() {
        trail.push_decision(!l).expect("rest is not tautological");
    }
    let result = unit_propagate(db.clauses(), &mut trail);
    (trail, result)
}

pub fn absorbed_at(db: &impl ClauseSet, clause: &Clause, lit: Literal) -> Result<bool, AbsorptionError> {
    let rest = rest_of(clause, lit, db.num_vars())?;
    let (trail, result) = close_alpha(db, &rest);
    Ok(match result {
        PropagationResult::Conflict(_) => true,
        PropagationResult::Fixpoint => trail.lit_value(lit) == Some(true),
    })
}

pub fn absorbed(db: &impl ClauseSet, clause: &Clause) -> Result<bool, AbsorptionError> {
    if clause.is_empty() {
        return Err(AbsorptionError::EmptyClause);
    }
    for l in clause.iter() {
        if !absorbed_at(db, clause, l)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether every total assignment satisfying `db` satisfies `clause`.
///
/// Only assignments that falsify `clause` are enumerated.
pub fn entails(db: &impl ClauseSet, clause: &Clause) -> Result<bool, AbsorptionError> {
    let n = db.num_vars();
    if n > ENTAILS_MAX_VARS {
        return Err(AbsorptionError::UniverseTooLarge { n, limit: ENTAILS_MAX_VARS });
    }
    check_range(clause, n)?;
    if clause.is_tautology() {
        return Ok(true);
    }
    let mut values = vec![false; n];
    let mut fixed = vec![false; n];
    for l in clause.iter() {
        values[l.var().slot()] = !l.polarity();
        fixed[l.var().slot()] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&i| !fixed[i]).collect();
    for mask in 0u64..(1u64 << free.len()) {
        for (bit, &slot) in free.iter().enumerate() {
            values[slot] = mask >> bit & 1 == 1;
        }
        let sat = db
            .clauses()
            .iter()
            .all(|c| c.iter().any(|l| values[l.var().slot()] == l.polarity()));
        if sat {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `D ⊨ C`, and unit propagation from α neither conflicts nor sets `x = a`.
pub fn empowering_at(db: &impl ClauseSet, clause: &Clause, lit: Literal) -> Result<bool, AbsorptionError> {
    let absorbed = absorbed_at(db, clause, lit)?;
    Ok(entails(db, clause)? && !absorbed)
}

/// For a clause not absorbed at `lit`: an inconclusive round that falsifies
/// `C \ {lit}` and leaves `lit` unsatisfied. Decisions falsify the literals
/// of `C \ {lit}` in order, each followed by propagation. `None` when the
/// clause is absorbed at `lit`.
pub fn absorption_witness(
    db: &impl ClauseSet,
    clause: &Clause,
    lit: Literal,
) -> Result<Option<Trail>, AbsorptionError> {
    if absorbed_at(db, clause, lit)? {
        return Ok(None);
    }
    let rest = rest_of(clause, lit, db.num_vars())?;
    let mut trail = Trail::new(db.num_vars());
    loop {
        let result = unit_propagate(db.clauses(), &mut trail);
        debug_assert_eq!(result, PropagationResult::Fixpoint);
        match rest.iter().find(|l| trail.lit_value(*l).is_none()) {
            Some(l) => trail.push_decision(!l).expect("unassigned"),
            None => break,
        }
    }
    Ok(Some(trail))
}
