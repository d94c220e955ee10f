use thiserror::Error;

use crate::cnf::{Assignment, Clause, ClauseId, Reason, Restriction, Trail, restrict_clause};
use crate::resolution::resolve_on;

use super::Scheme;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("clause {0} is not in the database")]
    UnknownClause(ClauseId),
    #[error("conflict clause {0} is not falsified by the trail")]
    ConflictNotFalsified(ClauseId),
    #[error("reason {reason} of trail entry {position} was not unit on its literal")]
    ReasonNotUnit { position: usize, reason: ClauseId },
}

/// Conflict clauses `A_{r+1}, …, A_1` of a conclusive trail and the clause
/// chosen by the learning scheme.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConflictAnalysis {
    /// `annotations[i]` is `A_{i+1}`; the last element is the falsified clause.
    pub annotations: Vec<Clause>,
    pub conflict: ClauseId,
    pub scheme: Scheme,
    /// `learned == A_{learned_index}`.
    pub learned_index: usize,
    pub learned: Clause,
}

impl ConflictAnalysis {
    /// `A_i` for `1 ≤ i ≤ r + 1`.
    pub fn annotation(&self, i: usize) -> &Clause {
        &self.annotations[i - 1]
    }
}

/// Variables of `clause` assigned at the trail's current decision level.
pub fn vars_at_max_level(clause: &Clause, trail: &Trail) -> usize {
    let d = trail.decision_level();
    clause
        .variables()
        .filter(|&v| trail.level_of(v) == Some(d))
        .count()
}

/// Exactly one variable of the maximal decision level.
pub fn is_asserting(clause: &Clause, trail: &Trail) -> bool {
    vars_at_max_level(clause, trail) == 1
}

/// Builds the conflict clauses by reverse induction over the trail: a
/// decision leaves the clause unchanged, an implied assignment resolves it
/// with the recorded reason when the two clash on the assigned variable.
///
/// DECISION learns `A_1`; FIRST_UIP learns the asserting `A_i` with the
/// largest `i ≤ r`. A conflict with no decisions on the trail learns `A_1`,
/// which is then the empty clause.
pub fn analyze_conflict(
    clauses: &[Clause],
    trail: &Trail,
    conflict: ClauseId,
    scheme: Scheme,
) -> Result<ConflictAnalysis, AnalysisError> {
    let falsified = clauses.get(conflict.0).ok_or(AnalysisError::UnknownClause(conflict))?;
    if restrict_clause(falsified, trail) != Restriction::Residual(Clause::empty()) {
        return Err(AnalysisError::ConflictNotFalsified(conflict));
    }

    let entries = trail.entries();
    let r = entries.len();
    let mut position = vec![usize::MAX; trail.num_vars()];
    for (i, e) in entries.iter().enumerate() {
        position[e.var().slot()] = i;
    }

    let mut annotations = vec![Clause::empty(); r + 1];
    annotations[r] = falsified.clone();
    for i in (0..r).rev() {
        let entry = entries[i];
        let next = &annotations[i + 1];
        annotations[i] = match entry.reason {
            Reason::Decision => next.clone(),
            Reason::Implied(rid) => {
                let reason = clauses.get(rid.0).ok_or(AnalysisError::UnknownClause(rid))?;
                let unit_before = reason.contains(entry.literal)
                    && reason.iter().filter(|&l| l != entry.literal).all(|l| {
                        trail.lit_value(l) == Some(false) && position[l.var().slot()] < i
                    });
                if !unit_before {
                    return Err(AnalysisError::ReasonNotUnit { position: i, reason: rid });
                }
                if next.contains(!entry.literal) {
                    resolve_on(reason, next, entry.literal).expect("clash checked above")
                } else {
                    next.clone()
                }
            }
        };
    }

    let learned_index = if trail.decision_level() == 0 {
        1
    } else {
        match scheme {
            Scheme::Decision => 1,
            Scheme::FirstUip => (1..=r)
                .rev()
                .find(|&i| is_asserting(&annotations[i - 1], trail))
                .unwrap_or(1),
        }
    };
    Ok(ConflictAnalysis {
        learned: annotations[learned_index - 1].clone(),
        annotations,
        conflict,
        scheme,
        learned_index,
    })
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BackjumpError {
    #[error("cannot backjump on the empty clause")]
    EmptyClause,
    #[error("learned clause is satisfied by the trail")]
    Satisfied,
}

/// Removes entries from the tail of the trail for as long as `learned`
/// stays falsified. Returns the number of entries removed.
///
/// A clause that is not falsified to begin with removes nothing.
pub fn backjump_after_learn(trail: &mut Trail, learned: &Clause) -> Result<usize, BackjumpError> {
    if learned.is_empty() {
        return Err(BackjumpError::EmptyClause);
    }
    let mut removed = 0;
    loop {
        match restrict_clause(learned, trail) {
            Restriction::Satisfied => return Err(BackjumpError::Satisfied),
            Restriction::Residual(r) if r.is_empty() => {
                trail.pop();
                removed += 1;
            }
            Restriction::Residual(_) => return Ok(removed),
        }
    }
}
