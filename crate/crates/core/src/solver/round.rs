use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cnf::{Assignment, Clause, ClauseId, ClauseSet, Literal, Model, Reason, Trail, TrailError};

use super::decide::random_decision;
use super::propagate::{status, ClauseStatus, Propagator};
use super::ClauseDb;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Default,
    Unit,
    Decision,
    Conflict,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RoundError {
    #[error("clause {clause} is falsified before trail entry {position}")]
    PrematureConflict { position: usize, clause: ClauseId },
    #[error("decision at trail entry {position} taken while clause {clause} is unit")]
    DecisionWithPendingUnit { position: usize, clause: ClauseId },
    #[error("reason {reason} of trail entry {position} is not unit on its literal")]
    ReasonNotUnit { position: usize, reason: ClauseId },
    #[error("trail ends while clause {0} is still unit")]
    Unfinished(ClauseId),
    #[error("decision at position {position} is invalid: {source}")]
    BadDecision { position: usize, source: TrailError },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RoundStatus {
    Conclusive(ClauseId),
    Inconclusive,
}

fn first_falsified_or_unit(clauses: &[Clause], trail: &Trail) -> (Option<ClauseId>, Option<ClauseId>) {
    let mut unit = None;
    for (i, c) in clauses.iter().enumerate() {
        match status(c, trail) {
            ClauseStatus::Falsified => return (Some(ClauseId(i)), unit),
            ClauseStatus::Unit(_) if unit.is_none() => unit = Some(ClauseId(i)),
            _ => {}
        }
    }
    (None, unit)
}

/// Checks that `trail` is a round started with `clauses`: decisions only at
/// unit-free states, every implied literal justified by a clause that was
/// unit under the preceding prefix, no clause falsified before the last
/// entry, and a final state that is either conflicting or unit-free.
///
/// Deliberately naive (full rescans at every step); it serves as an
/// independent check of the solver.
pub fn validate_round(clauses: &[Clause], trail: &Trail) -> Result<RoundStatus, RoundError> {
    let mut prefix = Trail::new(trail.num_vars());
    for (position, e) in trail.entries().iter().enumerate() {
        let (falsified, unit) = first_falsified_or_unit(clauses, &prefix);
        if let Some(clause) = falsified {
            return Err(RoundError::PrematureConflict { position, clause });
        }
        match e.reason {
            Reason::Decision => {
                if let Some(clause) = unit {
                    return Err(RoundError::DecisionWithPendingUnit { position, clause });
                }
            }
            Reason::Implied(reason) => {
                let ok = clauses
                    .get(reason.0)
                    .is_some_and(|c| status(c, &prefix) == ClauseStatus::Unit(e.literal));
                if !ok {
                    return Err(RoundError::ReasonNotUnit { position, reason });
                }
            }
        }
        prefix
            .push(e.literal, e.reason)
            .map_err(|source| RoundError::BadDecision { position, source })?;
    }
    match first_falsified_or_unit(clauses, trail) {
        (Some(id), _) => Ok(RoundStatus::Conclusive(id)),
        (None, Some(id)) => Err(RoundError::Unfinished(id)),
        (None, None) => Ok(RoundStatus::Inconclusive),
    }
}

/// Builds the round that takes `decisions` in order, each followed by unit
/// propagation. Returns the trail and the falsified clause if the round
/// became conclusive (remaining decisions are then ignored).
pub fn replay_decisions(
    clauses: &[Clause],
    num_vars: usize,
    decisions: &[Literal],
) -> Result<(Trail, Option<ClauseId>), RoundError> {
    let mut trail = Trail::new(num_vars);
    let mut p = Propagator::new(num_vars, clauses);
    if let Some(id) = p.rescan(clauses, &trail, None).or_else(|| p.propagate(clauses, &mut trail)) {
        return Ok((trail, Some(id)));
    }
    for (position, &lit) in decisions.iter().enumerate() {
        if trail.value(lit.var()).is_some() {
            return Err(RoundError::BadDecision {
                position,
                source: TrailError::AlreadyAssigned(lit.var()),
            });
        }
        if let Some(id) = p
            .assign(clauses, &mut trail, lit, Reason::Decision)
            .or_else(|| p.propagate(clauses, &mut trail))
        {
            return Ok((trail, Some(id)));
        }
    }
    Ok((trail, None))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RoundOutcome {
    Conclusive(ClauseId),
    InconclusiveComplete(Model),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundTrace {
    pub trail: Trail,
    pub outcome: RoundOutcome,
    pub modes: Vec<Mode>,
}

/// One complete round from the empty state with random decisions and no
/// learning.
pub fn run_complete_round(db: &ClauseDb, rng: &mut ChaCha8Rng) -> RoundTrace {
    let clauses = db.clauses();
    let mut trail = Trail::new(db.num_vars());
    let mut p = Propagator::new(db.num_vars(), clauses);
    let mut modes = vec![Mode::Default];
    let mut conflict = p.rescan(clauses, &trail, None);
    loop {
        if conflict.is_none() {
            let before = trail.len();
            conflict = p.propagate(clauses, &mut trail);
            modes.extend(std::iter::repeat_n(Mode::Unit, trail.len() - before));
        }
        if let Some(id) = conflict {
            modes.push(Mode::Conflict);
            return RoundTrace {
                trail,
                outcome: RoundOutcome::Conclusive(id),
                modes,
            };
        }
        if let Some(model) = trail.to_model() {
            return RoundTrace {
                trail,
                outcome: RoundOutcome::InconclusiveComplete(model),
                modes,
            };
        }
        let lit = random_decision(&trail, rng).expect("trail is incomplete");
        modes.push(Mode::Decision);
        conflict = p.assign(clauses, &mut trail, lit, Reason::Decision);
    }
}
