use crate::cnf::{Assignment, Clause, ClauseSet, Literal, Trail};
use crate::solver::{unit_propagate, validate_round, PropagationResult, RoundStatus};

use super::{rest_of, AbsorptionError};

/// Whether the inconclusive `round` falsifies `C \ {x^a}`, branches in it
/// (every decision is on one of its variables), leaves `x` unassigned, and
/// reaches a conflict once extended by the decision `x ≐ ā` followed by
/// unit propagation.
pub fn beneficial_check(
    db: &impl ClauseSet,
    clause: &Clause,
    lit: Literal,
    round: &Trail,
) -> Result<bool, AbsorptionError> {
    let rest = rest_of(clause, lit, db.num_vars())?;
    if round.num_vars() != db.num_vars() {
        return Err(AbsorptionError::InvalidRound(format!(
            "round is over {} variables, clause set over {}",
            round.num_vars(),
            db.num_vars()
        )));
    }
    match validate_round(db.clauses(), round) {
        Ok(RoundStatus::Inconclusive) => {}
        Ok(RoundStatus::Conclusive(id)) => {
            return Err(AbsorptionError::InvalidRound(format!("round is conclusive (clause {id} falsified)")))
        }
        Err(e) => return Err(AbsorptionError::InvalidRound(e.to_string())),
    }

    let falsifies = rest.iter().all(|l| round.lit_value(l) == Some(false));
    let branches = round.decisions().all(|d| rest.contains_var(d.var()));
    let leaves_x = round.value(lit.var()).is_none();
    if !(falsifies && branches && leaves_x) {
        return Ok(false);
    }
    let mut extended = round.clone();
    extended.push_decision(!lit).expect("x is unassigned");
    Ok(matches!(
        unit_propagate(db.clauses(), &mut extended),
        PropagationResult::Conflict(_)
    ))
}

#[cfg(test)]
mod tests {
    use super::super::tests::{c, d0, f4, lit};
    use super::*;
    use crate::solver::replay_decisions;

    fn round(db: &impl ClauseSet, decisions: &[i32]) -> Trail {
        let ds: Vec<_> = decisions.iter().map(|&l| lit(l)).collect();
        replay_decisions(db.clauses(), db.num_vars(), &ds).unwrap().0
    }

    #[test]
    fn f4_empty_round_is_beneficial_for_y() {
        let f = f4();
        assert_eq!(beneficial_check(&f, &c(&[2]), lit(2), &round(&f, &[])), Ok(true));
    }

    #[test]
    fn f4_round_deciding_x_is_not_a_round_to_check() {
        // x ≐ 1 forces y = 1 and falsifies x̄∨ȳ: conclusive
        let f = f4();
        let r = round(&f, &[1]);
        assert!(matches!(
            beneficial_check(&f, &c(&[2]), lit(2), &r),
            Err(AbsorptionError::InvalidRound(_))
        ));
    }

    #[test]
    fn d0_round_d_e_is_beneficial() {
        let f = d0();
        let r = round(&f, &[-4, -5]);
        assert_eq!(beneficial_check(&f, &c(&[-2, 4, 5]), lit(-2), &r), Ok(true));
    }

    #[test]
    fn deciding_outside_the_clause_is_not_branching_in_it() {
        let f = d0();
        let r = round(&f, &[-4, -5, 3]);
        assert_eq!(beneficial_check(&f, &c(&[-2, 4, 5]), lit(-2), &r), Ok(false));
    }

    #[test]
    fn other_failed_conditions() {
        let f = d0();
        // does not falsify e
        let r = round(&f, &[-4]);
        assert_eq!(beneficial_check(&f, &c(&[-2, 4, 5]), lit(-2), &r), Ok(false));
        // a ≐ 0 sets c = 1: x assigned
        let r = round(&f, &[-1]);
        assert_eq!(beneficial_check(&f, &c(&[1, 3]), lit(3), &r), Ok(false));
        // unfinished trail
        let mut t = Trail::new(5);
        t.push_decision(lit(-1)).unwrap();
        assert!(matches!(
            beneficial_check(&f, &c(&[-2, 4, 5]), lit(-2), &t),
            Err(AbsorptionError::InvalidRound(_))
        ));
    }
}
