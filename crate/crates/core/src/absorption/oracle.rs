//! Exhaustive round enumeration, independent of the solver's propagation.
//!
//! A round is determined by its decisions: after each one the unit closure
//! is unique, so exploring every decision sequence taken at unit-free states
//! visits every inconclusive round. States are memoised on the assignment,
//! since everything reachable from a state depends only on what it assigns.

use std::collections::{HashSet, VecDeque};

use crate::cnf::{restrict_clause, Assignment, Clause, ClauseSet, Literal, PartialAssignment, Restriction, Variable};

use super::{rest_of, AbsorptionError, ORACLE_MAX_VARS};

/// Closes `state` under unit propagation by repeated full scans. Returns
/// `false` if some clause becomes falsified.
fn naive_close(clauses: &[Clause], state: &mut PartialAssignment) -> bool {
    'scan: loop {
        for c in clauses {
            if let Restriction::Residual(r) = restrict_clause(c, state) {
                match r.width() {
                    0 => return false,
                    1 => {
                        let l = r.literals()[0];
                        state.set(l.var(), l.polarity());
                        continue 'scan;
                    }
                    _ => {}
                }
            }
        }
        return true;
    }
}

fn extensions(state: &PartialAssignment, vars: &[Variable]) -> Vec<Literal> {
    vars.iter()
        .filter(|&&v| state.value(v).is_none())
        .flat_map(|&v| [v.lit(false), v.lit(true)])
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleAnswer {
    pub absorbed: bool,
    /// Decisions of a shortest inconclusive round falsifying `C \ {ℓ}`
    /// without satisfying `ℓ`, when one exists.
    pub witness: Option<Vec<Literal>>,
    pub states_explored: usize,
}

/// Absorption decided by quantifying over every inconclusive round.
pub fn absorbed_at_oracle(
    db: &impl ClauseSet,
    clause: &Clause,
    lit: Literal,
) -> Result<OracleAnswer, AbsorptionError> {
    let n = db.num_vars();
    if n > ORACLE_MAX_VARS {
        return Err(AbsorptionError::UniverseTooLarge { n, limit: ORACLE_MAX_VARS });
    }
    let rest = rest_of(clause, lit, n)?;
    let clauses = db.clauses();
    let all_vars: Vec<Variable> = (1..=n as u32).map(Variable::new).collect();

    let mut start = PartialAssignment::new(n);
    let mut answer = OracleAnswer {
        absorbed: true,
        witness: None,
        states_explored: 0,
    };
    if !naive_close(clauses, &mut start) {
        return Ok(answer);
    }
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([(start, Vec::new())]);
    while let Some((state, decisions)) = queue.pop_front() {
        answer.states_explored += 1;
        let falsifies = rest.iter().all(|l| state.lit_value(l) == Some(false));
        if falsifies && state.lit_value(lit) != Some(true) {
            answer.absorbed = false;
            answer.witness = Some(decisions);
            return Ok(answer);
        }
        for d in extensions(&state, &all_vars) {
            let mut next = state.clone();
            next.set(d.var(), d.polarity());
            if naive_close(clauses, &mut next) && seen.insert(next.clone()) {
                let mut ds = decisions.clone();
                ds.push(d);
                queue.push_back((next, ds));
            }
        }
    }
    Ok(answer)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BeneficialWitness {
    pub literal: Literal,
    pub decisions: Vec<Literal>,
}

/// Searches, literal by literal, for an inconclusive round that is
/// beneficial for `clause`. Only rounds branching in `C \ {ℓ}` qualify, so
/// decisions are restricted to its variables. Literals whose `C \ {ℓ}` is
/// tautological are skipped.
pub fn find_beneficial_round(
    db: &impl ClauseSet,
    clause: &Clause,
) -> Result<Option<BeneficialWitness>, AbsorptionError> {
    if clause.is_empty() {
        return Err(AbsorptionError::EmptyClause);
    }
    let n = db.num_vars();
    let clauses = db.clauses();
    for lit in clause.iter() {
        let rest = match rest_of(clause, lit, n) {
            Ok(r) => r,
            Err(AbsorptionError::IllDefinedAlpha(_)) => continue,
            Err(e) => return Err(e),
        };
        let vars: Vec<Variable> = rest.variables().collect();
        let mut start = PartialAssignment::new(n);
        if !naive_close(clauses, &mut start) {
            return Ok(None);
        }
        let mut seen = HashSet::new();
        seen.insert((start.clone(), Vec::<Literal>::new()));
        let mut queue = VecDeque::from([(start, Vec::new())]);
        while let Some((state, decisions)) = queue.pop_front() {
            let falsifies = rest.iter().all(|l| state.lit_value(l) == Some(false));
            if falsifies && state.value(lit.var()).is_none() {
                let mut extended = state.clone();
                extended.set(lit.var(), !lit.polarity());
                if !naive_close(clauses, &mut extended) {
                    return Ok(Some(BeneficialWitness { literal: lit, decisions }));
                }
            }
            for d in extensions(&state, &vars) {
                let mut next = state.clone();
                next.set(d.var(), d.polarity());
                if !naive_close(clauses, &mut next) {
                    continue;
                }
                let mut ds = decisions.clone();
                ds.push(d);
                let mut key = ds.clone();
                key.sort();
                if seen.insert((next.clone(), key)) {
                    queue.push_back((next, ds));
                }
            }
        }
    }
    Ok(None)
}
