//! The resolution rule, refutations and their checker, bounded-width
//! saturation, and the closed-form conflict bounds.

mod bounds;
mod saturate;
mod text;

pub use bounds::{
    clause_count_bound, simulation_bound, width_bounded_clause_count, BoundError, BoundKind,
    BoundQuery,
};
pub use saturate::{saturate_bounded_width, Saturation};
pub use text::{parse_refutation, write_refutation, ProofParseError};

use std::fmt;

use thiserror::Error;

use crate::cnf::{Clause, CnfFormula, Literal, Variable};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ResolveError {
    #[error("clauses are not resolvable on {pivot}")]
    NotResolvable { pivot: Literal },
}

/// `Res(A, B, x) = (A \ {x}) ∪ (B \ {x̄})`, requiring `x ∈ A` and `x̄ ∈ B`.
///
/// Tautological resolvents are returned as they are.
pub fn resolve(a: &Clause, b: &Clause, pivot: Variable) -> Result<Clause, ResolveError> {
    resolve_on(a, b, pivot.positive())
}

/// Resolution on an explicit pivot literal: `pivot ∈ a`, `¬pivot ∈ b`.
pub fn resolve_on(a: &Clause, b: &Clause, pivot: Literal) -> Result<Clause, ResolveError> {
    if !a.contains(pivot) || !b.contains(!pivot) {
        return Err(ResolveError::NotResolvable { pivot });
    }
    Ok(a.iter()
        .filter(|&l| l != pivot)
        .chain(b.iter().filter(|&l| l != !pivot))
        .collect())
}

/// Either orientation of the pivot; used by the proof checker, where the
/// premise order of a step is not significant.
pub(crate) fn resolvents_on(a: &Clause, b: &Clause, pivot: Variable) -> impl Iterator<Item = Clause> {
    let forward = resolve_on(a, b, pivot.positive()).ok();
    let backward = resolve_on(a, b, pivot.negative()).ok();
    forward.into_iter().chain(backward)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Justification {
    Axiom,
    /// Premises are indices of earlier steps.
    Resolvent {
        left: usize,
        right: usize,
        pivot: Variable,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProofStep {
    pub clause: Clause,
    pub justification: Justification,
}

impl ProofStep {
    pub fn axiom(clause: Clause) -> Self {
        ProofStep {
            clause,
            justification: Justification::Axiom,
        }
    }

    pub fn resolvent(clause: Clause, left: usize, right: usize, pivot: Variable) -> Self {
        ProofStep {
            clause,
            justification: Justification::Resolvent { left, right, pivot },
        }
    }
}

/// A sequence of proof steps; see [`verify_refutation`] for validity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Refutation {
    pub steps: Vec<ProofStep>,
}

impl Refutation {
    pub fn new(steps: Vec<ProofStep>) -> Self {
        Refutation { steps }
    }

    pub fn length(&self) -> usize {
        self.steps.len()
    }

    /// Maximum clause width over every step, axioms included.
    pub fn width(&self) -> usize {
        self.steps.iter().map(|s| s.clause.width()).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RejectReason {
    EmptyProof,
    NotAnAxiom,
    /// A premise index does not point strictly backwards.
    PremiseOrder { premise: usize },
    NotResolvable,
    WrongResolvent { expected: Clause },
    FinalClauseNotEmpty,
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RejectReason::EmptyProof => write!(f, "proof has no steps"),
            RejectReason::NotAnAxiom => write!(f, "axiom is not a clause of the formula"),
            RejectReason::PremiseOrder { premise } => {
                write!(f, "premise {} does not precede the step", premise)
            }
            RejectReason::NotResolvable => write!(f, "premises do not clash on the pivot"),
            RejectReason::WrongResolvent { expected } => {
                write!(f, "resolvent should be {}", expected)
            }
            RejectReason::FinalClauseNotEmpty => write!(f, "final clause is not empty"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProofCheck {
    Valid { length: usize, width: usize },
    Rejected { step: usize, reason: RejectReason },
}

impl ProofCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, ProofCheck::Valid { .. })
    }
}

pub fn verify_refutation(formula: &CnfFormula, proof: &Refutation) -> ProofCheck {
    if proof.steps.is_empty() {
        return ProofCheck::Rejected {
            step: 0,
            reason: RejectReason::EmptyProof,
        };
    }
    for (i, step) in proof.steps.iter().enumerate() {
        let reject = |reason| ProofCheck::Rejected { step: i, reason };
        match step.justification {
            Justification::Axiom => {
                if !formula.contains(&step.clause) {
                    return reject(RejectReason::NotAnAxiom);
                }
            }
            Justification::Resolvent { left, right, pivot } => {
                for premise in [left, right] {
                    if premise >= i {
                        return reject(RejectReason::PremiseOrder { premise });
                    }
                }
                let a = &proof.steps[left].clause;
                let b = &proof.steps[right].clause;
                let candidates: Vec<Clause> = resolvents_on(a, b, pivot).collect();
                if candidates.is_empty() {
                    return reject(RejectReason::NotResolvable);
                }
                if !candidates.contains(&step.clause) {
                    return reject(RejectReason::WrongResolvent {
                        expected: candidates[0].clone(),
                    });
                }
            }
        }
    }
    let last = proof.steps.len() - 1;
    if !proof.steps[last].clause.is_empty() {
        return ProofCheck::Rejected {
            step: last,
            reason: RejectReason::FinalClauseNotEmpty,
        };
    }
    ProofCheck::Valid {
        length: proof.length(),
        width: proof.width(),
    }
}
