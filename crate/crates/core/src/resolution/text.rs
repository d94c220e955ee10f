//! Line-oriented refutation format.
//!
//! ```text
//! a <lits> 0                  axiom
//! r <i> <j> <pivot> <lits> 0  resolvent of steps i and j on variable pivot
//! ```
//!
//! Step indices are zero-based positions in the file (comment lines `c`
//! and blank lines are not counted).

use std::fmt::Write as _;

use thiserror::Error;

use crate::cnf::{Clause, Literal, Variable};

use super::{Justification, ProofStep, Refutation};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ProofParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

fn syntax(line: usize, message: impl Into<String>) -> ProofParseError {
    ProofParseError::Syntax {
        line,
        message: message.into(),
    }
}

pub fn write_refutation(proof: &Refutation) -> String {
    let mut out = String::new();
    for step in &proof.steps {
        match step.justification {
            Justification::Axiom => writeln!(out, "a {}", step.clause),
            Justification::Resolvent { left, right, pivot } => {
                writeln!(out, "r {} {} {} {}", left, right, pivot, step.clause)
            }
        }
        .unwrap();
    }
    out
}

pub fn parse_refutation(text: &str) -> Result<Refutation, ProofParseError> {
    let mut steps = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let kind = tokens.next().unwrap();
        let mut ints = Vec::new();
        for t in tokens {
            ints.push(
                t.parse::<i64>()
                    .map_err(|_| syntax(line_no, format!("invalid token `{}`", t)))?,
            );
        }
        if ints.last() != Some(&0) {
            return Err(syntax(line_no, "missing terminating 0"));
        }
        ints.pop();
        let (justification, lits) = match kind {
            "a" => (Justification::Axiom, &ints[..]),
            "r" => {
                if ints.len() < 3 {
                    return Err(syntax(line_no, "resolvent needs two premises and a pivot"));
                }
                let index = |v: i64| {
                    usize::try_from(v).map_err(|_| syntax(line_no, "negative premise index"))
                };
                let pivot = u32::try_from(ints[2])
                    .ok()
                    .filter(|&p| p >= 1)
                    .ok_or_else(|| syntax(line_no, "pivot must be a positive variable"))?;
                (
                    Justification::Resolvent {
                        left: index(ints[0])?,
                        right: index(ints[1])?,
                        pivot: Variable::new(pivot),
                    },
                    &ints[3..],
                )
            }
            other => return Err(syntax(line_no, format!("unknown step kind `{}`", other))),
        };
        let mut clause_lits = Vec::with_capacity(lits.len());
        for &l in lits {
            let l = i32::try_from(l)
                .ok()
                .filter(|&l| l != 0)
                .ok_or_else(|| syntax(line_no, "0 inside clause"))?;
            clause_lits.push(Literal::from_dimacs(l));
        }
        steps.push(ProofStep {
            clause: Clause::new(clause_lits),
            justification,
        });
    }
    Ok(Refutation::new(steps))
}
