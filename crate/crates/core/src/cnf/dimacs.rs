use std::fmt::Write as _;

use thiserror::Error;

use super::{Clause, CnfFormula, Literal};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DimacsError {
    #[error("line {line}: malformed or missing `p cnf` header")]
    MalformedHeader { line: usize },
    #[error("line {line}: invalid token `{token}`")]
    InvalidToken { line: usize, token: String },
    #[error("line {line}: literal {literal} exceeds the declared {num_vars} variables")]
    VariableOutOfRange {
        line: usize,
        literal: i64,
        num_vars: usize,
    },
    #[error("end of input inside a clause (missing terminating 0)")]
    UnterminatedClause,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DimacsWarning {
    /// The header announced a different number of clause lines than were read.
    ClauseCountMismatch { declared: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedDimacs {
    pub formula: CnfFormula,
    pub warnings: Vec<DimacsWarning>,
}

/// Parses a DIMACS CNF document.
///
/// Duplicate clauses and duplicate literals collapse. Clauses may span
/// lines; a bare `0` is the empty clause. A `%` line ends the data, as in
/// the SATLIB benchmark files.
pub fn parse_dimacs(text: &str) -> Result<ParsedDimacs, DimacsError> {
    let mut header: Option<(usize, usize)> = None;
    let mut formula = CnfFormula::new(0);
    let mut current: Vec<Literal> = Vec::new();
    let mut open = false;
    let mut found = 0usize;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(DimacsError::MalformedHeader { line: line_no });
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let parsed = match parts.as_slice() {
                ["p", "cnf", v, c] => v.parse::<usize>().ok().zip(c.parse::<usize>().ok()),
                _ => None,
            };
            let (nv, nc) = parsed.ok_or(DimacsError::MalformedHeader { line: line_no })?;
            header = Some((nv, nc));
            formula = CnfFormula::new(nv);
            continue;
        }
        let Some((num_vars, _)) = header else {
            return Err(DimacsError::MalformedHeader { line: line_no });
        };
        for tok in line.split_whitespace() {
            let value: i64 = tok.parse().map_err(|_| DimacsError::InvalidToken {
                line: line_no,
                token: tok.to_string(),
            })?;
            if value == 0 {
                formula
                    .add_clause(Clause::new(current.drain(..)))
                    .expect("literals were range-checked");
                found += 1;
                open = false;
                continue;
            }
            if value.unsigned_abs() > num_vars as u64 {
                return Err(DimacsError::VariableOutOfRange {
                    line: line_no,
                    literal: value,
                    num_vars,
                });
            }
            current.push(Literal::from_dimacs(value as i32));
            open = true;
        }
    }

    let Some((_, declared)) = header else {
        return Err(DimacsError::MalformedHeader { line: 0 });
    };
    if open {
        return Err(DimacsError::UnterminatedClause);
    }
    let mut warnings = Vec::new();
    if declared != found {
        warnings.push(DimacsWarning::ClauseCountMismatch { declared, found });
    }
    Ok(ParsedDimacs { formula, warnings })
}

/// `p cnf n m` followed by one zero-terminated line per clause.
pub fn write_dimacs(formula: &CnfFormula) -> String {
    let mut out = String::new();
    writeln!(out, "p cnf {} {}", formula.num_vars(), formula.len()).unwrap();
    for c in formula.clauses() {
        writeln!(out, "{}", c).unwrap();
    }
    out
}
