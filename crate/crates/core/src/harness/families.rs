use std::collections::HashSet;
use std::fmt;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cnf::{Clause, CnfFormula, Literal, Variable};
use crate::resolution::width_bounded_clause_count;

use super::HarnessError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormulaFamily {
    /// `{x₁}, {x̄ᵢ ∨ xᵢ₊₁} (i < n), {x̄ₙ}`.
    ChainUnsat { n: usize },
    /// The implication chain without the two end units.
    ChainSat { n: usize },
    /// `p` pigeons into `p − 1` holes; pigeon `i`, hole `j` is variable
    /// `(i − 1)(p − 1) + j`.
    Pigeonhole { pigeons: usize },
    /// `m` distinct clauses of `k` distinct variables with uniform signs.
    RandomKCnf { n: usize, m: usize, k: usize, seed: u64 },
}

impl FormulaFamily {
    pub fn name(&self) -> &'static str {
        match self {
            FormulaFamily::ChainUnsat { .. } => "chain",
            FormulaFamily::ChainSat { .. } => "chain-sat",
            FormulaFamily::Pigeonhole { .. } => "php",
            FormulaFamily::RandomKCnf { .. } => "random",
        }
    }

    /// `key=value` pairs joined by `;`.
    pub fn params(&self) -> String {
        match *self {
            FormulaFamily::ChainUnsat { n } | FormulaFamily::ChainSat { n } => format!("n={n}"),
            FormulaFamily::Pigeonhole { pigeons } => format!("pigeons={pigeons}"),
            FormulaFamily::RandomKCnf { n, m, k, seed } => format!("n={n};m={m};k={k};seed={seed}"),
        }
    }
}

impl fmt::Display for FormulaFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.name(), self.params())
    }
}

fn invalid(msg: impl Into<String>) -> HarnessError {
    HarnessError::InvalidParameters(msg.into())
}

fn var(i: usize) -> Variable {
    Variable::new(i as u32)
}

fn implication_chain(n: usize) -> impl Iterator<Item = Clause> {
    (1..n).map(|i| Clause::new([var(i).negative(), var(i + 1).positive()]))
}

pub fn generate_formula(family: &FormulaFamily) -> Result<CnfFormula, HarnessError> {
    let build = |n: usize, clauses: Vec<Clause>| {
        CnfFormula::from_clauses(n, clauses).map_err(|e| invalid(e.to_string()))
    };
    match *family {
        FormulaFamily::ChainUnsat { n } => {
            if n < 1 {
                return Err(invalid("chain length must be at least 1"));
            }
            let mut cs = vec![Clause::new([var(1).positive()])];
            cs.extend(implication_chain(n));
            cs.push(Clause::new([var(n).negative()]));
            build(n, cs)
        }
        FormulaFamily::ChainSat { n } => {
            if n < 2 {
                return Err(invalid("chain length must be at least 2"));
            }
            build(n, implication_chain(n).collect())
        }
        FormulaFamily::Pigeonhole { pigeons: p } => {
            if p < 2 {
                return Err(invalid("at least 2 pigeons are needed"));
            }
            let holes = p - 1;
            let x = |i: usize, j: usize| var((i - 1) * holes + j);
            let mut cs = Vec::new();
            for i in 1..=p {
                cs.push(Clause::new((1..=holes).map(|j| x(i, j).positive())));
            }
            for j in 1..=holes {
                for i in 1..=p {
                    for i2 in i + 1..=p {
                        cs.push(Clause::new([x(i, j).negative(), x(i2, j).negative()]));
                    }
                }
            }
            build(p * holes, cs)
        }
        FormulaFamily::RandomKCnf { n, m, k, seed } => {
            if k == 0 || k > n {
                return Err(invalid(format!("clause width {k} must be in 1..={n}")));
            }
            let exact = width_bounded_clause_count(n as u64, k as u64)
                - width_bounded_clause_count(n as u64, k as u64 - 1);
            if m as u128 > exact {
                return Err(invalid(format!("only {exact} distinct clauses of width {k} exist")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut seen = HashSet::new();
            let mut cs = Vec::with_capacity(m);
            while cs.len() < m {
                let clause: Clause = sample(&mut rng, n, k)
                    .into_iter()
                    .map(|i| Literal::new(var(i + 1), rng.gen()))
                    .collect();
                if seen.insert(clause.clone()) {
                    cs.push(clause);
                }
            }
            build(n, cs)
        }
    }
}
