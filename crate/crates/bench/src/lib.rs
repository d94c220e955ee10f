//! Fixed inputs shared by the benchmarks.

use cdclwidth_core::harness::{generate_formula, FormulaFamily};
use cdclwidth_core::{Clause, CnfFormula};

/// Solver workloads: name and formula.
pub fn solver_fixtures() -> Vec<(String, CnfFormula)> {
    [
        FormulaFamily::ChainUnsat { n: 64 },
        FormulaFamily::ChainSat { n: 64 },
        FormulaFamily::Pigeonhole { pigeons: 4 },
        FormulaFamily::Pigeonhole { pigeons: 5 },
        FormulaFamily::RandomKCnf { n: 20, m: 91, k: 3, seed: 7 },
        FormulaFamily::RandomKCnf { n: 12, m: 90, k: 3, seed: 3 },
    ]
    .iter()
    .map(|f| (f.to_string(), generate_formula(f).expect("valid family")))
    .collect()
}

/// Random 3-CNF over 8 variables with a clause of width 3 to query.
pub fn absorption_fixture() -> (CnfFormula, Clause) {
    let f = generate_formula(&FormulaFamily::RandomKCnf { n: 8, m: 24, k: 3, seed: 11 }).expect("valid family");
    (f, Clause::from_dimacs(&[1, -4, 7]))
}
