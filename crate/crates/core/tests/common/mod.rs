#![allow(dead_code)]

use cdclwidth_core::cnf::{Clause, CnfFormula, Literal, Model, Variable};
use rand::seq::index::sample;
use rand::Rng;

/// Clause over `width` distinct variables of `1..=n` with uniform signs.
pub fn random_clause(rng: &mut impl Rng, n: usize, width: usize) -> Clause {
    sample(rng, n, width.min(n))
        .into_iter()
        .map(|i| Literal::new(Variable::new(i as u32 + 1), rng.gen()))
        .collect()
}

/// Widths 1–4 (mostly 3), `4n` to `6n` clause draws.
pub fn random_mixed_formula(rng: &mut impl Rng, n: usize) -> CnfFormula {
    let m = (rng.gen_range(4.0..=6.0) * n as f64) as usize;
    let mut f = CnfFormula::new(n);
    for _ in 0..m {
        let w = match rng.gen_range(0..40) {
            0 => 1,
            1..=3 => 2,
            4..=29 => 3,
            _ => 4,
        };
        f.add_clause(random_clause(rng, n, w)).unwrap();
    }
    f
}

/// Small clause set for the absorption checks: up to `max_clauses` clauses
/// of width 1–3 (fewer when draws repeat).
pub fn random_small_db(rng: &mut impl Rng, n: usize, max_clauses: usize) -> CnfFormula {
    let m = rng.gen_range(1..=max_clauses);
    let mut f = CnfFormula::new(n);
    for _ in 0..m {
        let w = rng.gen_range(1..=3);
        f.add_clause(random_clause(rng, n, w)).unwrap();
    }
    f
}

pub fn all_models(f: &CnfFormula) -> Vec<Model> {
    let n = f.num_vars();
    (0u64..1 << n)
        .map(|mask| Model::new((0..n).map(|i| mask >> i & 1 == 1).collect()))
        .filter(|m| f.is_satisfied_by(m))
        .collect()
}

pub fn is_satisfiable(f: &CnfFormula) -> bool {
    let n = f.num_vars();
    (0u64..1 << n).any(|mask| {
        let m = Model::new((0..n).map(|i| mask >> i & 1 == 1).collect());
        f.is_satisfied_by(&m)
    })
}

pub fn clause(lits: &[i32]) -> Clause {
    Clause::from_dimacs(lits)
}

pub fn formula(n: usize, clauses: &[&[i32]]) -> CnfFormula {
    CnfFormula::from_clauses(n, clauses.iter().map(|c| Clause::from_dimacs(c))).unwrap()
}
