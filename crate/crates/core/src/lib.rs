//! Clause-learning SAT solving with restarts and random decisions, together
//! with executable checks of clause absorption and bounded-width resolution.

pub mod absorption;
pub mod cnf;
pub mod harness;
pub mod resolution;
pub mod solver;

pub use cnf::{parse_dimacs, write_dimacs, Clause, ClauseId, CnfFormula, Literal, Model, Trail, Variable};
pub use resolution::{saturate_bounded_width, verify_refutation, Refutation};
pub use solver::{solve, Scheme, SolveResult, SolverConfig, Verdict};
