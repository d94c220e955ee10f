use rand::Rng;
use thiserror::Error;

use crate::cnf::{Literal, Trail};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DecisionError {
    #[error("every variable is already assigned")]
    NoUnassignedVariable,
}

/// Uniform unassigned variable, then an independent uniform value.
pub fn random_decision(trail: &Trail, rng: &mut impl Rng) -> Result<Literal, DecisionError> {
    let free: Vec<_> = trail.unassigned().collect();
    if free.is_empty() {
        return Err(DecisionError::NoUnassignedVariable);
    }
    let var = free[rng.gen_range(0..free.len())];
    let value: bool = rng.gen();
    Ok(var.lit(value))
}

/// Lowest-index unassigned variable with a fixed value.
pub fn lowest_index_decision(trail: &Trail, value: bool) -> Result<Literal, DecisionError> {
    trail
        .unassigned()
        .next()
        .map(|v| v.lit(value))
        .ok_or(DecisionError::NoUnassignedVariable)
}
